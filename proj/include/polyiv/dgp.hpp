#pragma once

#include <string>
#include <vector>

#include "polyiv/rng.hpp"
#include "polyiv/sample.hpp"

namespace polyiv::sim {

// Error distribution with closed-form raw moments of every order.
// Families are mean zero by construction; `shift` translates the variable
// (used by the non-identified counterexample construction, where per-cell
// errors acquire nonzero means).
struct ErrorDist {
  enum class Family { Gaussian, Uniform, TwoPoint, PointMass, Mixture };

  Family family = Family::Gaussian;
  double a = 1.0;   // gaussian: sigma; uniform: lower; two_point: +/-a
  double b = 0.0;   // uniform: upper
  double shift = 0.0;

  struct Component;               // weight + nested ErrorDist
  std::vector<Component> mix;     // nonempty only for Mixture

  static ErrorDist gaussian(double sigma);
  static ErrorDist uniform(double lo, double hi);
  static ErrorDist two_point(double v);
  static ErrorDist point_mass();
  static ErrorDist mixture(std::vector<std::pair<double, ErrorDist>> parts);

  ErrorDist shifted(double delta) const;  // distribution of U + delta

  double raw_moment(int j) const;  // E[U^j]
  double mean() const { return raw_moment(1); }
  double sample(Rng& rng) const;

  bool operator==(const ErrorDist& o) const;
  std::string describe() const;
};

struct ErrorDist::Component {
  double weight;
  ErrorDist dist;
  bool operator==(const Component& o) const { return weight == o.weight && dist == o.dist; }
};

// Data-generating process: Y = g(X) + U with binary W, X|W on {1..K}.
// `errors` holds either one shared distribution or one per category.
// Cell-dependent errors are only valid when the induced U|W distributions
// coincide across W; validate() checks the aggregation condition.
struct DgpSpec {
  int K = 2;
  std::vector<double> p0;  // p_k(0), k = 1..K
  std::vector<double> p1;  // p_k(1)
  std::vector<double> g;
  double pW0 = 0.5;
  std::vector<ErrorDist> errors;  // size 1 (shared) or K (per cell)

  const ErrorDist& error_for(int k) const {
    return errors.size() == 1 ? errors[0] : errors[static_cast<std::size_t>(k - 1)];
  }
  double p(int l, int k) const {
    return (l == 0 ? p0 : p1)[static_cast<std::size_t>(k - 1)];
  }

  void validate() const;
};

data::Sample simulate(const DgpSpec& dgp, int n, std::uint64_t seed,
                      std::uint64_t stream = 0);

// Plain-text key-value DgpSpec files (CLI `simulate` / `study` input).
DgpSpec load_dgp_config(const std::string& path);

}  // namespace polyiv::sim
