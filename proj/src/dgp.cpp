#include "polyiv/dgp.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "polyiv/common.hpp"

namespace polyiv::sim {

ErrorDist ErrorDist::gaussian(double sigma) {
  if (sigma < 0) throw UsageError("gaussian sigma must be >= 0");
  ErrorDist e;
  e.family = Family::Gaussian;
  e.a = sigma;
  return e;
}

ErrorDist ErrorDist::uniform(double lo, double hi) {
  if (!(lo < hi)) throw UsageError("uniform bounds must satisfy lo < hi");
  ErrorDist e;
  e.family = Family::Uniform;
  e.a = lo;
  e.b = hi;
  return e;
}

ErrorDist ErrorDist::two_point(double v) {
  ErrorDist e;
  e.family = Family::TwoPoint;
  e.a = v;
  return e;
}

ErrorDist ErrorDist::point_mass() {
  ErrorDist e;
  e.family = Family::PointMass;
  return e;
}

ErrorDist ErrorDist::mixture(std::vector<std::pair<double, ErrorDist>> parts) {
  if (parts.empty()) throw UsageError("mixture needs components");
  double wsum = 0;
  ErrorDist e;
  e.family = Family::Mixture;
  for (auto& [w, d] : parts) {
    if (w <= 0) throw UsageError("mixture weights must be positive");
    wsum += w;
    e.mix.push_back({w, d});
  }
  for (auto& c : e.mix) c.weight /= wsum;
  return e;
}

ErrorDist ErrorDist::shifted(double delta) const {
  ErrorDist e = *this;
  e.shift += delta;
  return e;
}

double ErrorDist::raw_moment(int j) const {
  if (j < 0) throw UsageError("moment order must be >= 0");
  if (j == 0) return 1.0;
  // base (unshifted) raw moments
  auto base = [&](int m) -> double {
    switch (family) {
      case Family::Gaussian: {
        if (m % 2 == 1) return 0.0;
        double v = 1.0, s2 = a * a;
        for (int i = 2; i <= m; i += 2) v *= s2 * static_cast<double>(i - 1);
        return v;
      }
      case Family::Uniform: {
        // E[U^m] = (b^{m+1} - a^{m+1}) / ((m+1)(b-a))
        double num = std::pow(b, m + 1) - std::pow(a, m + 1);
        return num / (static_cast<double>(m + 1) * (b - a));
      }
      case Family::TwoPoint:
        return (m % 2 == 0) ? std::pow(a, m) : 0.0;
      case Family::PointMass:
        return 0.0;
      case Family::Mixture: {
        double v = 0.0;
        for (const auto& c : mix) v += c.weight * c.dist.raw_moment(m);
        return v;
      }
    }
    return 0.0;
  };
  if (shift == 0.0) return base(j);
  double v = 0.0, spow = 1.0;
  for (int t = j; t >= 0; --t) {
    // term binom(j,t) E[U^t] shift^{j-t}, accumulated with spow = shift^{j-t}
    v += binom(j, t) * base(t) * spow;
    spow *= shift;
  }
  return v;
}

double ErrorDist::sample(Rng& rng) const {
  double u;
  switch (family) {
    case Family::Gaussian: u = a * rng.normal(); break;
    case Family::Uniform: u = rng.uniform(a, b); break;
    case Family::TwoPoint: u = (rng.uniform() < 0.5 ? -a : a); break;
    case Family::PointMass: u = 0.0; break;
    case Family::Mixture: {
      double r = rng.uniform(), acc = 0.0;
      const Component* pick = &mix.back();
      for (const auto& c : mix) {
        acc += c.weight;
        if (r < acc) { pick = &c; break; }
      }
      return pick->dist.sample(rng) + shift;
    }
    default: u = 0.0;
  }
  return u + shift;
}

bool ErrorDist::operator==(const ErrorDist& o) const {
  return family == o.family && a == o.a && b == o.b && shift == o.shift && mix == o.mix;
}

std::string ErrorDist::describe() const {
  std::ostringstream os;
  switch (family) {
    case Family::Gaussian: os << "gaussian(" << a << ")"; break;
    case Family::Uniform: os << "uniform(" << a << "," << b << ")"; break;
    case Family::TwoPoint: os << "two_point(" << a << ")"; break;
    case Family::PointMass: os << "point_mass"; break;
    case Family::Mixture: {
      os << "mixture(";
      for (std::size_t i = 0; i < mix.size(); ++i) {
        if (i) os << " | ";
        os << mix[i].weight << "*" << mix[i].dist.describe();
      }
      os << ")";
      break;
    }
  }
  if (shift != 0.0) os << "+" << shift;
  return os.str();
}

namespace {

void check_prob_row(const std::vector<double>& p, const char* name, int K) {
  if (static_cast<int>(p.size()) != K)
    throw UsageError(std::string(name) + " must have K entries");
  double s = 0;
  for (double v : p) {
    if (v < 0) throw UsageError(std::string(name) + " has a negative entry");
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw UsageError(std::string(name) + " must sum to 1 (got " + std::to_string(s) + ")");
}

}  // namespace

void DgpSpec::validate() const {
  if (K < 1) throw UsageError("DgpSpec: K must be >= 1");
  check_prob_row(p0, "p0", K);
  check_prob_row(p1, "p1", K);
  if (static_cast<int>(g.size()) != K) throw UsageError("DgpSpec: g must have K entries");
  if (!(pW0 > 0.0 && pW0 < 1.0)) throw UsageError("DgpSpec: pW0 must lie in (0,1)");
  if (errors.size() != 1 && static_cast<int>(errors.size()) != K)
    throw UsageError("DgpSpec: errors must have 1 or K entries");

  if (errors.size() == 1) {
    if (std::abs(errors[0].mean()) > 1e-9)
      throw UsageError("DgpSpec: error family must have mean 0");
    return;
  }
  // Cell-dependent errors: U|W must not depend on W. Sufficient (and what the
  // counterexample constructor produces): each distinct distribution carries
  // equal aggregate probability under both instrument arms, and the overall
  // mean under W=0 is zero.
  std::vector<std::pair<const ErrorDist*, std::array<double, 2>>> agg;
  for (int k = 1; k <= K; ++k) {
    const ErrorDist& e = error_for(k);
    bool found = false;
    for (auto& [d, pr] : agg)
      if (*d == e) {
        pr[0] += p(0, k);
        pr[1] += p(1, k);
        found = true;
        break;
      }
    if (!found) agg.push_back({&error_for(k), {p(0, k), p(1, k)}});
  }
  double mean0 = 0;
  for (auto& [d, pr] : agg) {
    if (std::abs(pr[0] - pr[1]) > 1e-9)
      throw UsageError(
          "DgpSpec: cell-dependent errors break U independent of W "
          "(aggregate probabilities differ across instrument arms)");
    mean0 += pr[0] * d->mean();
  }
  if (std::abs(mean0) > 1e-9) throw UsageError("DgpSpec: aggregated error mean is not 0");
}

data::Sample simulate(const DgpSpec& dgp, int n, std::uint64_t seed, std::uint64_t stream) {
  dgp.validate();
  if (n < 1) throw UsageError("simulate: n must be >= 1");
  Rng rng(seed, stream);
  data::Sample s;
  s.K = dgp.K;
  s.y.reserve(static_cast<std::size_t>(n));
  s.x.reserve(static_cast<std::size_t>(n));
  s.w.reserve(static_cast<std::size_t>(n));
  std::array<std::vector<double>, 2> cum;
  for (int l = 0; l < 2; ++l) {
    cum[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(dgp.K));
    double acc = 0;
    for (int k = 1; k <= dgp.K; ++k) {
      acc += dgp.p(l, k);
      cum[static_cast<std::size_t>(l)][static_cast<std::size_t>(k - 1)] = acc;
    }
  }
  for (int i = 0; i < n; ++i) {
    int w = rng.uniform() < dgp.pW0 ? 0 : 1;
    int k = 1 + rng.categorical(cum[static_cast<std::size_t>(w)]);
    double u = dgp.error_for(k).sample(rng);
    s.w.push_back(w);
    s.x.push_back(k);
    s.y.push_back(dgp.g[static_cast<std::size_t>(k - 1)] + u);
  }
  return s;
}

namespace {

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> t;
  std::string v;
  while (is >> v) t.push_back(v);
  return t;
}

ErrorDist parse_error(const std::vector<std::string>& t, std::size_t from,
                      const std::string& line) {
  if (from >= t.size()) throw UsageError("missing error family in: " + line);
  const std::string& fam = t[from];
  auto num = [&](std::size_t i) {
    if (i >= t.size()) throw UsageError("missing error parameter in: " + line);
    return std::stod(t[i]);
  };
  if (fam == "gaussian") return ErrorDist::gaussian(num(from + 1));
  if (fam == "uniform") return ErrorDist::uniform(num(from + 1), num(from + 2));
  if (fam == "two_point") return ErrorDist::two_point(num(from + 1));
  if (fam == "point_mass") return ErrorDist::point_mass();
  throw UsageError("unknown error family '" + fam + "' in: " + line);
}

}  // namespace

DgpSpec load_dgp_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open DGP config: " + path);
  DgpSpec d;
  d.errors.clear();
  std::map<int, ErrorDist> cell_errors;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    auto vals = tokens(line.substr(eq + 1));
    if (key.empty() || vals.empty()) continue;
    if (key == "K") {
      d.K = std::stoi(vals[0]);
    } else if (key == "pW0") {
      d.pW0 = std::stod(vals[0]);
    } else if (key == "p0" || key == "p1" || key == "g") {
      std::vector<double> v;
      for (auto& s : vals) v.push_back(std::stod(s));
      (key == "p0" ? d.p0 : key == "p1" ? d.p1 : d.g) = v;
    } else if (key == "error") {
      d.errors.assign(1, parse_error(vals, 0, line));
    } else if (key.rfind("error", 0) == 0) {
      int k = std::stoi(key.substr(5));
      cell_errors.emplace(k, parse_error(vals, 0, line));
    } else {
      throw UsageError("unknown DGP config key '" + key + "'");
    }
  }
  if (!cell_errors.empty()) {
    if (!d.errors.empty())
      throw UsageError("DGP config mixes 'error' with per-cell 'error<k>' keys");
    d.errors.clear();
    for (int k = 1; k <= d.K; ++k) {
      auto it = cell_errors.find(k);
      if (it == cell_errors.end())
        throw UsageError("DGP config missing error" + std::to_string(k));
      d.errors.push_back(it->second);
    }
  }
  if (d.errors.empty()) d.errors.assign(1, ErrorDist::gaussian(1.0));
  d.validate();
  return d;
}

}  // namespace polyiv::sim
