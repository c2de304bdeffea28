#pragma once

#include <string>
#include <vector>

#include "polyiv/dgp.hpp"
#include "polyiv/sample.hpp"

namespace polyiv::moments {

// Empirical (or population) coefficients C_{j,l,k} = E[Y^j 1{W=l, X=k}],
// instrument marginals pW, and the ratios Q = C / pW that parameterize
// every polynomial in the system.
struct MomentTable {
  int K = 0;
  int J = 0;       // maximum power stored
  long n = 0;      // 0 for population-specified tables
  double pW[2] = {0.0, 0.0};
  std::vector<double> c;           // index: (j*2 + l)*K + (k-1)
  std::vector<unsigned char> empty_cell;  // index: l*K + (k-1)

  double C(int j, int l, int k) const {
    return c[static_cast<std::size_t>((j * 2 + l) * K + k - 1)];
  }
  double& C(int j, int l, int k) {
    return c[static_cast<std::size_t>((j * 2 + l) * K + k - 1)];
  }
  double Q(int j, int l, int k) const {
    return pW[l] > 0.0 ? C(j, l, k) / pW[l] : 0.0;
  }
  bool is_empty(int l, int k) const {
    return empty_cell[static_cast<std::size_t>(l * K + k - 1)] != 0;
  }

  void check_invariants() const;  // pW sums to 1, C[0] partition, Q*pW == C
  std::string to_json() const;
  static MomentTable from_json(const std::string& text);
};

// Plug-in estimates from an observed sample; single pass, Kahan-compensated.
MomentTable estimate_moments(const data::Sample& s, int J);

// Exact infinite-n table for a DGP whose error families have closed-form
// moments. The test-suite oracle for everything downstream.
MomentTable population_table(const sim::DgpSpec& dgp, int J);

}  // namespace polyiv::moments
