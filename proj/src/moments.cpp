#include "polyiv/moments.hpp"

#include <cmath>

#include "json.hpp"
#include "polyiv/common.hpp"

namespace polyiv::moments {

namespace {

// Kahan compensated accumulator
struct Kahan {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    double t = v - comp;
    double s = sum + t;
    comp = (s - sum) - t;
    sum = s;
  }
};

}  // namespace

void MomentTable::check_invariants() const {
  if (std::abs(pW[0] + pW[1] - 1.0) > 1e-12)
    throw AssumptionError("moment table: pW entries do not sum to 1");
  if (pW[0] < 0.0 || pW[1] < 0.0)
    throw AssumptionError("moment table: negative instrument probability");
  for (int l = 0; l < 2; ++l) {
    double s = 0.0;
    for (int k = 1; k <= K; ++k) {
      if (C(0, l, k) < 0.0) throw AssumptionError("moment table: negative cell mass");
      s += C(0, l, k);
    }
    if (std::abs(s - pW[l]) > 1e-12)
      throw AssumptionError("moment table: cell masses do not partition pW");
  }
}

std::string MomentTable::to_json() const {
  nlohmann::ordered_json j;
  j["K"] = K;
  j["J"] = J;
  j["n"] = n;
  j["pW"] = {pW[0], pW[1]};
  auto arr = nlohmann::ordered_json::array();
  for (int jj = 0; jj <= J; ++jj) {
    auto lvl = nlohmann::ordered_json::array();
    for (int l = 0; l < 2; ++l) {
      auto row = nlohmann::ordered_json::array();
      for (int k = 1; k <= K; ++k) row.push_back(C(jj, l, k));
      lvl.push_back(row);
    }
    arr.push_back(lvl);
  }
  j["C"] = arr;
  return j.dump();
}

MomentTable MomentTable::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  MomentTable t;
  t.K = j.at("K").get<int>();
  t.J = j.at("J").get<int>();
  t.n = j.value("n", 0L);
  t.pW[0] = j.at("pW").at(0).get<double>();
  t.pW[1] = j.at("pW").at(1).get<double>();
  t.c.assign(static_cast<std::size_t>((t.J + 1) * 2 * t.K), 0.0);
  for (int jj = 0; jj <= t.J; ++jj)
    for (int l = 0; l < 2; ++l)
      for (int k = 1; k <= t.K; ++k)
        t.C(jj, l, k) = j.at("C").at(jj).at(l).at(k - 1).get<double>();
  t.empty_cell.assign(static_cast<std::size_t>(2 * t.K), 0);
  for (int l = 0; l < 2; ++l)
    for (int k = 1; k <= t.K; ++k)
      if (t.C(0, l, k) == 0.0) t.empty_cell[static_cast<std::size_t>(l * t.K + k - 1)] = 1;
  return t;
}

MomentTable estimate_moments(const data::Sample& s, int J) {
  s.validate();
  if (J < 1) throw UsageError("estimate_moments: J must be >= 1");
  if (!s.instrument_complete()) throw AssumptionError("instrument degenerate");

  MomentTable t;
  t.K = s.K;
  t.J = J;
  t.n = s.n();
  std::vector<Kahan> acc(static_cast<std::size_t>((J + 1) * 2 * s.K));
  long nw0 = 0;
  for (int i = 0; i < s.n(); ++i) {
    const double yi = s.y[static_cast<std::size_t>(i)];
    const int l = s.w[static_cast<std::size_t>(i)];
    const int k = s.x[static_cast<std::size_t>(i)];
    if (l == 0) ++nw0;
    double p = 1.0;
    for (int j = 0; j <= J; ++j) {
      acc[static_cast<std::size_t>((j * 2 + l) * s.K + k - 1)].add(p);
      p *= yi;
    }
  }
  const double inv_n = 1.0 / static_cast<double>(s.n());
  t.c.resize(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) t.c[i] = acc[i].sum * inv_n;
  t.pW[0] = static_cast<double>(nw0) * inv_n;
  t.pW[1] = static_cast<double>(s.n() - nw0) * inv_n;
  t.empty_cell.assign(static_cast<std::size_t>(2 * s.K), 0);
  for (int l = 0; l < 2; ++l)
    for (int k = 1; k <= s.K; ++k)
      if (t.C(0, l, k) == 0.0) t.empty_cell[static_cast<std::size_t>(l * s.K + k - 1)] = 1;
  return t;
}

MomentTable population_table(const sim::DgpSpec& dgp, int J) {
  dgp.validate();
  if (J < 1) throw UsageError("population_table: J must be >= 1");
  MomentTable t;
  t.K = dgp.K;
  t.J = J;
  t.n = 0;
  t.pW[0] = dgp.pW0;
  t.pW[1] = 1.0 - dgp.pW0;
  t.c.assign(static_cast<std::size_t>((J + 1) * 2 * dgp.K), 0.0);
  t.empty_cell.assign(static_cast<std::size_t>(2 * dgp.K), 0);
  for (int k = 1; k <= dgp.K; ++k) {
    const sim::ErrorDist& e = dgp.error_for(k);
    const double gk = dgp.g[static_cast<std::size_t>(k - 1)];
    for (int j = 0; j <= J; ++j) {
      // E[(g_k + U)^j] by binomial expansion over closed-form raw moments
      double m = 0.0;
      for (int i = 0; i <= j; ++i) m += binom(j, i) * std::pow(gk, j - i) * e.raw_moment(i);
      for (int l = 0; l < 2; ++l) t.C(j, l, k) = t.pW[l] * dgp.p(l, k) * m;
    }
    for (int l = 0; l < 2; ++l)
      if (dgp.p(l, k) == 0.0) t.empty_cell[static_cast<std::size_t>(l * dgp.K + k - 1)] = 1;
  }
  return t;
}

}  // namespace polyiv::moments
