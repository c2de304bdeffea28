#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace polyiv {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic random stream. Substreams are derived by mixing (seed, stream),
// so replication r of a study always sees the same draws regardless of how
// replications are scheduled across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ull))) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform on [0,1) with 53 random bits
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; draws exactly two uniforms per call so the stream layout
  // does not depend on call history.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

  // index into a discrete distribution given cumulative weights (last == 1)
  int categorical(const std::vector<double>& cumulative) {
    double u = uniform();
    for (std::size_t i = 0; i + 1 < cumulative.size(); ++i)
      if (u < cumulative[i]) return static_cast<int>(i);
    return static_cast<int>(cumulative.size()) - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// Halton low-discrepancy sequence in [0,1)^dim (index advances across calls).
class Halton {
 public:
  explicit Halton(int dim, std::uint64_t start_index = 1);
  std::vector<double> next();

 private:
  int dim_;
  std::uint64_t index_;
  std::vector<int> bases_;
};

}  // namespace polyiv
