#include "polyiv/rng.hpp"

#include <cmath>

namespace polyiv {

namespace {
const int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                       31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
}

Halton::Halton(int dim, std::uint64_t start_index) : dim_(dim), index_(start_index) {
  bases_.assign(kPrimes, kPrimes + (dim > 20 ? 20 : dim));
  for (int d = 20; d < dim; ++d) bases_.push_back(kPrimes[d % 20]);  // K <= 20 in practice
}

std::vector<double> Halton::next() {
  std::vector<double> p(static_cast<std::size_t>(dim_));
  for (int d = 0; d < dim_; ++d) {
    const int b = bases_[static_cast<std::size_t>(d)];
    double f = 1.0, r = 0.0;
    std::uint64_t i = index_;
    while (i > 0) {
      f /= b;
      r += f * static_cast<double>(i % static_cast<std::uint64_t>(b));
      i /= static_cast<std::uint64_t>(b);
    }
    p[static_cast<std::size_t>(d)] = r;
  }
  ++index_;
  return p;
}

}  // namespace polyiv
