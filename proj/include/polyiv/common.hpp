#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polyiv {

inline constexpr const char* kVersion = "0.1.0";

// Bad arguments, malformed input files, unusable configuration. CLI exit 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// A statistical precondition of the method fails on the given data
// (degenerate instrument, numerically singular V, zero relevance margin).
// CLI exit 1.
class AssumptionError : public std::runtime_error {
 public:
  explicit AssumptionError(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a 64-bit, used for input provenance hashes in JSON artifacts.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v);

// binom(n, k) as a double; exact for the small orders used here.
double binom(int n, int k);

// factorial as unsigned 64-bit; throws UsageError for n > 20 (overflow).
std::uint64_t factorial_checked(int n);

// Inverse standard normal CDF, |error| < 1e-9 over (0,1)
// (rational approximation plus one Halley refinement).
double normal_quantile(double p);

}  // namespace polyiv
