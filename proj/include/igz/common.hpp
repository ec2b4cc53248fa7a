#pragma once

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace igz {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

/// Invalid parameters or violated preconditions.  CLI exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed the configured budget.  CLI exit code 3.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent computation routes disagreed; signals a convention bug.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Enumeration budget (number of candidate tuples scanned per call).
/// Override with the IGZ_ENUM_BUDGET environment variable.
inline uint64_t enum_budget() {
  if (const char* s = std::getenv("IGZ_ENUM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && v > 0) return v;
  }
  return 100000000ull;  // 1e8
}

/// q^k with an overflow guard; throws BudgetError past `limit`.
inline uint64_t checked_pow(uint64_t q, uint32_t k, uint64_t limit,
                            const std::string& what) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < k; ++i) {
    if (r > limit / q)
      throw BudgetError(what + ": " + std::to_string(q) + "^" +
                        std::to_string(k) + " exceeds budget " +
                        std::to_string(limit));
    r *= q;
  }
  return r;
}

/// Compensated (Kahan) accumulator for complex sums; summation order is
/// the caller's responsibility and must be deterministic.
class KahanSum {
 public:
  void add(Complex x) {
    Complex y = x - comp_;
    Complex t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  Complex value() const { return sum_; }

 private:
  Complex sum_{0.0, 0.0};
  Complex comp_{0.0, 0.0};
};

inline double rat_to_double(const Rat& r) {
  return static_cast<double>(boost::multiprecision::numerator(r)) /
         static_cast<double>(boost::multiprecision::denominator(r));
}

}  // namespace igz
