#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nosol {

/// Exact integer type used for coefficients, digits and set elements.
/// Every arithmetic step that could leave the 64-bit range goes through the
/// checked helpers below; overflow is reported, never wrapped.
using Int = std::int64_t;
using Wide = __int128;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A caller violated a documented precondition (bad generator, gcd, range...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search ran out of its node budget before finishing.
/// Results from an interrupted search must not be reported as certified.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(std::uint64_t nodes, std::uint64_t budget)
      : std::runtime_error("node budget exhausted after " + std::to_string(nodes) +
                           " nodes (budget " + std::to_string(budget) + ")"),
        nodes_(nodes),
        budget_(budget) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t nodes_;
  std::uint64_t budget_;
};

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int checked_pow(Int base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

inline Int narrow(Wide w) {
  if (w > std::numeric_limits<Int>::max() || w < std::numeric_limits<Int>::min())
    throw OverflowError("value does not fit in 64 bits");
  return static_cast<Int>(w);
}

inline Int abs_checked(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw OverflowError("abs of INT64_MIN");
  return a < 0 ? -a : a;
}

inline Int gcd_abs(Int a, Int b) { return std::gcd(abs_checked(a), abs_checked(b)); }

/// Largest x >= 0 with x^k <= n (n >= 0, k >= 1).
inline Int integer_root(Int n, unsigned k) {
  if (n < 0) throw PreconditionError("integer_root of negative value");
  if (k == 1 || n < 2) return n;
  auto fits = [&](Int x) {
    Wide acc = 1;
    for (unsigned i = 0; i < k; ++i) {
      acc *= x;
      if (acc > n) return false;
    }
    return true;
  };
  Int lo = 1, hi = 1;
  while (fits(hi)) {
    lo = hi;
    if (hi > (Int{1} << 31)) break;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Int mid = lo + (hi - lo) / 2;
    (fits(mid) ? lo : hi) = mid;
  }
  return fits(hi) ? hi : lo;
}

}  // namespace nosol
