#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nosol/equation.hpp"
#include "nosol/oracle.hpp"

namespace nosol {

/// Exponent log(count)/log(base), carried as the exact pair and only turned
/// into a decimal when reported.
struct Rate {
  Int count = 1;
  Int base = 2;

  long double value() const;
  bool degenerate() const { return count < 2; }
};

/// Strict comparison of two rates (log a/log b < log c/log d).
bool operator<(const Rate& lhs, const Rate& rhs);

/// A digit alphabet A_L inside {0..L-1} for an equation.
struct DigitSet {
  Int base = 2;
  std::vector<Int> digits;
  Equation equation;

  Int side_sum() const { return equation.side_sum(); }
  Int max_digit() const { return digits.empty() ? 0 : digits.back(); }
  /// side_sum * (max - min) < base, with all digits inside [0, base).
  bool no_carry() const;
  Rate rate() const { return Rate{static_cast<Int>(digits.size()), base}; }
};

enum class Verification { None, Oracle, Analytic };

/// An equation plus digit set plus the record of how it was certified.
///
/// `mode` is the lifted claim: NonTrivial (no non-trivial solutions),
/// Distinct (no solutions in pairwise distinct variables) or Paired (every
/// solution keeps each listed pair equal). When `pairs` is non-empty the
/// digit set additionally satisfies the Paired property for those pairs,
/// which is what makes Distinct and Paired certificates liftable.
struct Certificate {
  DigitSet digit_set;
  SolutionMode mode = SolutionMode::NonTrivial;
  std::vector<IndexPair> pairs;
  bool verified = false;
  Verification method = Verification::None;
  std::uint64_t oracle_nodes = 0;
  std::string recipe;
  /// Lower bound on the rate promised by the recipe's analysis, if any.
  double analytic_bound = 0.0;
  std::string bound_label;
  bool degenerate = false;

  Rate rate() const { return digit_set.rate(); }
};

/// Run the oracle on the digit set and check the no-carry inequality.
/// Throws BudgetExhausted when the oracle cannot finish.
Certificate certify(DigitSet ds, SolutionMode mode, std::vector<IndexPair> pairs,
                    std::uint64_t budget = kDefaultBudget);

/// Re-check a persisted certificate: no-carry inequality plus a fresh oracle
/// run in the certificate's mode (and Paired check when pairs are present).
bool verify_certificate(const Certificate& cert, std::uint64_t budget = kDefaultBudget);

/// Same, but re-checks in an explicitly requested mode.
bool verify_certificate(const Certificate& cert, SolutionMode mode,
                        std::uint64_t budget = kDefaultBudget);

const char* to_string(Verification v);

}  // namespace nosol
