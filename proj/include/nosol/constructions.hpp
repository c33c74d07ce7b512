#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nosol/certificate.hpp"

namespace nosol {

/// The subset of [N] obtained from a certified digit set: A = {x + 1 :
/// 0 <= x < N, every base-L digit of x lies in A_L}. Membership and size are
/// computed from the digits; elements() materializes on demand.
class LiftedSet {
 public:
  LiftedSet(Int N, Int base, std::vector<Int> digits);

  Int bound() const { return N_; }
  Int base() const { return base_; }
  const std::vector<Int>& digits() const { return digits_; }

  bool contains(Int n) const;
  /// Exact |A| via a digit walk over N.
  Int size() const;
  /// Sorted elements; throws PreconditionError above `limit` elements.
  std::vector<Int> elements(Int limit = 50'000'000) const;

 private:
  Int N_;
  Int base_;
  std::vector<Int> digits_;
};

/// Lift a certificate to [N]. NonTrivial certificates need a primitive
/// equation; Distinct certificates need position pairs (the digit-level
/// property that survives lifting).
LiftedSet lift(const Certificate& cert, Int N);

/// log|A_L| / log L.
Rate lift_rate(const DigitSet& ds);

struct ConstructionOptions {
  std::uint64_t budget = kDefaultBudget;
  /// Oracle re-check ceiling for recipes that also have an analytic proof.
  Int oracle_digit_limit = 200;
};

/// ax + by = ax' + by' with 0 < a < b coprime: L = (a+b)(b-1)+1, digits {0..b-1}.
Certificate two_var_digits(Int a, Int b, const ConstructionOptions& opt = {});

/// Generators (1, m, ..., m^(k-1)): L = m^k, digits {0..m-1}.
Certificate geometric_digits(Int m, Int k, const ConstructionOptions& opt = {});

/// Generators (a, b, ..., b^(k-1)) with gcd(a,b) = 1 and a <= b^(k-1).
Certificate coprime_power_digits(Int a, Int b, Int k, const ConstructionOptions& opt = {});

/// Generators with s*a_i <= a_(i+1): digits {0..s-1}, L = (sum a)(s-1)+1.
Certificate spaced_digits(std::span<const Int> a, Int s, const ConstructionOptions& opt = {});

/// Generators (m, 2m-2, 3m-3) with digits {0..m-2}; every digit solution has
/// x_1 = x_1', certified for distinct-variable lifting.
Certificate distinct_var_digits(Int m, const ConstructionOptions& opt = {});

/// A primitive relation i*a + j*b + k*c = 0 (gcd of |i|,|j|,|k| is 1, first
/// nonzero entry positive).
struct Dependency {
  Int i = 0, j = 0, k = 0;

  Int magnitude() const;
  friend bool operator==(const Dependency&, const Dependency&) = default;
};

/// Which two coordinates of a dependency the avoidance set is built from.
struct DependencyPair {
  std::size_t first = 0, second = 0;  // indices into (i, j, k)
  Int small = 0, large = 0;           // |coords| divided by their gcd, small < large
};

/// Candidate coordinate pairs with distinct nonzero magnitudes.
std::vector<DependencyPair> dependency_pairs(const Dependency& dep);

/// A subset of {0..L-1} whose difference set never holds both t*u and t*v
/// (t != 0) for the chosen pair (u, v) of dependency coordinates. Built by
/// lifting the two-variable digits for (u', v') inside [0, L).
std::vector<Int> avoid_one_dependency_digits(const Dependency& dep, Int L);

/// Smallest max-magnitude among relations with all |coords| <= bound that are
/// not rational multiples of dep; nullopt when there is none.
std::optional<Int> smallest_independent_relation(Int a, Int b, Int c, const Dependency& dep, Int bound,
                                                 std::uint64_t budget = kDefaultBudget);

/// Exhaustively confirms the small/large gap: every independent relation with
/// magnitudes <= bound has a coordinate >= b^(1-alpha2)/2. alpha2 defaults to
/// the smallest admissible value log_b(max|dep|).
bool dependency_gap_check(Int a, Int b, Int c, const Dependency& dep, Int bound,
                          std::optional<double> alpha2 = std::nullopt,
                          std::uint64_t budget = kDefaultBudget);

struct ThreeCoefficientConfig {
  /// Use the proof's 0.499 branch when |coord|/gcd exceeds exp(log_ratio_threshold).
  double log_ratio_threshold = 6.907755278982137;  // ln(1000)
  /// Dependencies with max coordinate above exp(log_dependency_threshold) are "large".
  double log_dependency_threshold = 6.907755278982137;
  /// alpha_2 for the small-dependency branch.
  double small_alpha2 = 0.1;
  /// Lower floor for the dependency search radius floor(b^alpha).
  Int min_dependency_radius = 2;
  std::uint64_t budget = kDefaultBudget;

  /// The literal constants e^(10^3) and e^(10^6).
  static ThreeCoefficientConfig proof_constants();
};

enum class ThreeCoefficientCase { NoDependency, LargeDependency, SmallDependency, CubicGap };

struct ThreeCoefficientOutcome {
  ThreeCoefficientCase kind = ThreeCoefficientCase::NoDependency;
  double alpha = 0.0;
  Int radius = 0;  // dependency search radius
  std::optional<Dependency> dependency;
  std::optional<DependencyPair> pair;
  Int window = 0;  // digits live in [0, window)
  /// Certificate; verified == false means the oracle ran out of budget and
  /// this is only a plan.
  Certificate certificate;
};

/// Three-generator construction for ax+by+cz = ax'+by'+cz'. alpha defaults to
/// the optimum of the balancing quadratic with q = 0.499.
ThreeCoefficientOutcome three_generator_pipeline(Int a, Int b, Int c, std::optional<double> alpha = std::nullopt,
                                               const ThreeCoefficientConfig& cfg = {});

/// 3AP-free subset of {0..m}: the larger of Behrend's sphere-shell set and
/// the ternary {0,1}-digit set.
std::vector<Int> behrend_set(Int m);

/// x1 + x2 + d x3 + d x4 = 2 y1 + 2d y2 with digits = behrend_set(floor((d-1)/2)).
Certificate ap_free_digits(Int d, const ConstructionOptions& opt = {});

/// Shift generators to (i_t L + a_t) on the left and (j_t L + a_t) on the
/// right. Requires sum(i) = sum(j) so the new equation stays invariant.
Certificate shift_transfer(const Certificate& cert, std::span<const Int> i, std::span<const Int> j,
                           const ConstructionOptions& opt = {});

/// Best translate window of a solution-free set, shifted to start at 0.
Certificate window_extract(std::span<const Int> set, Int L, const Equation& eq,
                           const ConstructionOptions& opt = {});

const char* to_string(ThreeCoefficientCase c);

}  // namespace nosol
