#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nosol/integer.hpp"

namespace nosol {

/// An invariant linear form sum(c_i x_i) = 0 with sum(c_i) = 0.
///
/// Symmetric equations a_1 x_1 + ... + a_k x_k = a_1 x_1' + ... + a_k x_k'
/// keep the layout (a_1..a_k, -a_1..-a_k) so that position t and k+t are the
/// two sides of the same generator. Free-form input is brought into canonical
/// order (descending |c|, positive first on ties); structured recipes that rely
/// on positions use from_ordered().
class Equation {
 public:
  /// The one-generator equation x = x'.
  Equation();

  static Equation symmetric(std::vector<Int> generators);
  static Equation from_coeffs(std::vector<Int> coeffs);
  static Equation from_ordered(std::vector<Int> coeffs);

  std::span<const Int> coeffs() const { return coeffs_; }
  Int coeff(std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  bool is_symmetric() const { return generators_.has_value(); }
  const std::optional<std::vector<Int>>& generators() const { return generators_; }

  /// Sum of the positive coefficients (= sum of |negative| ones). For a
  /// symmetric equation this is a_1 + ... + a_k.
  Int side_sum() const { return side_sum_; }

  /// Human readable form, e.g. "x1+2x2-x3-2x4".
  std::string to_string() const;

  friend bool operator==(const Equation&, const Equation&) = default;

 private:
  Equation(std::vector<Int> coeffs, std::optional<std::vector<Int>> generators);

  std::vector<Int> coeffs_;
  std::optional<std::vector<Int>> generators_;
  Int side_sum_ = 0;
};

enum class SolutionKind { Trivial, NonTrivial };

struct SolutionClass {
  std::vector<Int> assignment;
  SolutionKind kind = SolutionKind::Trivial;

  friend bool operator==(const SolutionClass&, const SolutionClass&) = default;
};

/// Build the symmetric equation with positive generators a_1..a_k.
Equation make_symmetric(std::span<const Int> generators);

/// Flip signs and drop zeros so arbitrary signed generators become valid
/// make_symmetric() input. Swapping x_i with x_i' absorbs the sign.
std::vector<Int> normalize_generators(std::span<const Int> signed_generators);

/// dot(coeffs, x) with overflow checks.
Int evaluate(const Equation& eq, std::span<const Int> x);

/// Maximum number of disjoint zero-sum blocks partitioning the index set.
/// Throws PreconditionError when the equation has more than 16 terms.
int genus(const Equation& eq);

/// Classify a satisfying assignment. Throws PreconditionError if x does not
/// solve the equation or has the wrong length.
SolutionClass classify_solution(const Equation& eq, std::span<const Int> x);

/// Value-class test without the satisfaction check (hot path of the oracle).
bool is_trivial_assignment(std::span<const Int> coeffs, std::span<const Int> x);

/// True iff the inclusion-minimal zero-sum index sets partition the index
/// set and every zero-sum set is a union of them. At most 24 terms.
bool is_primitive(const Equation& eq);

/// True iff all 2^k subset sums of a are distinct. At most 24 entries.
bool is_dissociated(std::span<const Int> a);

}  // namespace nosol
