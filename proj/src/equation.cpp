#include "nosol/equation.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <sstream>

namespace nosol {
namespace {

std::vector<Int> strip_zeros(std::vector<Int> coeffs) {
  std::erase(coeffs, Int{0});
  return coeffs;
}

void canonical_sort(std::vector<Int>& coeffs) {
  std::stable_sort(coeffs.begin(), coeffs.end(), [](Int a, Int b) {
    Int aa = abs_checked(a), ab = abs_checked(b);
    if (aa != ab) return aa > ab;
    return a > b;
  });
}

// Packed bit vector over subset masks.
class MaskBits {
 public:
  explicit MaskBits(std::size_t n) : words_((n + 63) / 64, 0) {}
  bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

 private:
  std::vector<std::uint64_t> words_;
};

// Marks every subset mask whose coefficient sum is zero.
void mark_zero_sums(std::span<const Int> c, MaskBits& zero) {
  const std::uint32_t m = static_cast<std::uint32_t>(c.size());
  // Iterative DFS over (index, mask, sum).
  struct Frame {
    std::uint32_t index;
    std::uint32_t mask;
    Int sum;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.index == m) {
      if (f.sum == 0) zero.set(f.mask);
      continue;
    }
    stack.push_back({f.index + 1, f.mask, f.sum});
    stack.push_back({f.index + 1, f.mask | (1u << f.index), checked_add(f.sum, c[f.index])});
  }
}

}  // namespace

Equation::Equation(std::vector<Int> coeffs, std::optional<std::vector<Int>> generators)
    : coeffs_(std::move(coeffs)), generators_(std::move(generators)) {
  if (coeffs_.size() < 2)
    throw PreconditionError("an equation needs at least two nonzero coefficients");
  Int total = 0;
  for (Int c : coeffs_) {
    total = checked_add(total, c);
    if (c > 0) side_sum_ = checked_add(side_sum_, c);
  }
  if (total != 0) throw PreconditionError("coefficients must sum to zero (invariant equation)");
}

Equation::Equation() : Equation({1, -1}, std::vector<Int>{1}) {}

Equation Equation::symmetric(std::vector<Int> generators) {
  if (generators.empty()) throw PreconditionError("symmetric equation needs at least one generator");
  for (Int a : generators)
    if (a < 1) throw PreconditionError("symmetric generators must be positive; normalize signs first");
  std::vector<Int> coeffs(generators);
  for (Int a : generators) coeffs.push_back(-a);
  return Equation(std::move(coeffs), std::move(generators));
}

Equation Equation::from_coeffs(std::vector<Int> coeffs) {
  coeffs = strip_zeros(std::move(coeffs));
  canonical_sort(coeffs);
  return Equation(std::move(coeffs), std::nullopt);
}

Equation Equation::from_ordered(std::vector<Int> coeffs) {
  return Equation(strip_zeros(std::move(coeffs)), std::nullopt);
}

std::string Equation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    Int c = coeffs_[i];
    if (c < 0)
      os << '-';
    else if (i > 0)
      os << '+';
    if (abs_checked(c) != 1) os << abs_checked(c);
    os << 'x' << (i + 1);
  }
  os << "=0";
  return os.str();
}

Equation make_symmetric(std::span<const Int> generators) {
  return Equation::symmetric(std::vector<Int>(generators.begin(), generators.end()));
}

std::vector<Int> normalize_generators(std::span<const Int> signed_generators) {
  std::vector<Int> out;
  for (Int a : signed_generators)
    if (a != 0) out.push_back(abs_checked(a));
  return out;
}

Int evaluate(const Equation& eq, std::span<const Int> x) {
  if (x.size() != eq.size()) throw PreconditionError("assignment length does not match equation");
  Int acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc = checked_add(acc, checked_mul(eq.coeff(i), x[i]));
  return acc;
}

int genus(const Equation& eq) {
  const std::size_t m = eq.size();
  if (m > 16) throw PreconditionError("genus: at most 16 terms supported");
  const std::uint32_t full = (1u << m) - 1;
  std::vector<Int> sums(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask)
    sums[mask] = sums[mask & (mask - 1)] + eq.coeff(std::countr_zero(mask));

  constexpr int kImpossible = -1;
  std::vector<int> best(full + 1, kImpossible);
  best[0] = 0;
  for (std::uint32_t s = 1; s <= full; ++s) {
    if (sums[s] != 0) continue;
    const std::uint32_t low = s & (~s + 1);
    const std::uint32_t rest = s ^ low;
    // Enumerate blocks T containing the lowest element of S.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t block = sub | low;
      if (sums[block] == 0 && best[s ^ block] != kImpossible)
        best[s] = std::max(best[s], 1 + best[s ^ block]);
      if (sub == 0) break;
    }
  }
  if (best[full] == kImpossible) throw PreconditionError("genus: no zero-sum partition exists");
  return best[full];
}

bool is_trivial_assignment(std::span<const Int> coeffs, std::span<const Int> x) {
  const std::size_t m = x.size();
  for (std::size_t i = 0; i < m; ++i) {
    bool first = true;
    for (std::size_t j = 0; j < i; ++j)
      if (x[j] == x[i]) {
        first = false;
        break;
      }
    if (!first) continue;
    Int acc = 0;
    for (std::size_t j = i; j < m; ++j)
      if (x[j] == x[i]) acc += coeffs[j];
    if (acc != 0) return false;
  }
  return true;
}

SolutionClass classify_solution(const Equation& eq, std::span<const Int> x) {
  if (evaluate(eq, x) != 0) throw PreconditionError("assignment does not satisfy the equation");
  SolutionClass out;
  out.assignment.assign(x.begin(), x.end());
  out.kind = is_trivial_assignment(eq.coeffs(), x) ? SolutionKind::Trivial : SolutionKind::NonTrivial;
  return out;
}

bool is_primitive(const Equation& eq) {
  const std::size_t m = eq.size();
  if (m > 24) throw PreconditionError("is_primitive: at most 24 terms supported");
  const std::uint32_t full = static_cast<std::uint32_t>((std::uint64_t{1} << m) - 1);
  const std::size_t count = std::size_t{full} + 1;

  MaskBits zero(count);
  mark_zero_sums(eq.coeffs(), zero);

  // contains[mask]: mask has a nonempty proper zero-sum subset.
  MaskBits contains(count);
  std::vector<std::uint32_t> minimal;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    bool found = false;
    for (std::uint32_t bits = mask; bits && !found; bits &= bits - 1) {
      const std::uint32_t sub = mask & ~(bits & (~bits + 1));
      if (sub != 0 && (zero.test(sub) || contains.test(sub))) found = true;
    }
    if (found)
      contains.set(mask);
    else if (zero.test(mask))
      minimal.push_back(mask);
    if (mask == full) break;
  }

  std::uint32_t covered = 0;
  for (std::uint32_t block : minimal) {
    if (covered & block) return false;
    covered |= block;
  }
  if (covered != full) return false;

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (zero.test(mask))
      for (std::uint32_t block : minimal) {
        const std::uint32_t part = mask & block;
        if (part != 0 && part != block) return false;
      }
    if (mask == full) break;
  }
  return true;
}

bool is_dissociated(std::span<const Int> a) {
  const std::size_t k = a.size();
  if (k > 24) throw PreconditionError("is_dissociated: at most 24 entries supported");
  // Subset sums collide iff some nonzero e in {-1,0,1}^k has sum(e_i a_i) = 0.
  // Split the signed combinations in two halves and count zero-sum pairs; the
  // all-zero pair always contributes exactly one.
  auto signed_sums = [](std::span<const Int> part) {
    std::vector<Int> out{0};
    for (Int v : part) {
      const std::size_t n = out.size();
      out.reserve(3 * n);
      for (std::size_t i = 0; i < n; ++i) {
        out.push_back(checked_add(out[i], v));
        out.push_back(checked_sub(out[i], v));
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  const std::size_t half = k / 2;
  const auto left = signed_sums(a.first(half));
  const auto right = signed_sums(a.subspan(half));
  std::uint64_t pairs = 0;
  for (Int r : right) {
    auto [lo, hi] = std::equal_range(left.begin(), left.end(), -r);
    pairs += static_cast<std::uint64_t>(hi - lo);
    if (pairs > 1) return false;
  }
  return pairs == 1;
}

}  // namespace nosol
