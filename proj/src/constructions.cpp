#include "nosol/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nosol/digit_search.hpp"
#include "nosol/rate_toolkit.hpp"

namespace nosol {
namespace {

std::vector<Int> iota_digits(Int count) {
  std::vector<Int> d(static_cast<std::size_t>(count));
  std::iota(d.begin(), d.end(), Int{0});
  return d;
}

std::vector<IndexPair> symmetric_pairs(std::size_t k) {
  std::vector<IndexPair> pairs;
  for (std::size_t t = 0; t < k; ++t) pairs.emplace_back(t, k + t);
  return pairs;
}

// Oracle cost estimate in the strategy the oracle would pick.
long double oracle_cost(std::size_t digits, std::size_t terms) {
  const std::size_t e = terms >= 6 ? (terms + 1) / 2 : terms - 1;
  return std::pow(static_cast<long double>(digits), static_cast<long double>(e));
}

Certificate analytic(DigitSet ds, SolutionMode mode, std::vector<IndexPair> pairs) {
  if (!ds.no_carry()) throw PreconditionError("digit set violates the no-carry condition");
  Certificate cert;
  cert.mode = mode;
  cert.pairs = std::move(pairs);
  cert.verified = true;
  cert.method = Verification::Analytic;
  cert.degenerate = ds.digits.size() < 2;
  cert.digit_set = std::move(ds);
  return cert;
}

// Oracle certification when affordable; recipes with a divisibility proof
// fall back to the analytic certificate.
Certificate certify_or_analytic(DigitSet ds, SolutionMode mode, std::vector<IndexPair> pairs,
                                const ConstructionOptions& opt) {
  const bool affordable = static_cast<Int>(ds.digits.size()) <= opt.oracle_digit_limit &&
                          oracle_cost(ds.digits.size(), ds.equation.size()) <= static_cast<long double>(opt.budget);
  if (!affordable) return analytic(std::move(ds), mode, std::move(pairs));
  Certificate cert = certify(std::move(ds), mode, std::move(pairs), opt.budget);
  if (!cert.verified) throw std::logic_error("construction produced a digit set with a violating solution");
  return cert;
}

Certificate certify_strict(DigitSet ds, SolutionMode mode, std::vector<IndexPair> pairs, std::uint64_t budget) {
  Certificate cert = certify(std::move(ds), mode, std::move(pairs), budget);
  if (!cert.verified) throw std::logic_error("construction produced a digit set with a violating solution");
  return cert;
}

double safe_log(long double x) { return static_cast<double>(std::log(x)); }

// Elements of [0, limit) whose base-`base` digits all lie in `alphabet`.
std::vector<Int> digit_restricted_below(Int limit, Int base, const std::vector<Int>& alphabet) {
  if (limit <= 0) return {};
  LiftedSet lifted(limit, base, alphabet);
  auto elems = lifted.elements();
  for (Int& e : elems) e -= 1;
  return elems;
}

// Largest W with (2W)^3 <= c^2, i.e. floor(c^(2/3) / 2).
Int cubic_window(Int c) {
  const Wide target = Wide{c} * Wide{c};
  Int lo = 0, hi = 1;
  auto ok = [&](Int w) {
    const Wide t = Wide{2} * w;
    return t * t * t <= target;
  };
  while (ok(hi)) hi *= 2;
  while (hi - lo > 1) {
    const Int mid = lo + (hi - lo) / 2;
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

// floor(b^alpha) with a correction for values that land on an integer.
Int floor_power(Int b, double alpha) {
  Int r = static_cast<Int>(std::floor(std::pow(static_cast<long double>(b), static_cast<long double>(alpha))));
  auto le = [&](Int v) {
    return std::log(static_cast<long double>(v)) <= alpha * std::log(static_cast<long double>(b)) + 1e-15L;
  };
  while (r > 1 && !le(r)) --r;
  while (le(r + 1)) ++r;
  return std::max<Int>(r, 1);
}

Int mod_inverse(Int value, Int mod) {
  Int g = mod, x = 0, x1 = 1, v = ((value % mod) + mod) % mod;
  while (v != 0) {
    const Int q = g / v;
    std::tie(g, v) = std::pair{v, g - q * v};
    std::tie(x, x1) = std::pair{x1, x - q * x1};
  }
  if (g != 1) throw PreconditionError("values are not coprime");
  return ((x % mod) + mod) % mod;
}

// Subset with the best rate among the prefixes of a sorted digit list.
std::vector<Int> best_rate_prefix(const std::vector<Int>& digits, Int side_sum) {
  std::size_t best = std::min<std::size_t>(digits.size(), 1);
  long double best_rate = -1;
  for (std::size_t n = 2; n <= digits.size(); ++n) {
    const Int base = checked_add(checked_mul(side_sum, digits[n - 1]), 1);
    const long double r = Rate{static_cast<Int>(n), base}.value();
    if (r > best_rate) {
      best_rate = r;
      best = n;
    }
  }
  return {digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(best)};
}

DigitSet smallest_base(std::vector<Int> digits, Equation eq) {
  const Int base = checked_add(checked_mul(eq.side_sum(), digits.empty() ? 0 : digits.back()), 1);
  return DigitSet{std::max<Int>(base, 2), std::move(digits), std::move(eq)};
}

}  // namespace

// ---------------------------------------------------------------- LiftedSet

LiftedSet::LiftedSet(Int N, Int base, std::vector<Int> digits) : N_(N), base_(base), digits_(std::move(digits)) {
  if (N_ < 0) throw PreconditionError("N must be nonnegative");
  if (base_ < 2) throw PreconditionError("base must be at least 2");
  for (std::size_t i = 0; i < digits_.size(); ++i)
    if (digits_[i] < 0 || digits_[i] >= base_ || (i > 0 && digits_[i] <= digits_[i - 1]))
      throw PreconditionError("digits must be sorted, distinct and inside [0, base)");
}

bool LiftedSet::contains(Int n) const {
  if (n < 1 || n > N_) return false;
  Int x = n - 1;
  do {
    if (!std::binary_search(digits_.begin(), digits_.end(), x % base_)) return false;
    x /= base_;
  } while (x > 0);
  return true;
}

Int LiftedSet::size() const {
  if (N_ == 0 || digits_.empty()) return 0;
  // Digits of N, most significant first; count x < N digit by digit.
  std::vector<Int> top;
  for (Int x = N_; x > 0; x /= base_) top.push_back(x % base_);
  std::reverse(top.begin(), top.end());
  const Int a = static_cast<Int>(digits_.size());
  Int count = 0;
  for (std::size_t pos = 0; pos < top.size(); ++pos) {
    const Int q = top[pos];
    const Int below = std::lower_bound(digits_.begin(), digits_.end(), q) - digits_.begin();
    const unsigned rest = static_cast<unsigned>(top.size() - pos - 1);
    count = checked_add(count, checked_mul(below, checked_pow(a, rest)));
    if (!std::binary_search(digits_.begin(), digits_.end(), q)) return count;
  }
  return count;
}

std::vector<Int> LiftedSet::elements(Int limit) const {
  const Int n = size();
  if (n > limit) throw PreconditionError("lifted set too large to materialize");
  std::vector<Int> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 0) return out;
  unsigned positions = 0;
  for (Int x = N_ - 1; x > 0; x /= base_) ++positions;
  positions = std::max(positions, 1u);
  // Most significant digit first yields ascending order.
  auto walk = [&](auto& self, unsigned pos, Int prefix) -> void {
    if (pos == positions) {
      if (prefix < N_) out.push_back(prefix + 1);
      return;
    }
    for (Int d : digits_) {
      const Wide next = Wide{prefix} * base_ + d;
      // Remaining positions can only grow the value.
      Wide floor_value = next;
      for (unsigned r = pos + 1; r < positions; ++r) floor_value *= base_;
      if (floor_value >= N_) break;
      self(self, pos + 1, static_cast<Int>(next));
    }
  };
  walk(walk, 0, 0);
  return out;
}

LiftedSet lift(const Certificate& cert, Int N) {
  if (!cert.verified) throw PreconditionError("cannot lift an uncertified digit set");
  const DigitSet& ds = cert.digit_set;
  switch (cert.mode) {
    case SolutionMode::NonTrivial:
      if (!is_primitive(ds.equation))
        throw PreconditionError("lift needs a primitive equation for non-trivial certificates");
      break;
    case SolutionMode::Distinct:
      if (cert.pairs.empty())
        throw PreconditionError("distinct-variable digit certificates lift only with a forced-equal pair");
      break;
    case SolutionMode::Paired:
      break;
  }
  if (!ds.no_carry()) throw PreconditionError("digit set violates the no-carry condition");
  return LiftedSet(N, ds.base, ds.digits);
}

Rate lift_rate(const DigitSet& ds) { return ds.rate(); }

// ------------------------------------------------------- digit recipes

Certificate two_var_digits(Int a, Int b, const ConstructionOptions& opt) {
  if (a < 1 || a >= b) throw PreconditionError("two_var_digits needs 0 < a < b");
  if (std::gcd(a, b) != 1) throw PreconditionError("two_var_digits needs gcd(a, b) = 1");
  const Int base = checked_add(checked_mul(checked_add(a, b), b - 1), 1);
  DigitSet ds{base, iota_digits(b), Equation::symmetric({a, b})};
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::NonTrivial, {}, opt);
  cert.recipe = "two-var";
  cert.analytic_bound = 0.5 - 1.0 / safe_log(b);
  cert.bound_label = "1/2 - 1/log b";
  return cert;
}

Certificate geometric_digits(Int m, Int k, const ConstructionOptions& opt) {
  if (m < 2 || k < 2) throw PreconditionError("geometric_digits needs m, k >= 2");
  std::vector<Int> gens;
  for (Int t = 0; t < k; ++t) gens.push_back(checked_pow(m, static_cast<unsigned>(t)));
  const Int base = checked_pow(m, static_cast<unsigned>(k));
  DigitSet ds{base, iota_digits(m), Equation::symmetric(gens)};
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::NonTrivial, {}, opt);
  cert.recipe = "geometric";
  cert.analytic_bound = 1.0 / static_cast<double>(k);
  cert.bound_label = "1/k";
  return cert;
}

Certificate coprime_power_digits(Int a, Int b, Int k, const ConstructionOptions& opt) {
  if (a < 1 || b < 2 || k < 2) throw PreconditionError("coprime_power_digits needs a >= 1, b >= 2, k >= 2");
  if (std::gcd(a, b) != 1) throw PreconditionError("coprime_power_digits needs gcd(a, b) = 1");
  const Int top = checked_pow(b, static_cast<unsigned>(k - 1));
  if (a > top) throw PreconditionError("coprime_power_digits needs a <= b^(k-1)");
  std::vector<Int> gens{a};
  Int sum = a;
  for (Int t = 1; t < k; ++t) {
    gens.push_back(checked_pow(b, static_cast<unsigned>(t)));
    sum = checked_add(sum, gens.back());
  }
  const Int base = checked_add(checked_mul(sum, b - 1), 1);
  DigitSet ds{base, iota_digits(b), Equation::symmetric(gens)};
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::NonTrivial, {}, opt);
  cert.recipe = "coprime-power";
  cert.analytic_bound = 1.0 / static_cast<double>(k) - 1.0 / safe_log(b);
  cert.bound_label = "1/k - 1/log b";
  return cert;
}

Certificate spaced_digits(std::span<const Int> a, Int s, const ConstructionOptions& opt) {
  if (a.empty()) throw PreconditionError("spaced_digits needs at least one generator");
  if (s < 2) throw PreconditionError("spaced_digits needs s >= 2");
  Int sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 1) throw PreconditionError("spaced_digits needs positive generators");
    if (i + 1 < a.size() && checked_mul(s, a[i]) > a[i + 1])
      throw PreconditionError("spaced_digits needs s*a_i <= a_(i+1)");
    sum = checked_add(sum, a[i]);
  }
  const Int base = checked_add(checked_mul(sum, s - 1), 1);
  DigitSet ds{base, iota_digits(s), Equation::symmetric({a.begin(), a.end()})};
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::NonTrivial, {}, opt);
  cert.recipe = "spaced";
  cert.analytic_bound = safe_log(s) / (safe_log(s) + safe_log(sum));
  cert.bound_label = "log s / (log s + log sum a)";
  return cert;
}

Certificate distinct_var_digits(Int m, const ConstructionOptions& opt) {
  if (m < 3) throw PreconditionError("distinct_var_digits needs m >= 3");
  const Int g2 = checked_mul(2, m - 1), g3 = checked_mul(3, m - 1);
  Equation eq = Equation::symmetric({m, g2, g3});
  const Int base = checked_add(checked_mul(eq.side_sum(), m - 2), 1);
  DigitSet ds{base, iota_digits(m - 1), std::move(eq)};
  // Every digit solution has x_1 = x_1': (m-1) | m(x_1 - x_1') with |x_1 - x_1'| <= m-2.
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::Distinct, {{0, 3}}, opt);
  cert.recipe = "distinct-var";
  cert.analytic_bound = static_cast<double>(cert.rate().value());
  cert.bound_label = "1/2 - eps_m";
  return cert;
}

// ------------------------------------------------------- dependencies

Int Dependency::magnitude() const {
  return std::max({abs_checked(i), abs_checked(j), abs_checked(k)});
}

std::vector<DependencyPair> dependency_pairs(const Dependency& dep) {
  const Int coords[3] = {dep.i, dep.j, dep.k};
  std::vector<DependencyPair> out;
  for (std::size_t p = 0; p < 3; ++p)
    for (std::size_t q = p + 1; q < 3; ++q) {
      const Int u = abs_checked(coords[p]), v = abs_checked(coords[q]);
      if (u == 0 || v == 0 || u == v) continue;
      const Int g = std::gcd(u, v);
      out.push_back({p, q, std::min(u, v) / g, std::max(u, v) / g});
    }
  return out;
}

namespace {

std::vector<Int> avoidance_set(const DependencyPair& pair, Int L) {
  const Int base = checked_add(checked_mul(pair.small + pair.large, pair.large - 1), 1);
  return digit_restricted_below(L, base, iota_digits(pair.large));
}

std::pair<DependencyPair, std::vector<Int>> best_avoidance(const Dependency& dep, Int L) {
  const auto pairs = dependency_pairs(dep);
  if (pairs.empty()) throw PreconditionError("dependency has no coordinate pair with distinct magnitudes");
  std::pair<DependencyPair, std::vector<Int>> best{pairs.front(), avoidance_set(pairs.front(), L)};
  for (std::size_t t = 1; t < pairs.size(); ++t) {
    auto set = avoidance_set(pairs[t], L);
    const bool larger = set.size() > best.second.size();
    const bool tie_better_rate =
        set.size() == best.second.size() && pairs[t].large > best.first.large;
    if (larger || tie_better_rate) best = {pairs[t], std::move(set)};
  }
  return best;
}

}  // namespace

std::vector<Int> avoid_one_dependency_digits(const Dependency& dep, Int L) {
  if (L < 1) throw PreconditionError("avoid_one_dependency_digits needs L >= 1");
  return best_avoidance(dep, L).second;
}

std::optional<Int> smallest_independent_relation(Int a, Int b, Int c, const Dependency& dep, Int bound,
                                                 std::uint64_t budget) {
  if (std::gcd(b, c) != 1) throw PreconditionError("relation enumeration needs gcd(b, c) = 1");
  if (Wide{dep.i} * a + Wide{dep.j} * b + Wide{dep.k} * c != 0)
    throw PreconditionError("dependency does not satisfy i a + j b + k c = 0");
  const Int inv_b = c == 1 ? 0 : mod_inverse(b, c);
  std::uint64_t nodes = 0;
  std::optional<Int> best;
  for (Int i = -bound; i <= bound; ++i) {
    // j b + k c = -i a forces j = -i a b^{-1} (mod c).
    const Wide rhs = -Wide{i} * a;
    Int j0 = c == 1 ? 0 : static_cast<Int>(((rhs % c) * inv_b % c + c) % c);
    // Smallest j >= -bound in the residue class.
    Int j = j0 - ((j0 + bound) / c) * c;
    if (j < -bound) j += c;
    for (; j <= bound; j += c) {
      if (++nodes > budget) throw BudgetExhausted(nodes, budget);
      const Wide rest = rhs - Wide{j} * b;
      if (rest % c != 0) continue;
      const Wide k = rest / c;
      if (k > bound || k < -bound) continue;
      if (i == 0 && j == 0 && k == 0) continue;
      // Independent of dep iff the cross product is nonzero.
      const Wide cx = Wide{dep.j} * k - Wide{dep.k} * j;
      const Wide cy = Wide{dep.k} * i - Wide{dep.i} * k;
      const Wide cz = Wide{dep.i} * j - Wide{dep.j} * i;
      if (cx == 0 && cy == 0 && cz == 0) continue;
      const Int mag = std::max({abs_checked(i), abs_checked(j), static_cast<Int>(k < 0 ? -k : k)});
      if (!best || mag < *best) best = mag;
    }
  }
  return best;
}

bool dependency_gap_check(Int a, Int b, Int c, const Dependency& dep, Int bound, std::optional<double> alpha2,
                          std::uint64_t budget) {
  if (b < 2) throw PreconditionError("dependency_gap_check needs b >= 2");
  const Int d = dep.magnitude();
  if (d == 0) throw PreconditionError("dependency must be nonzero");
  if (alpha2) {
    if (*alpha2 < 0.0 || *alpha2 >= 0.5) throw PreconditionError("alpha2 must lie in [0, 1/2)");
    if (std::log(static_cast<long double>(d)) > *alpha2 * std::log(static_cast<long double>(b)) + 1e-12L)
      throw PreconditionError("dependency exceeds b^alpha2");
  } else if (Wide{d} * d >= Wide{b}) {
    throw PreconditionError("dependency magnitude must stay below b^(1/2)");
  }
  const auto smallest = smallest_independent_relation(a, b, c, dep, bound, budget);
  if (!smallest) return true;
  if (!alpha2) return Wide{2} * d * *smallest >= Wide{b};  // b^(1 - log_b d) = b / d
  return 2.0L * *smallest >= std::pow(static_cast<long double>(b), 1.0L - *alpha2);
}

// ------------------------------------------------------- three generators

ThreeCoefficientConfig ThreeCoefficientConfig::proof_constants() {
  ThreeCoefficientConfig cfg;
  cfg.log_ratio_threshold = 1e3;
  cfg.log_dependency_threshold = 1e6;
  cfg.small_alpha2 = 0.1;
  cfg.min_dependency_radius = 1;
  return cfg;
}

ThreeCoefficientOutcome three_generator_pipeline(Int a, Int b, Int c, std::optional<double> alpha,
                                               const ThreeCoefficientConfig& cfg) {
  if (a < 1 || a > b || b > c) throw PreconditionError("three-generator pipeline needs 1 <= a <= b <= c");
  if (std::gcd(b, c) != 1) throw PreconditionError("three-generator pipeline needs gcd(b, c) = 1");
  if (c == checked_add(a, b)) throw PreconditionError("three-generator pipeline needs c != a + b");
  const Int gens[3] = {a, b, c};
  if (!is_dissociated(gens)) throw PreconditionError("ax+by+cz=ax'+by'+cz' must be primitive");

  const double beta = static_cast<double>(std::log(static_cast<long double>(c)) / std::log(static_cast<long double>(b)));
  ThreeCoefficientOutcome out;
  out.alpha = alpha ? *alpha : alpha_optimal(beta, 0.499).alpha;
  if (!(out.alpha > 0.0 && out.alpha < 0.5)) throw PreconditionError("alpha must lie in (0, 1/2)");

  Equation eq = Equation::symmetric({a, b, c});
  std::vector<Int> digits;

  if (Wide{c} > Wide{b} * b * b) {
    // c > b^3: two-variable digits for (a, b) inside [0, floor(c^(2/3)/2)).
    out.kind = ThreeCoefficientCase::CubicGap;
    out.window = cubic_window(c);
    if (out.window < 1) throw PreconditionError("window for the c > b^3 case is empty");
    const Int g = std::gcd(a, b);
    const DependencyPair pair{0, 1, a / g, b / g};
    digits = best_rate_prefix(avoidance_set(pair, out.window), eq.side_sum());
  } else {
    out.radius = std::max(floor_power(b, out.alpha), cfg.min_dependency_radius);
    out.dependency = small_dependency_search(a, b, c, out.radius);
    if (!out.dependency) {
      out.kind = ThreeCoefficientCase::NoDependency;
      out.window = out.radius + 1;
      digits = iota_digits(out.window);
    } else {
      const Dependency& dep = *out.dependency;
      const auto gap = smallest_independent_relation(a, b, c, dep, c, cfg.budget);
      out.window = gap ? *gap : c + 1;
      auto [pair, set] = best_avoidance(dep, out.window);
      out.pair = pair;
      const bool large_dep = std::log(static_cast<double>(dep.magnitude())) > cfg.log_dependency_threshold;
      const bool large_ratio = std::log(static_cast<double>(pair.large)) > cfg.log_ratio_threshold;
      out.kind = large_dep && large_ratio ? ThreeCoefficientCase::LargeDependency
                                          : ThreeCoefficientCase::SmallDependency;
      digits = best_rate_prefix(set, eq.side_sum());
    }
  }

  DigitSet ds = smallest_base(std::move(digits), std::move(eq));
  try {
    out.certificate = certify(ds, SolutionMode::NonTrivial, {}, cfg.budget);
    if (!out.certificate.verified) throw std::logic_error("three-generator digits admit a non-trivial solution");
  } catch (const BudgetExhausted&) {
    out.certificate = Certificate{};
    out.certificate.digit_set = std::move(ds);
  }
  out.certificate.recipe = "three-gen";
  switch (out.kind) {
    case ThreeCoefficientCase::NoDependency:
      out.certificate.analytic_bound = out.alpha / (beta + out.alpha);
      out.certificate.bound_label = "alpha / (log_b c + alpha)";
      break;
    case ThreeCoefficientCase::LargeDependency:
      out.certificate.analytic_bound = 0.499 * (1 - out.alpha) / (beta + 1 - out.alpha);
      out.certificate.bound_label = "0.499 (1 - alpha) / (log_b c + 1 - alpha)";
      break;
    case ThreeCoefficientCase::SmallDependency:
      out.certificate.analytic_bound = 0.39 / (beta + 0.39);
      out.certificate.bound_label = "0.39 / (log_b c + 0.39)";
      break;
    case ThreeCoefficientCase::CubicGap:
      out.certificate.analytic_bound = 0.0;
      out.certificate.bound_label = "1/3 - o(1) (asymptotic)";
      break;
  }
  return out;
}

// ------------------------------------------------------- 3AP-free digits

std::vector<Int> behrend_set(Int m) {
  if (m < 0) throw PreconditionError("behrend_set needs m >= 0");
  if (m < 1) return {0};

  // Ternary {0,1}-digit numbers.
  std::vector<Int> ternary;
  for (Int x = 0; x <= m; ++x) {
    Int y = x;
    bool ok = true;
    while (y > 0 && ok) {
      ok = y % 3 != 2;
      y /= 3;
    }
    if (ok) ternary.push_back(x);
  }

  // Sphere shell in {0..n-1}^d written in base 2n-1 (sums never carry).
  const int dim = std::max(1, static_cast<int>(std::ceil(std::sqrt(std::log2(static_cast<double>(m))))));
  auto top_value = [&](Int n) {
    Wide v = 0, p = 1;
    for (int t = 0; t < dim; ++t) {
      v += Wide{n - 1} * p;
      p *= 2 * n - 1;
    }
    return v;
  };
  std::vector<Int> shell;
  Int n = 1;
  while (top_value(n + 1) <= m) ++n;
  if (n >= 2) {
    std::vector<std::vector<Int>> by_norm(static_cast<std::size_t>(dim * (n - 1) * (n - 1) + 1));
    std::vector<Int> coord(static_cast<std::size_t>(dim), 0);
    for (;;) {
      Int value = 0, p = 1, norm = 0;
      for (int t = 0; t < dim; ++t) {
        value += coord[t] * p;
        p *= 2 * n - 1;
        norm += coord[t] * coord[t];
      }
      by_norm[static_cast<std::size_t>(norm)].push_back(value);
      int t = 0;
      while (t < dim && ++coord[t] == n) coord[t++] = 0;
      if (t == dim) break;
    }
    for (auto& s : by_norm)
      if (s.size() > shell.size()) shell = std::move(s);
    std::sort(shell.begin(), shell.end());
    // A shell is a 3AP-free set; translating it to start at 0 keeps it so.
    if (!shell.empty()) {
      const Int lo = shell.front();
      for (Int& v : shell) v -= lo;
    }
  }
  return shell.size() >= ternary.size() ? shell : ternary;
}

Certificate ap_free_digits(Int d, const ConstructionOptions& opt) {
  if (d < 1) throw PreconditionError("ap_free_digits needs d >= 1");
  Equation eq = Equation::from_ordered({1, 1, d, d, -2, checked_mul(-2, d)});
  const Int m = (d - 1) / 2;
  if (m == 0) {
    Certificate cert = certify_strict(DigitSet{2, {0}, std::move(eq)}, SolutionMode::NonTrivial, {}, opt.budget);
    cert.recipe = "ap-free";
    cert.degenerate = true;
    cert.bound_label = "degenerate (m = 0)";
    return cert;
  }
  std::vector<Int> digits = behrend_set(m);
  const Int base_rule = checked_add(checked_mul(checked_add(checked_mul(4, m), 3), m), 1);
  const Int carry_base = checked_add(checked_mul(eq.side_sum(), digits.back()), 1);
  DigitSet ds{std::max(base_rule, carry_base), std::move(digits), std::move(eq)};
  Certificate cert = certify_or_analytic(std::move(ds), SolutionMode::NonTrivial, {}, opt);
  cert.recipe = "ap-free";
  cert.analytic_bound = 0.0;
  cert.bound_label = "1/2 - C/sqrt(log m) (asymptotic)";
  return cert;
}

Certificate shift_transfer(const Certificate& cert, std::span<const Int> i, std::span<const Int> j,
                           const ConstructionOptions& opt) {
  const DigitSet& ds = cert.digit_set;
  if (!cert.verified || cert.mode != SolutionMode::NonTrivial || !ds.equation.is_symmetric())
    throw PreconditionError("shift_transfer needs a verified symmetric non-trivial certificate");
  const auto& gens = *ds.equation.generators();
  const std::size_t k = gens.size();
  if (i.size() != k || j.size() != k) throw PreconditionError("shift vectors must match the generator count");
  Int sum_i = 0, sum_j = 0;
  std::vector<Int> coeffs;
  std::vector<Int> right;
  for (std::size_t t = 0; t < k; ++t) {
    const Int l = checked_add(checked_mul(i[t], ds.base), gens[t]);
    const Int r = checked_add(checked_mul(j[t], ds.base), gens[t]);
    if (l <= 0 || r <= 0) throw PreconditionError("shifted coefficients must stay positive");
    coeffs.push_back(l);
    right.push_back(-r);
    sum_i = checked_add(sum_i, i[t]);
    sum_j = checked_add(sum_j, j[t]);
  }
  if (sum_i != sum_j) throw PreconditionError("shift_transfer needs sum(i) = sum(j) to keep the equation invariant");
  coeffs.insert(coeffs.end(), right.begin(), right.end());
  Equation eq = Equation::from_ordered(std::move(coeffs));
  // Smallest multiple of L above side_sum * max digit.
  const Int need = checked_mul(eq.side_sum(), ds.max_digit());
  const Int base = checked_mul(ds.base, need / ds.base + 1);
  DigitSet shifted{base, ds.digits, std::move(eq)};
  Certificate out = certify_or_analytic(std::move(shifted), SolutionMode::Paired, symmetric_pairs(k), opt);
  out.recipe = "shift";
  const Int s = checked_add(sum_i, sum_j);
  out.analytic_bound = s >= 1 ? static_cast<double>(std::log(static_cast<long double>(ds.digits.size())) /
                                                    (std::log(static_cast<long double>(ds.base)) +
                                                     std::log(static_cast<long double>(s))))
                              : static_cast<double>(cert.rate().value());
  out.bound_label = "log|A_L| / (log L + log s)";
  return out;
}

Certificate window_extract(std::span<const Int> set, Int L, const Equation& eq, const ConstructionOptions& opt) {
  if (set.empty()) throw PreconditionError("window_extract needs a nonempty set");
  for (std::size_t t = 1; t < set.size(); ++t)
    if (set[t] <= set[t - 1]) throw PreconditionError("window_extract needs a sorted set without duplicates");
  const Int s = eq.side_sum();
  if (L < checked_mul(2, s)) throw PreconditionError("window_extract needs L >= 2 s");
  const Int width = (L - 1) / s;  // largest admissible digit
  std::size_t best_start = 0, best_count = 0;
  for (std::size_t lo = 0, hi = 0; lo < set.size(); ++lo) {
    while (hi < set.size() && set[hi] - set[lo] <= width) ++hi;
    if (hi - lo > best_count) {
      best_count = hi - lo;
      best_start = lo;
    }
  }
  const Int t = set[best_start];
  std::vector<Int> digits;
  for (std::size_t x = best_start; x < best_start + best_count; ++x) digits.push_back(set[x] - t);
  Certificate cert = certify(DigitSet{L, std::move(digits), eq}, SolutionMode::NonTrivial, {}, opt.budget);
  if (!cert.verified) throw PreconditionError("window_extract input set is not solution-free");
  cert.recipe = "window";
  cert.bound_label = "q - eps";
  return cert;
}

const char* to_string(ThreeCoefficientCase c) {
  switch (c) {
    case ThreeCoefficientCase::NoDependency:
      return "no-dependency";
    case ThreeCoefficientCase::LargeDependency:
      return "large-dependency";
    case ThreeCoefficientCase::SmallDependency:
      return "small-dependency";
    case ThreeCoefficientCase::CubicGap:
      return "cubic-gap";
  }
  return "unknown";
}

}  // namespace nosol
