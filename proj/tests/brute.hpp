#pragma once

// Naive reference implementations used as test oracles. They share no code
// with the library beyond the integer typedef.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "nosol/integer.hpp"

namespace brute {

using nosol::Int;

enum class Mode { All, Distinct, Paired };

inline bool is_trivial(const std::vector<Int>& c, const std::vector<Int>& x) {
  std::map<Int, Int> by_value;
  for (std::size_t i = 0; i < c.size(); ++i) by_value[x[i]] += c[i];
  for (auto& [v, s] : by_value)
    if (s != 0) return false;
  return true;
}

inline bool counts(const std::vector<Int>& c, const std::vector<Int>& x, Mode mode,
                   const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Int total = 0;
  for (std::size_t i = 0; i < c.size(); ++i) total += c[i] * x[i];
  if (total != 0) return false;
  switch (mode) {
    case Mode::All:
      return !is_trivial(c, x);
    case Mode::Distinct:
      return std::set<Int>(x.begin(), x.end()).size() == x.size();
    case Mode::Paired:
      for (auto [p, q] : pairs)
        if (x[p] != x[q]) return true;
      return false;
  }
  return false;
}

/// Calls f(x) on every assignment in set^m (odometer, last index fastest).
template <class F>
void for_each_assignment(const std::vector<Int>& set, std::size_t m, F&& f) {
  std::vector<std::size_t> idx(m, 0);
  std::vector<Int> x(m);
  for (;;) {
    for (std::size_t i = 0; i < m; ++i) x[i] = set[idx[i]];
    if (!f(x)) return;
    std::size_t t = m;
    while (t > 0) {
      --t;
      if (++idx[t] < set.size()) break;
      idx[t] = 0;
      if (t == 0) return;
    }
  }
}

inline std::uint64_t count_violations(const std::vector<Int>& c, const std::vector<Int>& set, Mode mode = Mode::All,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {}) {
  std::uint64_t n = 0;
  for_each_assignment(set, c.size(), [&](const std::vector<Int>& x) {
    if (counts(c, x, mode, pairs)) ++n;
    return true;
  });
  return n;
}

inline bool has_violation(const std::vector<Int>& c, const std::vector<Int>& set, Mode mode = Mode::All,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs = {}) {
  bool found = false;
  for_each_assignment(set, c.size(), [&](const std::vector<Int>& x) {
    found = counts(c, x, mode, pairs);
    return !found;
  });
  return found;
}

inline bool dissociated(const std::vector<Int>& a) {
  std::set<Int> sums;
  const std::size_t k = a.size();
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    Int s = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s += a[i];
    if (!sums.insert(s).second) return false;
  }
  return true;
}

/// All set partitions of {0..m-1} as block-label vectors.
inline void partitions(std::size_t m, std::vector<std::vector<int>>& out) {
  std::vector<int> label(m, 0);
  auto rec = [&](auto& self, std::size_t i, int blocks) -> void {
    if (i == m) {
      out.push_back(label);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      label[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  if (m > 0) {
    label[0] = 0;
    rec(rec, 1, 1);
  }
}

inline std::vector<Int> block_sums(const std::vector<Int>& c, const std::vector<int>& label) {
  int blocks = 0;
  for (int l : label) blocks = std::max(blocks, l + 1);
  std::vector<Int> sums(static_cast<std::size_t>(blocks), 0);
  for (std::size_t i = 0; i < c.size(); ++i) sums[static_cast<std::size_t>(label[i])] += c[i];
  return sums;
}

inline int genus(const std::vector<Int>& c) {
  std::vector<std::vector<int>> parts;
  partitions(c.size(), parts);
  int best = 0;
  for (const auto& p : parts) {
    const auto sums = block_sums(c, p);
    if (std::all_of(sums.begin(), sums.end(), [](Int s) { return s == 0; }))
      best = std::max(best, static_cast<int>(sums.size()));
  }
  return best;
}

/// Some zero-sum partition P such that every zero-sum subset is a union of
/// blocks of P.
inline bool primitive(const std::vector<Int>& c) {
  const std::size_t m = c.size();
  std::vector<std::uint32_t> zero;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Int s = 0;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) s += c[i];
    if (s == 0) zero.push_back(mask);
  }
  std::vector<std::vector<int>> parts;
  partitions(m, parts);
  for (const auto& p : parts) {
    const auto sums = block_sums(c, p);
    if (!std::all_of(sums.begin(), sums.end(), [](Int s) { return s == 0; })) continue;
    bool ok = true;
    for (std::uint32_t z : zero) {
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = 0; j < m && ok; ++j)
          if (p[i] == p[j] && ((z >> i & 1) != (z >> j & 1))) ok = false;
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

inline bool injective(const std::vector<Int>& a, Int B) {
  std::set<Int> seen;
  std::vector<Int> range;
  for (Int v = 1; v <= B; ++v) range.push_back(v);
  bool ok = true;
  for_each_assignment(range, a.size(), [&](const std::vector<Int>& x) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
    ok = seen.insert(s).second;
    return ok;
  });
  return ok;
}

/// Largest subset of {0..top} containing 0 without violations, lexicographically
/// smallest among the largest, by plain subset enumeration.
inline std::vector<Int> max_digit_set(const std::vector<Int>& c, Int top, Mode mode = Mode::All) {
  std::vector<Int> best;
  const std::uint32_t limit = 1u << top;
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<Int> set{0};
    for (Int v = 1; v <= top; ++v)
      if (mask >> (v - 1) & 1) set.push_back(v);
    if (set.size() < best.size()) continue;
    if (has_violation(c, set, mode)) continue;
    if (set.size() > best.size() || set < best) best = set;
  }
  return best;
}

inline bool three_ap_free(const std::vector<Int>& s) {
  std::set<Int> members(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (members.count(2 * s[j] - s[i])) return false;
  return true;
}

/// Numbers n in [1,N] whose base-L digits of n-1 all lie in digits.
inline std::vector<Int> lifted(Int N, Int L, const std::vector<Int>& digits) {
  std::vector<Int> out;
  for (Int n = 1; n <= N; ++n) {
    Int x = n - 1;
    bool ok = true;
    do {
      ok = std::find(digits.begin(), digits.end(), x % L) != digits.end();
      x /= L;
    } while (ok && x > 0);
    if (ok) out.push_back(n);
  }
  return out;
}

/// Relations i a + j b + k c = 0 with all |coords| <= M, excluding zero.
inline std::vector<std::vector<Int>> relations(Int a, Int b, Int c, Int M) {
  std::vector<std::vector<Int>> out;
  for (Int i = -M; i <= M; ++i)
    for (Int j = -M; j <= M; ++j)
      for (Int k = -M; k <= M; ++k)
        if ((i != 0 || j != 0 || k != 0) && i * a + j * b + k * c == 0) out.push_back({i, j, k});
  return out;
}

}  // namespace brute
