#include "nosol/digit_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nosol {
namespace {

// Calls f(tuple) for every k-tuple over `set` that uses `x` at least once,
// where x is the last element of `set`.
template <class F>
void for_each_tuple_with_last(const std::vector<Int>& set, std::size_t k, F&& f) {
  const std::size_t n = set.size();
  std::vector<std::size_t> idx(k, 0);
  std::vector<Int> tuple(k);
  for (;;) {
    bool uses_last = false;
    for (std::size_t t = 0; t < k; ++t) {
      tuple[t] = set[idx[t]];
      uses_last = uses_last || idx[t] + 1 == n;
    }
    if (uses_last) f(tuple);
    std::size_t t = 0;
    while (t < k && ++idx[t] == n) idx[t++] = 0;
    if (t == k) return;
  }
}

Int weighted(const std::vector<Int>& gens, const std::vector<Int>& tuple) {
  Int v = 0;
  for (std::size_t t = 0; t < gens.size(); ++t) v += gens[t] * tuple[t];
  return v;
}

void check_range(Int x, Int max_value) {
  if (x < 0 || x > max_value) throw PreconditionError("checker value outside [0, max_value]");
}

// Primitive symmetric equation, unrestricted variables: a violation is a
// collision of two different weighted k-tuple sums.
class CollisionChecker final : public IncrementalChecker {
 public:
  CollisionChecker(std::vector<Int> gens, Int max_value)
      : gens_(std::move(gens)), max_value_(max_value) {
    Int s = 0;
    for (Int g : gens_) s = checked_add(s, g);
    count_.assign(static_cast<std::size_t>(checked_add(checked_mul(s, max_value), 1)), 0);
  }

  bool try_add(Int x) override {
    check_range(x, max_value_);
    if (!set_.empty() && x <= set_.back()) throw PreconditionError("checker values must increase");
    set_.push_back(x);
    const std::size_t mark = log_.size();
    bool ok = true;
    for_each_tuple_with_last(set_, gens_.size(), [&](const std::vector<Int>& tuple) {
      if (!ok) return;
      ++work_;
      const auto v = static_cast<std::size_t>(weighted(gens_, tuple));
      if (count_[v] != 0) {
        ok = false;
        return;
      }
      count_[v] = 1;
      log_.push_back(v);
    });
    if (!ok) {
      rollback(mark);
      set_.pop_back();
      return false;
    }
    marks_.push_back(mark);
    return true;
  }

  void pop() override {
    if (marks_.empty()) throw PreconditionError("pop on an empty checker");
    rollback(marks_.back());
    marks_.pop_back();
    set_.pop_back();
  }

  std::uint64_t work() const override { return work_; }

 private:
  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      count_[log_.back()] = 0;
      log_.pop_back();
    }
  }

  std::vector<Int> gens_;
  Int max_value_;
  std::vector<Int> set_;
  std::vector<std::uint8_t> count_;
  std::vector<std::size_t> log_;
  std::vector<std::size_t> marks_;
  std::uint64_t work_ = 0;
};

// Symmetric equation, distinct variables: a violation is two tuples of
// pairwise distinct values with equal weighted sums and no value in common.
class DisjointChecker final : public IncrementalChecker {
 public:
  DisjointChecker(std::vector<Int> gens, Int max_value) : gens_(std::move(gens)), max_value_(max_value) {
    Int s = 0;
    for (Int g : gens_) s = checked_add(s, g);
    buckets_.resize(static_cast<std::size_t>(checked_add(checked_mul(s, max_value), 1)));
  }

  bool try_add(Int x) override {
    check_range(x, max_value_);
    if (!set_.empty() && x <= set_.back()) throw PreconditionError("checker values must increase");
    set_.push_back(x);
    const std::size_t mark = log_.size();
    const std::size_t k = gens_.size();
    bool ok = true;
    for_each_tuple_with_last(set_, k, [&](const std::vector<Int>& tuple) {
      if (!ok) return;
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = p + 1; q < k; ++q)
          if (tuple[p] == tuple[q]) return;
      const auto v = static_cast<std::size_t>(weighted(gens_, tuple));
      auto& bucket = buckets_[v];
      for (std::size_t off = 0; off < bucket.size(); off += k) {
        ++work_;
        bool disjoint = true;
        for (std::size_t p = 0; p < k && disjoint; ++p)
          for (std::size_t q = 0; q < k; ++q)
            if (bucket[off + p] == tuple[q]) {
              disjoint = false;
              break;
            }
        if (disjoint) {
          ok = false;
          return;
        }
      }
      ++work_;
      bucket.insert(bucket.end(), tuple.begin(), tuple.end());
      log_.push_back(v);
    });
    if (!ok) {
      rollback(mark);
      set_.pop_back();
      return false;
    }
    marks_.push_back(mark);
    return true;
  }

  void pop() override {
    if (marks_.empty()) throw PreconditionError("pop on an empty checker");
    rollback(marks_.back());
    marks_.pop_back();
    set_.pop_back();
  }

  std::uint64_t work() const override { return work_; }

 private:
  void rollback(std::size_t mark) {
    const std::size_t k = gens_.size();
    while (log_.size() > mark) {
      auto& bucket = buckets_[log_.back()];
      bucket.resize(bucket.size() - k);
      log_.pop_back();
    }
  }

  std::vector<Int> gens_;
  Int max_value_;
  std::vector<Int> set_;
  std::vector<std::vector<Int>> buckets_;
  std::vector<std::size_t> log_;
  std::vector<std::size_t> marks_;
  std::uint64_t work_ = 0;
};

// Any equation and mode: one oracle call restricted to solutions using x.
class OracleChecker final : public IncrementalChecker {
 public:
  OracleChecker(const Equation& eq, SolutionMode mode, std::vector<IndexPair> pairs, Int max_value)
      : query_{eq, {}, mode, std::move(pairs), kDefaultBudget}, max_value_(max_value) {
    query_.strategy = Strategy::PrunedDfs;
  }

  bool try_add(Int x) override {
    check_range(x, max_value_);
    auto& set = query_.ground_set;
    if (!set.empty() && x <= set.back()) throw PreconditionError("checker values must increase");
    set.push_back(x);
    SearchStats stats;
    const bool bad = find_solution_using(query_, x, &stats).has_value();
    work_ += std::max<std::uint64_t>(stats.nodes, 1);
    if (bad) set.pop_back();
    return !bad;
  }

  void pop() override {
    if (query_.ground_set.empty()) throw PreconditionError("pop on an empty checker");
    query_.ground_set.pop_back();
  }

  std::uint64_t work() const override { return work_; }

 private:
  SolutionQuery query_;
  Int max_value_;
  std::uint64_t work_ = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(IncrementalChecker& checker, Int top, std::size_t cap, const SearchConfig& cfg)
      : checker_(checker), top_(top), cap_(cap), cfg_(cfg) {}

  // Depth-first over sorted digit sets containing 0; smaller digits first.
  bool run() {
    if (!admit(0)) return true;
    current_.push_back(0);
    improve();
    const bool done = extend(1);
    checker_.pop();
    current_.pop_back();
    return done;
  }

  const std::vector<Int>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool admit(Int x) {
    const std::uint64_t before = checker_.work();
    const bool ok = checker_.try_add(x);
    nodes_ += std::max<std::uint64_t>(checker_.work() - before, 1);
    report();
    return ok;
  }

  void report() {
    if (cfg_.report_interval == 0 || !cfg_.on_progress) return;
    if (nodes_ < next_report_) return;
    next_report_ = nodes_ + cfg_.report_interval;
    cfg_.on_progress({best_.size(), nodes_, current_.size()});
  }

  void improve() {
    if (current_.size() <= best_.size()) return;
    best_ = current_;
    if (cfg_.on_progress) cfg_.on_progress({best_.size(), nodes_, current_.size()});
  }

  // Returns false when the budget stopped the search.
  bool extend(Int from) {
    for (Int x = from; x <= top_; ++x) {
      if (best_.size() >= cap_) return true;
      if (current_.size() + static_cast<std::size_t>(top_ - x + 1) <= best_.size()) return true;
      if (nodes_ >= cfg_.budget) return false;
      if (!admit(x)) continue;
      current_.push_back(x);
      improve();
      const bool done = extend(x + 1);
      checker_.pop();
      current_.pop_back();
      if (!done) return false;
    }
    return true;
  }

  IncrementalChecker& checker_;
  Int top_;
  std::size_t cap_;
  const SearchConfig& cfg_;
  std::vector<Int> current_;
  std::vector<Int> best_;
  std::uint64_t nodes_ = 0;
  std::uint64_t next_report_ = 0;
};

std::vector<Int> greedy_scan(IncrementalChecker& checker, Int from, Int to, std::uint64_t budget,
                             std::uint64_t& nodes, bool& complete) {
  std::vector<Int> kept;
  complete = true;
  for (Int x = from; x <= to; ++x) {
    if (nodes >= budget) {
      complete = false;
      break;
    }
    const std::uint64_t before = checker.work();
    if (checker.try_add(x)) kept.push_back(x);
    nodes += std::max<std::uint64_t>(checker.work() - before, 1);
  }
  return kept;
}

// floor(n^(1/k)) for the collision bound |D|^k <= s*M + 1.
std::size_t collision_cap(Int n, std::size_t k) {
  return static_cast<std::size_t>(integer_root(n, static_cast<unsigned>(k)));
}

}  // namespace

std::unique_ptr<IncrementalChecker> make_checker(const Equation& eq, SolutionMode mode, Int max_value,
                                                 std::vector<IndexPair> pairs) {
  if (max_value < 0) throw PreconditionError("checker needs max_value >= 0");
  if (eq.is_symmetric()) {
    const auto& gens = *eq.generators();
    if (mode == SolutionMode::NonTrivial && is_dissociated(gens))
      return std::make_unique<CollisionChecker>(gens, max_value);
    if (mode == SolutionMode::Distinct) return std::make_unique<DisjointChecker>(gens, max_value);
  }
  return std::make_unique<OracleChecker>(eq, mode, std::move(pairs), max_value);
}

DigitSearchResult max_digit_set(const Equation& eq, Int L, const SearchConfig& cfg) {
  if (L < 1) throw PreconditionError("max_digit_set needs L >= 1");
  if (cfg.budget < 1) throw PreconditionError("search budget must be at least 1");
  const Int top = (L - 1) / eq.side_sum();
  auto checker = make_checker(eq, cfg.solution_mode, top, cfg.pairs);

  std::size_t cap = static_cast<std::size_t>(top + 1);
  if (cfg.solution_mode == SolutionMode::NonTrivial && eq.is_symmetric() && is_dissociated(*eq.generators()))
    cap = std::min(cap, collision_cap(checked_add(checked_mul(eq.side_sum(), top), 1), eq.generators()->size()));

  DigitSearchResult result;
  if (cfg.mode == SearchMode::Greedy) {
    bool complete = true;
    result.digits = greedy_scan(*checker, 0, top, cfg.budget, result.nodes, complete);
    result.exhausted = false;
    return result;
  }

  // Exact and Anytime share the branch and bound; both report the best set
  // found when the budget runs out.
  BranchAndBound bb(*checker, top, cap, cfg);
  result.exhausted = bb.run();
  result.digits = bb.best();
  result.nodes = bb.nodes();
  return result;
}

GreedyResult greedy_set(const Equation& eq, Int N, std::uint64_t budget, SolutionMode mode) {
  if (N < 1) throw PreconditionError("greedy_set needs N >= 1");
  auto checker = make_checker(eq, mode, N);
  GreedyResult out;
  out.elements = greedy_scan(*checker, 1, N, budget, out.nodes, out.complete);
  return out;
}

std::optional<Dependency> small_dependency_search(Int a, Int b, Int c, Int M) {
  if (a < 1 || b < 1 || c < 1) throw PreconditionError("small_dependency_search needs positive a, b, c");
  if (M < 1) throw PreconditionError("small_dependency_search needs M >= 1");
  std::optional<Dependency> best;
  auto better = [](const Dependency& x, const Dependency& y) {
    const Int mx = x.magnitude(), my = y.magnitude();
    if (mx != my) return mx < my;
    return std::tie(x.i, x.j, x.k) < std::tie(y.i, y.j, y.k);
  };
  for (Int i = 0; i <= M; ++i)
    for (Int j = -M; j <= M; ++j) {
      const Wide rest = -(Wide{i} * a + Wide{j} * b);
      if (rest % c != 0) continue;
      const Wide k = rest / c;
      if (k < -M || k > M) continue;
      const Dependency d{i, j, static_cast<Int>(k)};
      if (d.i == 0 && d.j == 0 && d.k == 0) continue;
      const Int first = d.i != 0 ? d.i : (d.j != 0 ? d.j : d.k);
      if (first < 0) continue;
      if (std::gcd(std::gcd(abs_checked(d.i), abs_checked(d.j)), abs_checked(d.k)) != 1) continue;
      if (!best || better(d, *best)) best = d;
    }
  return best;
}

}  // namespace nosol
