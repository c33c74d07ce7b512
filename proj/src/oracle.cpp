#include "nosol/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace nosol {
namespace {

constexpr std::uint64_t kMitmTableLimit = std::uint64_t{1} << 25;
constexpr std::uint64_t kFlushEvery = 1024;

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

void validate(const SolutionQuery& q) {
  const auto& g = q.ground_set;
  if (g.empty()) throw PreconditionError("ground set must be nonempty");
  for (std::size_t i = 1; i < g.size(); ++i)
    if (g[i] <= g[i - 1]) throw PreconditionError("ground set must be sorted ascending without duplicates");
  if (q.budget < 1) throw PreconditionError("budget must be at least 1");
  if (q.mode == SolutionMode::Paired) {
    if (q.pairs.empty()) throw PreconditionError("paired mode needs at least one position pair");
    for (auto [a, b] : q.pairs)
      if (a >= q.equation.size() || b >= q.equation.size() || a == b)
        throw PreconditionError("position pair out of range");
  }
  // Every partial sum stays below 2^62 in magnitude.
  Wide total = 0;
  const Wide peak = std::max<Wide>(g.front() < 0 ? -Wide{g.front()} : Wide{g.front()},
                                    g.back() < 0 ? -Wide{g.back()} : Wide{g.back()});
  for (Int c : q.equation.coeffs()) total += (c < 0 ? -Wide{c} : Wide{c}) * peak;
  if (total >= (Wide{1} << 62)) throw OverflowError("|coefficients| x max|element| exceeds the exact-arithmetic guard");
}

struct Plan {
  std::vector<std::size_t> order;
  std::vector<Int> coeff;
  std::vector<Int> lo;  // lo[d]: smallest achievable sum over depths d..m-1
  std::vector<Int> hi;
};

Plan make_plan(const Equation& eq, std::span<const Int> set) {
  const std::size_t m = eq.size();
  Plan p;
  p.order.resize(m);
  std::iota(p.order.begin(), p.order.end(), std::size_t{0});
  std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) {
    return abs_checked(eq.coeff(a)) > abs_checked(eq.coeff(b));
  });
  p.coeff.resize(m);
  for (std::size_t d = 0; d < m; ++d) p.coeff[d] = eq.coeff(p.order[d]);
  p.lo.assign(m + 1, 0);
  p.hi.assign(m + 1, 0);
  for (std::size_t d = m; d-- > 0;) {
    const Int a = p.coeff[d] * set.front(), b = p.coeff[d] * set.back();
    p.lo[d] = p.lo[d + 1] + std::min(a, b);
    p.hi[d] = p.hi[d + 1] + std::max(a, b);
  }
  return p;
}

bool mode_accepts(std::span<const Int> coeffs, std::span<const Int> x, SolutionMode mode,
                  std::span<const IndexPair> pairs) {
  switch (mode) {
    case SolutionMode::NonTrivial:
      return !is_trivial_assignment(coeffs, x);
    case SolutionMode::Distinct:
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
          if (x[i] == x[j]) return false;
      return true;
    case SolutionMode::Paired:
      for (auto [a, b] : pairs)
        if (x[a] != x[b]) return true;
      return false;
  }
  return false;
}

// Shared node accounting across workers.
class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}

  void add(std::uint64_t n) {
    const std::uint64_t total = total_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > budget_) throw BudgetExhausted(total, budget_);
  }
  std::uint64_t total() const { return total_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> total_{0};
};

// Depth-first enumeration with interval pruning. Each depth only visits the
// values whose contribution keeps the remaining target inside the range the
// deeper variables can still reach; the last variable is solved directly.
class Dfs {
 public:
  Dfs(const SolutionQuery& q, const Plan& plan, NodeCounter& counter, std::optional<Int> required)
      : q_(q), plan_(plan), counter_(counter), required_(required),
        m_(q.equation.size()), values_(m_), x_(m_) {}

  // Index range of ground-set values admissible at depth d with partial sum.
  std::pair<std::size_t, std::size_t> admissible(std::size_t d, Int partial) const {
    const Int c = plan_.coeff[d];
    const Int lo_t = -partial - plan_.hi[d + 1];
    const Int hi_t = -partial - plan_.lo[d + 1];
    Int vlo, vhi;
    if (c > 0) {
      vlo = ceil_div(lo_t, c);
      vhi = floor_div(hi_t, c);
    } else {
      vlo = ceil_div(hi_t, c);
      vhi = floor_div(lo_t, c);
    }
    const auto& g = q_.ground_set;
    if (vlo > vhi) return {0, 0};
    const auto b = std::lower_bound(g.begin(), g.end(), vlo);
    const auto e = std::upper_bound(b, g.end(), vhi);
    return {static_cast<std::size_t>(b - g.begin()), static_cast<std::size_t>(e - g.begin())};
  }

  // Runs the subtree where depth 0 takes ground_set[first]. Returns true when
  // the visitor asked to stop.
  template <class Visit>
  bool run_branch(std::size_t first, Visit&& visit, const std::atomic<bool>* cancel) {
    cancel_ = cancel;
    const Int v = q_.ground_set[first];
    tick();
    if (m_ == 1) return false;
    values_[0] = v;
    bool stop = descend(1, plan_.coeff[0] * v, visit);
    flush();
    return stop;
  }

  void flush() {
    if (pending_) counter_.add(pending_);
    pending_ = 0;
  }

 private:
  void tick() {
    if (++pending_ >= kFlushEvery) {
      flush();
      if (cancel_ && cancel_->load(std::memory_order_relaxed)) throw Cancelled{};
    }
  }

 public:
  struct Cancelled {};

 private:
  bool used(std::size_t d, Int v) const {
    for (std::size_t i = 0; i < d; ++i)
      if (values_[i] == v) return true;
    return false;
  }

  template <class Visit>
  bool leaf(Visit& visit) {
    for (std::size_t d = 0; d < m_; ++d) x_[plan_.order[d]] = values_[d];
    if (required_ && std::find(x_.begin(), x_.end(), *required_) == x_.end()) return false;
    if (!mode_accepts(q_.equation.coeffs(), x_, q_.mode, q_.pairs)) return false;
    return visit(std::span<const Int>(x_));
  }

  template <class Visit>
  bool descend(std::size_t d, Int partial, Visit& visit) {
    const bool distinct = q_.mode == SolutionMode::Distinct;
    if (d + 1 == m_) {
      const Int c = plan_.coeff[d];
      if (partial % c != 0) return false;
      const Int v = -partial / c;
      if (!std::binary_search(q_.ground_set.begin(), q_.ground_set.end(), v)) return false;
      if (distinct && used(d, v)) return false;
      tick();
      values_[d] = v;
      return leaf(visit);
    }
    auto [b, e] = admissible(d, partial);
    for (std::size_t i = b; i < e; ++i) {
      const Int v = q_.ground_set[i];
      if (distinct && used(d, v)) continue;
      tick();
      values_[d] = v;
      if (descend(d + 1, partial + plan_.coeff[d] * v, visit)) return true;
    }
    return false;
  }

  const SolutionQuery& q_;
  const Plan& plan_;
  NodeCounter& counter_;
  std::optional<Int> required_;
  std::size_t m_;
  std::vector<Int> values_;
  std::vector<Int> x_;
  std::uint64_t pending_ = 0;
  const std::atomic<bool>* cancel_ = nullptr;
};

// Serial or parallel driver over the top-level branches. Branch results are
// merged in branch order, so the reported first solution is the one the
// serial enumeration would find.
struct DfsOutcome {
  std::optional<std::vector<Int>> first;
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
};

DfsOutcome run_dfs(const SolutionQuery& q, bool stop_at_first, std::optional<Int> required) {
  const Plan plan = make_plan(q.equation, q.ground_set);
  NodeCounter counter(q.budget);
  DfsOutcome out;

  // Depth-0 admissible range.
  Dfs probe(q, plan, counter, required);
  const auto [b, e] = q.equation.size() == 1 ? std::pair<std::size_t, std::size_t>{0, 0}
                                             : probe.admissible(0, 0);
  const std::size_t branches = e - b;

  auto run_one = [&](std::size_t branch, const std::atomic<bool>* cancel,
                     std::optional<std::vector<Int>>& found, std::uint64_t& count) {
    Dfs dfs(q, plan, counter, required);
    dfs.run_branch(b + branch,
                   [&](std::span<const Int> x) {
                     if (stop_at_first) {
                       found.emplace(x.begin(), x.end());
                       return true;
                     }
                     ++count;
                     return false;
                   },
                   cancel);
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(q.threads, static_cast<unsigned>(branches)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < branches; ++i) {
      std::optional<std::vector<Int>> found;
      run_one(i, nullptr, found, out.count);
      if (found) {
        out.first = std::move(found);
        break;
      }
    }
    out.nodes = counter.total();
    return out;
  }

  std::vector<std::optional<std::vector<Int>>> found(branches);
  std::vector<std::uint64_t> counts(branches, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> lowest_hit{branches};
  std::vector<std::atomic<bool>> cancel(branches);
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= branches) return;
      if (i > lowest_hit.load()) continue;
      try {
        run_one(i, &cancel[i], found[i], counts[i]);
      } catch (const Dfs::Cancelled&) {
        continue;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        for (auto& c : cancel) c.store(true);
        return;
      }
      if (found[i]) {
        std::size_t cur = lowest_hit.load();
        while (i < cur && !lowest_hit.compare_exchange_weak(cur, i)) {
        }
        for (std::size_t j = i + 1; j < branches; ++j) cancel[j].store(true);
      }
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);

  for (std::size_t i = 0; i < branches; ++i) {
    if (stop_at_first && found[i]) {
      out.first = std::move(found[i]);
      break;
    }
    out.count += counts[i];
  }
  out.nodes = counter.total();
  return out;
}

// Meet in the middle over the plan's variable order. The left half is scanned
// in lexicographic order and matching right halves in lexicographic order, so
// the first accepted assignment coincides with the depth-first one.
DfsOutcome run_mitm(const SolutionQuery& q, bool stop_at_first) {
  const Plan plan = make_plan(q.equation, q.ground_set);
  const std::size_t m = q.equation.size();
  const std::size_t h = (m + 1) / 2;
  const std::uint64_t n = q.ground_set.size();
  auto power = [&](std::size_t e) {
    Wide r = 1;
    for (std::size_t i = 0; i < e; ++i) {
      r *= n;
      if (r > Wide{kMitmTableLimit}) return kMitmTableLimit + 1;
    }
    return static_cast<std::uint64_t>(r);
  };
  const std::uint64_t left_size = power(h), right_size = power(m - h);
  if (left_size > kMitmTableLimit || right_size > kMitmTableLimit)
    throw PreconditionError("meet-in-the-middle table too large for this instance");

  NodeCounter counter(q.budget);
  counter.add(left_size + right_size);

  auto sums_for = [&](std::size_t from, std::size_t to, std::uint64_t size) {
    std::vector<Int> sums(size);
    std::vector<std::size_t> idx(to - from, 0);
    for (std::uint64_t code = 0; code < size; ++code) {
      Int s = 0;
      for (std::size_t t = from; t < to; ++t) s += plan.coeff[t] * q.ground_set[idx[t - from]];
      sums[code] = s;
      for (std::size_t t = to - from; t-- > 0;) {
        if (++idx[t] < n) break;
        idx[t] = 0;
      }
    }
    return sums;
  };
  const std::vector<Int> left = sums_for(0, h, left_size);
  const std::vector<Int> right_sums = sums_for(h, m, right_size);
  std::vector<std::pair<Int, std::uint64_t>> right(right_size);
  for (std::uint64_t code = 0; code < right_size; ++code) right[code] = {right_sums[code], code};
  std::sort(right.begin(), right.end());

  DfsOutcome out;
  std::vector<Int> x(m);
  auto decode = [&](std::uint64_t code, std::size_t from, std::size_t to) {
    for (std::size_t t = to; t-- > from;) {
      x[plan.order[t]] = q.ground_set[code % n];
      code /= n;
    }
  };
  std::uint64_t pending = 0;
  for (std::uint64_t lcode = 0; lcode < left_size; ++lcode) {
    const Int target = -left[lcode];
    auto it = std::lower_bound(right.begin(), right.end(), std::pair<Int, std::uint64_t>{target, 0});
    if (it == right.end() || it->first != target) continue;
    decode(lcode, 0, h);
    for (; it != right.end() && it->first == target; ++it) {
      if (++pending >= kFlushEvery) {
        counter.add(pending);
        pending = 0;
      }
      decode(it->second, h, m);
      if (!mode_accepts(q.equation.coeffs(), x, q.mode, q.pairs)) continue;
      if (stop_at_first) {
        out.first = x;
        counter.add(pending);
        out.nodes = counter.total();
        return out;
      }
      ++out.count;
    }
  }
  counter.add(pending);
  out.nodes = counter.total();
  return out;
}

// Plain odometer over every assignment; the reference path for tests.
DfsOutcome run_naive(const SolutionQuery& q, bool stop_at_first) {
  const Plan plan = make_plan(q.equation, q.ground_set);
  const std::size_t m = q.equation.size();
  const std::size_t n = q.ground_set.size();
  NodeCounter counter(q.budget);
  DfsOutcome out;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Int> x(m);
  std::uint64_t pending = 0;
  for (;;) {
    if (++pending >= kFlushEvery) {
      counter.add(pending);
      pending = 0;
    }
    Int s = 0;
    for (std::size_t d = 0; d < m; ++d) {
      x[plan.order[d]] = q.ground_set[idx[d]];
      s += plan.coeff[d] * q.ground_set[idx[d]];
    }
    if (s == 0 && mode_accepts(q.equation.coeffs(), x, q.mode, q.pairs)) {
      if (stop_at_first) {
        out.first = x;
        break;
      }
      ++out.count;
    }
    std::size_t d = m;
    while (d-- > 0) {
      if (++idx[d] < n) break;
      idx[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  counter.add(pending);
  out.nodes = counter.total();
  return out;
}

Strategy resolve(const SolutionQuery& q) {
  if (q.strategy != Strategy::Auto) return q.strategy;
  const std::size_t m = q.equation.size();
  if (m < 6) return Strategy::PrunedDfs;
  Wide table = 1;
  for (std::size_t i = 0; i < (m + 1) / 2; ++i) {
    table *= static_cast<Wide>(q.ground_set.size());
    if (table > Wide{kMitmTableLimit}) return Strategy::PrunedDfs;
  }
  return table <= Wide{q.budget} ? Strategy::MeetInMiddle : Strategy::PrunedDfs;
}

DfsOutcome dispatch(const SolutionQuery& q, bool stop_at_first, SearchStats* stats) {
  validate(q);
  const Strategy s = resolve(q);
  DfsOutcome out;
  switch (s) {
    case Strategy::MeetInMiddle:
      out = run_mitm(q, stop_at_first);
      break;
    case Strategy::Naive:
      out = run_naive(q, stop_at_first);
      break;
    default:
      out = run_dfs(q, stop_at_first, std::nullopt);
      break;
  }
  if (stats) {
    stats->nodes = out.nodes;
    stats->strategy = s;
  }
  return out;
}

}  // namespace

bool is_violation(const Equation& eq, std::span<const Int> x, SolutionMode mode,
                  std::span<const IndexPair> pairs) {
  if (evaluate(eq, x) != 0) return false;
  return mode_accepts(eq.coeffs(), x, mode, pairs);
}

std::optional<SolutionClass> find_nontrivial_solution(const SolutionQuery& q, SearchStats* stats) {
  auto out = dispatch(q, true, stats);
  if (!out.first) return std::nullopt;
  return SolutionClass{std::move(*out.first), SolutionKind::NonTrivial};
}

std::optional<SolutionClass> find_solution_using(const SolutionQuery& q, Int value, SearchStats* stats) {
  validate(q);
  auto out = run_dfs(q, true, value);
  if (stats) {
    stats->nodes = out.nodes;
    stats->strategy = Strategy::PrunedDfs;
  }
  if (!out.first) return std::nullopt;
  return SolutionClass{std::move(*out.first), SolutionKind::NonTrivial};
}

std::uint64_t count_nontrivial_solutions(const SolutionQuery& q, SearchStats* stats) {
  return dispatch(q, false, stats).count;
}

bool is_injective_map(std::span<const Int> a, Int B, std::uint64_t budget) {
  if (a.size() < 2) throw PreconditionError("is_injective_map needs at least two coefficients");
  if (B < 1) throw PreconditionError("is_injective_map needs B >= 1");
  for (Int v : a)
    if (v < 1) throw PreconditionError("is_injective_map needs positive coefficients");
  if (B == 1) return true;
  const Int r = B - 1;
  const std::size_t k = a.size();

  std::vector<Int> c(a.begin(), a.end());
  std::sort(c.begin(), c.end(), std::greater<>());
  std::vector<Int> reach(k + 1, 0);  // max |sum| of depths d..k-1
  for (std::size_t d = k; d-- > 0;) reach[d] = checked_add(reach[d + 1], checked_mul(c[d], r));

  NodeCounter counter(budget);
  std::uint64_t pending = 0;
  // The relation set is closed under negation, so the first nonzero
  // difference is taken positive.
  auto search = [&](auto& self, std::size_t d, Int partial, bool nonzero) -> bool {
    if (d + 1 == k) {
      if (partial % c[d] != 0) return false;
      const Int v = -partial / c[d];
      if (v < -r || v > r) return false;
      if (!nonzero && v <= 0) return false;
      return true;
    }
    const Int lo_v = nonzero ? -r : 0;
    // Keep -partial - c*v within [-reach, reach].
    const Int vmin = std::max(lo_v, ceil_div(-partial - reach[d + 1], c[d]));
    const Int vmax = std::min(r, floor_div(-partial + reach[d + 1], c[d]));
    for (Int v = vmin; v <= vmax; ++v) {
      if (++pending >= kFlushEvery) {
        counter.add(pending);
        pending = 0;
      }
      if (self(self, d + 1, partial + c[d] * v, nonzero || v != 0)) return true;
    }
    return false;
  };
  const bool collision = search(search, 0, 0, false);
  counter.add(pending);
  return !collision;
}

const char* to_string(SolutionMode mode) {
  switch (mode) {
    case SolutionMode::NonTrivial:
      return "all";
    case SolutionMode::Distinct:
      return "distinct";
    case SolutionMode::Paired:
      return "paired";
  }
  return "all";
}

SolutionMode solution_mode_from_string(const std::string& name) {
  if (name == "all") return SolutionMode::NonTrivial;
  if (name == "distinct") return SolutionMode::Distinct;
  if (name == "paired") return SolutionMode::Paired;
  throw PreconditionError("unknown solution mode '" + name + "'");
}

}  // namespace nosol
