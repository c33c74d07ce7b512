#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nosol/constructions.hpp"
#include "nosol/oracle.hpp"

namespace nosol {

enum class SearchMode { Exact, Greedy, Anytime };

struct SearchProgress {
  std::size_t best_size = 0;
  std::uint64_t nodes = 0;
  std::size_t depth = 0;
};

struct SearchConfig {
  std::uint64_t budget = kDefaultBudget;
  SearchMode mode = SearchMode::Exact;
  SolutionMode solution_mode = SolutionMode::NonTrivial;
  /// Position pairs for SolutionMode::Paired.
  std::vector<IndexPair> pairs;
  std::uint64_t report_interval = 0;  // 0 disables progress callbacks
  std::function<void(const SearchProgress&)> on_progress;
};

struct DigitSearchResult {
  std::vector<Int> digits;
  bool exhausted = false;
  std::uint64_t nodes = 0;
};

/// Largest subset of {0..floor((L-1)/s)} free of violations (Exact), the
/// greedy pass (Greedy), or the best found within budget (Anytime). The
/// reported set is the lexicographically smallest one of its size among those
/// visited; the search is translation-normalized to contain 0.
DigitSearchResult max_digit_set(const Equation& eq, Int L, const SearchConfig& cfg);

struct GreedyResult {
  std::vector<Int> elements;
  bool complete = true;  // false when the budget cut the scan short
  std::uint64_t nodes = 0;
};

/// Scan 1..N and keep x whenever the kept set plus x stays violation-free.
GreedyResult greedy_set(const Equation& eq, Int N, std::uint64_t budget = kDefaultBudget,
                        SolutionMode mode = SolutionMode::NonTrivial);

/// Smallest (max magnitude, then lexicographic) primitive relation
/// i a + j b + k c = 0 with all |coords| <= M.
std::optional<Dependency> small_dependency_search(Int a, Int b, Int c, Int M);

/// Incremental legality test: add digits one by one, undo in LIFO order.
class IncrementalChecker {
 public:
  virtual ~IncrementalChecker() = default;
  /// Adds x (larger than all current members) if no violation uses it.
  virtual bool try_add(Int x) = 0;
  virtual void pop() = 0;
  virtual std::uint64_t work() const = 0;
};

/// Sum-table checker for symmetric equations, generic oracle checker otherwise.
std::unique_ptr<IncrementalChecker> make_checker(const Equation& eq, SolutionMode mode, Int max_value,
                                                 std::vector<IndexPair> pairs = {});

}  // namespace nosol
