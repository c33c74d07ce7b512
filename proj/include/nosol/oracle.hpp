#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nosol/equation.hpp"

namespace nosol {

/// Which satisfying assignments count as a violation.
enum class SolutionMode {
  /// Value-class non-trivial solutions (the unrestricted r(N) setting).
  NonTrivial,
  /// Solutions whose m values are pairwise distinct (the R(N) setting).
  Distinct,
  /// Solutions where at least one listed position pair takes different values.
  Paired,
};

enum class Strategy { Auto, PrunedDfs, MeetInMiddle, Naive };

using IndexPair = std::pair<std::size_t, std::size_t>;

struct SolutionQuery {
  Equation equation;
  /// Sorted ascending, no duplicates.
  std::vector<Int> ground_set;
  SolutionMode mode = SolutionMode::NonTrivial;
  /// Position pairs for SolutionMode::Paired.
  std::vector<IndexPair> pairs;
  std::uint64_t budget = kDefaultBudget;
  Strategy strategy = Strategy::Auto;
  /// Worker threads for the pruned DFS; the result does not depend on it.
  unsigned threads = 1;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  Strategy strategy = Strategy::Auto;
};

/// First violating assignment in depth-first order (variables ordered by
/// decreasing |coefficient|, values ascending), or nullopt when the whole
/// space was exhausted without one. Throws BudgetExhausted otherwise.
std::optional<SolutionClass> find_nontrivial_solution(const SolutionQuery& q,
                                                      SearchStats* stats = nullptr);

/// First violation (same order) among assignments that use `value` in at
/// least one position. Used by incremental digit-set searches.
std::optional<SolutionClass> find_solution_using(const SolutionQuery& q, Int value,
                                                 SearchStats* stats = nullptr);

/// Exact number of violating assignments (ordered tuples).
std::uint64_t count_nontrivial_solutions(const SolutionQuery& q, SearchStats* stats = nullptr);

/// Whether (i_1..i_k) -> sum i_j a_j is injective on [1,B]^k. Uses the
/// difference formulation: no nonzero d in [-(B-1),B-1]^k with sum d_j a_j = 0.
bool is_injective_map(std::span<const Int> a, Int B, std::uint64_t budget = kDefaultBudget);

/// Whether an assignment counts as a violation under the query's mode.
bool is_violation(const Equation& eq, std::span<const Int> x, SolutionMode mode,
                  std::span<const IndexPair> pairs);

const char* to_string(SolutionMode mode);
SolutionMode solution_mode_from_string(const std::string& name);

}  // namespace nosol
