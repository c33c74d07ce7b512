#pragma once

#include <cstdint>
#include <string>

#include "nosol/certificate.hpp"

namespace nosol {

/// Root of alpha(1 + beta - alpha) = q (1 - alpha)(beta + alpha) in (0,1),
/// the balance point between the no-dependency and dependency constructions
/// for three generators with c = b^beta.
struct AlphaParams {
  double q = 0.499;
  double beta = 1.0;
  double alpha = 0.0;
  /// alpha / (beta + alpha)
  double rate = 0.0;
  /// |alpha(1+beta-alpha) - q(1-alpha)(beta+alpha)|
  double residual = 0.0;
};

AlphaParams alpha_optimal(double beta, double q = 0.499);

/// Thresholds C_eps for the random-coefficient result. epsilon above 1/k is
/// clamped to 1/k before evaluating.
struct EpsilonThresholds {
  int k = 2;
  double epsilon = 0.0;  // after clamping
  bool clamped = false;
  double log_counting = 0.0;    // log((2^k/eps)^(1/(eps k)))
  double log_density = 0.0;  // log((k 2^k/eps)^(1/(eps k)))
  double counting() const;
  double density() const;
};

EpsilonThresholds c_epsilon(int k, double epsilon);

struct Sampling {
  enum class Kind { Exhaustive, MonteCarlo };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static Sampling exhaustive() { return {}; }
  static Sampling monte_carlo(std::uint64_t n, std::uint64_t seed) { return {Kind::MonteCarlo, n, seed}; }
};

/// Count of coefficient tuples in [1,C]^k whose map (i_j) -> sum i_j a_j is
/// not injective on [1,B]^k, B = floor(C^(1/k - eps)).
struct SweepReport {
  int k = 2;
  Int C = 1;
  double epsilon = 0.0;
  Int B = 1;
  Sampling sampling;
  std::string rng = "mt19937_64";
  std::uint64_t total = 0;  // tuples examined
  std::uint64_t bad = 0;    // non-injective among them
  /// Exhaustive: bad. Monte Carlo: bad/total * C^k.
  double bad_estimate = 0.0;
  double std_error = 0.0;
  /// 2^k C^(k - eps k)
  double counting_bound = 0.0;
  bool bound_ok = false;        // bad_estimate <= counting_bound
  bool within_epsilon = false;  // bad_estimate <= eps C^k
};

SweepReport random_tuple_sweep(int k, Int C, double epsilon, Sampling sampling,
                               std::uint64_t budget = kDefaultBudget);

/// floor(C^(1/k - eps)) computed without floating round-off at integer points.
Int sweep_range(Int C, int k, double epsilon);

struct RateReport {
  double rate = 0.0;
  double analytic_bound = 0.0;
  std::string bound_label;
  /// "tight" when the rate meets the bound exactly, "exceeds" above it, "below" otherwise.
  std::string binding;
};

RateReport rate_report(const Certificate& cert);

}  // namespace nosol
