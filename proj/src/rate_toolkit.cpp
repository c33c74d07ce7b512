#include "nosol/rate_toolkit.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "nosol/oracle.hpp"

namespace nosol {
namespace {

long double quadratic_residual(long double alpha, long double beta, long double q) {
  return alpha * (1 + beta - alpha) - q * (1 - alpha) * (beta + alpha);
}

// Uniform integer in [1, C] by rejection, identical on every platform.
Int draw(std::mt19937_64& rng, Int C) {
  const std::uint64_t range = static_cast<std::uint64_t>(C);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t u = rng();
    if (u < limit) return static_cast<Int>(u % range) + 1;
  }
}

std::uint64_t exhaustive_bad(int k, Int C, Int B, unsigned threads) {
  std::vector<std::uint64_t> bad(threads, 0);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&](unsigned w) {
    try {
      std::vector<Int> a(static_cast<std::size_t>(k), 1);
      // Thread w owns the leading coefficients congruent to w + 1 modulo threads.
      for (Int lead = 1 + w; lead <= C; lead += threads) {
        a[0] = lead;
        std::fill(a.begin() + 1, a.end(), Int{1});
        for (;;) {
          if (!is_injective_map(a, B)) ++bad[w];
          std::size_t t = 1;
          while (t < a.size() && ++a[t] > C) a[t++] = 1;
          if (t == a.size()) break;
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
    worker(0);
  }
  if (error) std::rethrow_exception(error);
  std::uint64_t total = 0;
  for (auto b : bad) total += b;
  return total;
}

}  // namespace

AlphaParams alpha_optimal(double beta, double q) {
  if (!(beta >= 0.0)) throw PreconditionError("alpha_optimal needs beta >= 0");
  if (!(q > 0.0 && q < 1.0)) throw PreconditionError("alpha_optimal needs q in (0, 1)");
  const long double b = beta, Q = q;
  const long double disc = 4 * (Q - 1) * Q * b + (1 + Q * (b - 1) + b) * (1 + Q * (b - 1) + b);
  if (disc < 0) throw std::domain_error("alpha_optimal: negative discriminant");
  long double alpha = (-1 + Q - b - Q * b + std::sqrt(disc)) / (2 * (Q - 1));
  // Newton polish on the quadratic.
  for (int it = 0; it < 4; ++it) {
    const long double f = quadratic_residual(alpha, b, Q);
    const long double df = 1 + b - 2 * alpha - Q * (1 - alpha) + Q * (b + alpha);
    if (df == 0) break;
    alpha -= f / df;
  }
  if (!(alpha > 0 && alpha < 1)) throw std::domain_error("alpha_optimal: root outside (0, 1)");
  AlphaParams p;
  p.q = q;
  p.beta = beta;
  p.alpha = static_cast<double>(alpha);
  p.rate = static_cast<double>(alpha / (b + alpha));
  p.residual = static_cast<double>(std::fabs(quadratic_residual(p.alpha, b, Q)));
  return p;
}

double EpsilonThresholds::counting() const { return std::exp(log_counting); }
double EpsilonThresholds::density() const { return std::exp(log_density); }

EpsilonThresholds c_epsilon(int k, double epsilon) {
  if (k < 2) throw PreconditionError("c_epsilon needs k >= 2");
  if (!(epsilon > 0.0)) throw PreconditionError("c_epsilon needs epsilon > 0");
  EpsilonThresholds t;
  t.k = k;
  t.clamped = epsilon > 1.0 / k;
  t.epsilon = t.clamped ? 1.0 / k : epsilon;
  const double power = 1.0 / (t.epsilon * k);
  const double two_k = std::ldexp(1.0, k);
  t.log_counting = power * std::log(two_k / t.epsilon);
  t.log_density = power * std::log(k * two_k / t.epsilon);
  return t;
}

Int sweep_range(Int C, int k, double epsilon) {
  if (C < 1) throw PreconditionError("sweep_range needs C >= 1");
  if (k < 2) throw PreconditionError("sweep_range needs k >= 2");
  if (!(epsilon > 0.0) || epsilon > 1.0 / k) throw PreconditionError("sweep_range needs 0 < epsilon <= 1/k");
  const long double e = 1.0L / k - epsilon;
  const long double target = e * std::log(static_cast<long double>(C));
  Int B = static_cast<Int>(std::floor(std::exp(target)));
  auto fits = [&](Int v) { return std::log(static_cast<long double>(v)) <= target + 1e-12L; };
  while (B > 1 && !fits(B)) --B;
  while (fits(B + 1)) ++B;
  return std::max<Int>(B, 1);
}

SweepReport random_tuple_sweep(int k, Int C, double epsilon, Sampling sampling, std::uint64_t budget) {
  SweepReport r;
  r.k = k;
  r.C = C;
  r.epsilon = epsilon;
  r.B = sweep_range(C, k, epsilon);
  r.sampling = sampling;
  const long double ck = std::pow(static_cast<long double>(C), static_cast<long double>(k));
  r.counting_bound = static_cast<double>(std::ldexp(1.0L, k) *
                                         std::pow(static_cast<long double>(C), k - epsilon * k));

  if (sampling.kind == Sampling::Kind::Exhaustive) {
    const long double work = ck * std::pow(static_cast<long double>(2 * r.B - 1), static_cast<long double>(k));
    if (work > static_cast<long double>(budget))
      throw BudgetExhausted(static_cast<std::uint64_t>(std::min(work, 1.8e19L)), budget);
    const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                              static_cast<unsigned>(std::min<Int>(C, 64))));
    r.total = static_cast<std::uint64_t>(ck);
    r.bad = exhaustive_bad(k, C, r.B, threads);
    r.bad_estimate = static_cast<double>(r.bad);
  } else {
    if (sampling.samples == 0) throw PreconditionError("Monte Carlo sweep needs at least one sample");
    std::mt19937_64 rng(sampling.seed);
    std::vector<Int> a(static_cast<std::size_t>(k));
    for (std::uint64_t n = 0; n < sampling.samples; ++n) {
      for (Int& v : a) v = draw(rng, C);
      if (!is_injective_map(a, r.B)) ++r.bad;
    }
    r.total = sampling.samples;
    const long double p = static_cast<long double>(r.bad) / r.total;
    r.bad_estimate = static_cast<double>(p * ck);
    r.std_error = static_cast<double>(ck * std::sqrt(p * (1 - p) / r.total));
  }
  r.bound_ok = r.bad_estimate <= r.counting_bound;
  r.within_epsilon = r.bad_estimate <= static_cast<double>(epsilon * ck);
  return r;
}

RateReport rate_report(const Certificate& cert) {
  if (!cert.verified) throw PreconditionError("rate_report needs a verified certificate");
  RateReport r;
  r.rate = static_cast<double>(cert.rate().value());
  r.analytic_bound = cert.analytic_bound;
  r.bound_label = cert.bound_label;
  const double gap = r.rate - r.analytic_bound;
  r.binding = std::fabs(gap) <= 1e-12 ? "tight" : (gap > 0 ? "exceeds" : "below");
  return r;
}

}  // namespace nosol
