#include "nosol/certificate.hpp"

#include <cmath>

namespace nosol {

long double Rate::value() const {
  if (count < 2 || base < 2) return 0.0L;
  return std::log(static_cast<long double>(count)) / std::log(static_cast<long double>(base));
}

bool operator<(const Rate& lhs, const Rate& rhs) {
  const long double l = std::log(static_cast<long double>(std::max<Int>(lhs.count, 1))) *
                        std::log(static_cast<long double>(rhs.base));
  const long double r = std::log(static_cast<long double>(std::max<Int>(rhs.count, 1))) *
                        std::log(static_cast<long double>(lhs.base));
  return l < r;
}

bool DigitSet::no_carry() const {
  if (base < 2 || digits.empty()) return false;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= base) return false;
    if (i > 0 && digits[i] <= digits[i - 1]) return false;
  }
  const Wide spread = Wide{digits.back()} - Wide{digits.front()};
  return Wide{side_sum()} * spread < Wide{base} && Wide{side_sum()} * Wide{digits.back()} < Wide{base};
}

namespace {

bool oracle_clean(const DigitSet& ds, SolutionMode mode, const std::vector<IndexPair>& pairs,
                  std::uint64_t budget, std::uint64_t& nodes) {
  SolutionQuery q{ds.equation, ds.digits, mode, {}, budget};
  if (mode == SolutionMode::Paired) q.pairs = pairs;
  SearchStats stats;
  const bool clean = !find_nontrivial_solution(q, &stats).has_value();
  nodes += stats.nodes;
  if (!clean || pairs.empty() || mode == SolutionMode::Paired) return clean;

  q.mode = SolutionMode::Paired;
  q.pairs = pairs;
  const bool paired_clean = !find_nontrivial_solution(q, &stats).has_value();
  nodes += stats.nodes;
  return paired_clean;
}

}  // namespace

Certificate certify(DigitSet ds, SolutionMode mode, std::vector<IndexPair> pairs, std::uint64_t budget) {
  if (!ds.no_carry())
    throw PreconditionError("digit set violates the no-carry condition side_sum * max(A_L) < L");
  Certificate cert;
  cert.mode = mode;
  cert.pairs = std::move(pairs);
  cert.verified = oracle_clean(ds, mode, cert.pairs, budget, cert.oracle_nodes);
  cert.method = cert.verified ? Verification::Oracle : Verification::None;
  cert.degenerate = ds.digits.size() < 2;
  cert.digit_set = std::move(ds);
  return cert;
}

bool verify_certificate(const Certificate& cert, SolutionMode mode, std::uint64_t budget) {
  if (cert.digit_set.digits.empty()) throw PreconditionError("certificate has an empty digit set");
  if (!cert.digit_set.no_carry()) return false;
  std::uint64_t nodes = 0;
  return oracle_clean(cert.digit_set, mode, cert.pairs, budget, nodes);
}

bool verify_certificate(const Certificate& cert, std::uint64_t budget) {
  return verify_certificate(cert, cert.mode, budget);
}

const char* to_string(Verification v) {
  switch (v) {
    case Verification::Oracle:
      return "oracle";
    case Verification::Analytic:
      return "analytic";
    case Verification::None:
      break;
  }
  return "none";
}

}  // namespace nosol
