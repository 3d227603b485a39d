#include "mdeck/bounds.hpp"

#include <cmath>

namespace mdeck {

namespace {

bool pigeonhole_holds(std::uint64_t n, int m) {
  const ExactInt lhs =
      boost::multiprecision::pow(binomial(n, static_cast<std::uint64_t>(m)) + 1,
                                 static_cast<unsigned>(1u << m));
  const ExactInt rhs = ExactInt(1) << n;
  return lhs >= rhs;
}

}  // namespace

std::optional<std::uint64_t> known_nm(int m) {
  static constexpr std::uint64_t table[] = {1, 3, 6, 11, 15, 29};
  if (m >= 1 && m <= 6) return table[m - 1];
  return std::nullopt;
}

std::uint64_t pigeonhole_max_n(int m) {
  if (m < 1) throw DomainError("pigeonhole bound requires m >= 1");
  if (m > 16) throw ResourceError("pigeonhole scan supported for m <= 16");

  // Failures are permanent once n >= m*2^m/ln2 + m: from there each step adds
  // at most 2^m * log2(1 + m/(n+1-m)) <= 1 bit to the left side while the
  // right side gains exactly one.
  const double kick_in_f = static_cast<double>(m) * std::pow(2.0, m) / std::log(2.0);
  const std::uint64_t kick_in = static_cast<std::uint64_t>(kick_in_f) + m + 2;

  std::uint64_t best = 0;
  bool seen_best = false;
  std::optional<std::uint64_t> first_failure;
  for (std::uint64_t n = static_cast<std::uint64_t>(m);; ++n) {
    const bool holds = pigeonhole_holds(n, m);
    if (holds) {
      if (first_failure)
        throw IntegrityError("pigeonhole inequality held again at n = " +
                             std::to_string(n) + " after failing at n = " +
                             std::to_string(*first_failure));
      best = n;
      seen_best = true;
    } else if (!first_failure) {
      first_failure = n;
    }
    if (first_failure && n >= kick_in) break;
  }
  if (!seen_best) throw IntegrityError("pigeonhole inequality never held");
  return best;
}

BoundReport bound_report(int m) {
  if (m < 1) throw DomainError("bound report requires m >= 1");
  BoundReport report;
  report.m = m;
  report.pigeonhole_upper = pigeonhole_max_n(m);
  if (m >= 3) report.linear_lower = 2 * static_cast<std::uint64_t>(m) - 1;
  report.known_n = known_nm(m);
  // Known witness pairs put N_7 < 54 and N_8 < 106.
  if (m == 7) report.collision_cap = 53;
  if (m == 8) report.collision_cap = 105;

  report.consistent = true;
  const std::uint64_t upper = report.pigeonhole_upper;
  if (report.known_n) {
    if (report.linear_lower && *report.linear_lower > *report.known_n)
      report.consistent = false;
    if (*report.known_n > upper) report.consistent = false;
  } else if (report.linear_lower) {
    const std::uint64_t cap = report.collision_cap.value_or(upper);
    if (*report.linear_lower > std::min(cap, upper)) report.consistent = false;
  }
  if (report.collision_cap && report.known_n &&
      *report.known_n > *report.collision_cap)
    report.consistent = false;
  return report;
}

}  // namespace mdeck
