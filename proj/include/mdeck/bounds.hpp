#pragma once

// Pigeonhole upper bound on N_m and the linear lower bound, decided in exact
// integer arithmetic: R(m,n) requires (C(n,m) + 1)^(2^m) >= 2^n, because each
// of the 2^n distributions is pinned down by 2^m probabilities that are each
// one of C(n,m)+1 multiples of 1/C(n,m).

#include <cstdint>
#include <optional>

#include "mdeck/core.hpp"

namespace mdeck {

struct BoundReport {
  int m = 0;
  std::uint64_t pigeonhole_upper = 0;
  std::optional<std::uint64_t> linear_lower;   // 2m-1, defined for m >= 3
  std::optional<std::uint64_t> known_n;        // exact N_m where established
  std::optional<std::uint64_t> collision_cap;  // N_m <= cap from a known pair
  bool consistent = true;  // lower <= known <= upper wherever defined
};

// Exact N_m values where known (m <= 6).
std::optional<std::uint64_t> known_nm(int m);

// Largest n >= m satisfying the pigeonhole inequality. The scan proceeds
// past the first failure until failures are provably permanent (the left
// side's growth per unit n falls below one bit), and asserts on the way that
// no later n holds again.
std::uint64_t pigeonhole_max_n(int m);

BoundReport bound_report(int m);

}  // namespace mdeck
