#pragma once

// Single left-to-right sweep that counts every subsequence of length <= m at
// once. Shared by the deck module and the exhaustive search hot loop.
//
// Table layout: the count of a word w with |w| = j and big-endian value v
// lives at slot (1 << j) - 1 + v; total size (1 << (m+1)) - 1. Slot 0 is the
// empty word and must hold 1 before the sweep starts.
//
// Processing a digit d extends, for each length j, every count of a length
// j-1 prefix p into the word 2p+d. Lengths run downward so a digit is never
// consumed twice. Cost: n * (2^m - 1) additions.

#include <cstdint>

namespace mdeck::detail {

template <class Count>
void sweep_init(Count* table, int m) {
  const std::uint64_t size = (std::uint64_t{1} << (m + 1)) - 1;
  for (std::uint64_t i = 0; i < size; ++i) table[i] = 0;
  table[0] = 1;
}

template <class Count, class DigitAt>
void sweep_counts(std::uint64_t n, DigitAt digit_at, int m, Count* table) {
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t d = static_cast<std::uint64_t>(digit_at(i));
    for (int j = m; j >= 1; --j) {
      Count* level = table + ((std::uint64_t{1} << j) - 1) + d;
      const Count* prev = table + ((std::uint64_t{1} << (j - 1)) - 1);
      const std::uint64_t half = std::uint64_t{1} << (j - 1);
      for (std::uint64_t p = 0; p < half; ++p) level[2 * p] += prev[p];
    }
  }
}

// Convenience: the deck slice (counts of all length-m words) starts here.
inline std::uint64_t sweep_deck_offset(int m) { return (std::uint64_t{1} << m) - 1; }

}  // namespace mdeck::detail
