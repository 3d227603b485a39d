#pragma once

// Fixed-width packed strings for the exhaustive search: a string of length
// n <= 62 packs MSB-first into a u64 (leftmost digit at bit n-1), so numeric
// order on packed values equals lexicographic order on equal-length strings.

#include <array>
#include <bit>
#include <cstdint>

#include "mdeck/core.hpp"

namespace mdeck::packed {

inline constexpr int kMaxPackedLength = 62;

inline std::uint64_t ones_mask(int n) { return (std::uint64_t{1} << n) - 1; }

inline std::uint64_t pack(const BitString& x) {
  if (x.size() > kMaxPackedLength) throw ResourceError("string too long to pack");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < x.size(); ++i) v = (v << 1) | static_cast<std::uint64_t>(x[i]);
  return v;
}

inline BitString unpack(std::uint64_t v, int n) {
  BitString x;
  for (int i = n - 1; i >= 0; --i) x.push_back(static_cast<int>((v >> i) & 1));
  return x;
}

inline std::uint64_t complement_bits(std::uint64_t v, int n) { return v ^ ones_mask(n); }

namespace detail {
inline constexpr auto kByteReverse = [] {
  std::array<std::uint8_t, 256> table{};
  for (int b = 0; b < 256; ++b) {
    std::uint8_t r = 0;
    for (int i = 0; i < 8; ++i)
      if (b & (1 << i)) r |= static_cast<std::uint8_t>(1 << (7 - i));
    table[b] = r;
  }
  return table;
}();
}  // namespace detail

inline std::uint64_t reverse_bits(std::uint64_t v, int n) {
  if (n == 0) return 0;
  std::uint64_t r = 0;
  for (int byte = 0; byte < 8; ++byte)
    r = (r << 8) | detail::kByteReverse[(v >> (8 * byte)) & 0xff];
  return r >> (64 - n);
}

inline int weight(std::uint64_t v) { return std::popcount(v); }

// Occurrences of the subsequence "01": for each 1, the zeros to its left.
inline std::uint64_t pair01_count(std::uint64_t v, int n) {
  std::uint64_t zeros_seen = 0;
  std::uint64_t c = 0;
  for (int i = n - 1; i >= 0; --i) {
    if ((v >> i) & 1)
      c += zeros_seen;
    else
      ++zeros_seen;
  }
  return c;
}

// Minimum of the four symmetry images {x, comp x, rev x, comp rev x}.
inline std::uint64_t canonical_rep(std::uint64_t v, int n) {
  const std::uint64_t r = reverse_bits(v, n);
  const std::uint64_t m = ones_mask(n);
  std::uint64_t best = v;
  if (r < best) best = r;
  if ((v ^ m) < best) best = v ^ m;
  if ((r ^ m) < best) best = r ^ m;
  return best;
}

// Next same-weight value above v (Gosper's hack); v must be nonzero.
inline std::uint64_t next_same_weight(std::uint64_t v) {
  const std::uint64_t u = v & (~v + 1);
  const std::uint64_t s = v + u;
  return s | (((v ^ s) >> 2) / u);
}

// rank-th (0-based) length-n value of weight w in increasing numeric order.
// binom must provide exact u64 C(a, b) for a <= n.
template <class BinomTable>
std::uint64_t nth_of_weight(std::uint64_t rank, int n, int w, const BinomTable& binom) {
  std::uint64_t v = 0;
  int ones_left = w;
  for (int pos = n - 1; pos >= 0; --pos) {
    if (ones_left == 0) break;
    const std::uint64_t with_zero = binom(pos, ones_left);
    if (rank < with_zero) continue;  // place 0
    rank -= with_zero;
    v |= std::uint64_t{1} << pos;
    --ones_left;
  }
  return v;
}

}  // namespace mdeck::packed
