#pragma once

// Exact m-decks: the occurrence count of every length-m word as a
// subsequence of a source string. The deck is the integer-valued form of the
// output distribution of the (m,n)-deletion channel; dividing by C(n,m)
// recovers the probabilities.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mdeck/core.hpp"

namespace mdeck {

// Largest supported m; a deck stores 2^m exact integers.
inline constexpr int kMaxDeckM = 24;

class Deck {
 public:
  // counts[index] is the count of the word whose big-endian numeral is
  // index (leftmost digit = highest bit). Validates the sum invariant
  // sum(counts) == C(n, m) and rejects negative entries.
  Deck(int m, std::uint64_t n, std::vector<ExactInt> counts);

  int m() const noexcept { return m_; }
  std::uint64_t n() const noexcept { return n_; }
  std::span<const ExactInt> counts() const noexcept { return counts_; }
  const ExactInt& count(std::uint32_t index) const { return counts_.at(index); }
  const ExactInt& count(const BitString& y) const;

  static std::uint32_t index_of(const BitString& y);
  static BitString word_of(std::uint32_t index, int m);

  friend bool operator==(const Deck&, const Deck&) = default;

 private:
  int m_;
  std::uint64_t n_;
  std::vector<ExactInt> counts_;
};

// Number of strictly increasing index tuples carrying x onto y.
// Standard prefix-table dynamic program, cost |x| * |y|.
ExactInt occurrence_count(const BitString& y, const BitString& x);

// The full m-deck in one sweep over x (cost n * 2^m, not 2^m separate DPs).
// Runs on u64 counts whenever every C(n, j), j <= m, fits; exact otherwise.
Deck compute_deck(const BitString& x, int m);

// The j-deck of the same string, via the two-stage channel identity
//   counts_j[y] * C(n-j, m-j) = sum_z counts_m[z] * occurrence_count(y, z).
// The division must be exact; a remainder means the deck is corrupted.
Deck marginalize(const Deck& d, int j);

// Exact channel output probabilities, indexed like the deck counts.
std::vector<ExactRational> deck_to_distribution(const Deck& d);

// Deck of the complemented and/or reversed source string, by permuting
// counts: deck(comp x)[y] = deck(x)[comp y], deck(rev x)[y] = deck(x)[rev y].
Deck transform_deck(const Deck& d, bool complement, bool reverse);

// Source-deck position feeding entry `index` of the transformed deck.
std::uint32_t transform_index(std::uint32_t index, int m, bool complement, bool reverse);

// 128-bit deterministic digest used to pre-filter collision candidates.
// Never a substitute for exact comparison.
struct Fingerprint {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  friend auto operator<=>(const Fingerprint&, const Fingerprint&) = default;
  std::string hex() const;
};

// Public fixed seed; searches may rerun with a different seed to check that
// the filter never decides anything.
inline constexpr std::uint64_t kFingerprintSeed = 0x6d6465636b2d3031ULL;

// MurmurHash3 x64 128 (64-bit-seed variant) over the canonical serialization
//   "DK01" | m (u32 LE) | n (u64 LE) | per count: byte length (u32 LE),
//   magnitude bytes little-endian with no leading zeros.
Fingerprint fingerprint(const Deck& d, std::uint64_t seed = kFingerprintSeed);

namespace detail {
// Raw-hash building blocks shared with the search module, which fingerprints
// u64 deck slices without materializing a Deck. Byte layout identical to
// fingerprint() above.
void serialize_deck_header(std::vector<std::uint8_t>& out, int m, std::uint64_t n);
void serialize_count(std::vector<std::uint8_t>& out, std::uint64_t count);
void serialize_count(std::vector<std::uint8_t>& out, const ExactInt& count);
Fingerprint murmur3_x64_128(const std::uint8_t* data, std::size_t len, std::uint64_t seed);
}  // namespace detail

// Text format, bit-exact round trip:
//   deck m=<m> n=<n>
//   <y as m binary digits> <count>     (2^m lines, index order)
void write_deck(std::ostream& os, const Deck& d);
Deck read_deck(std::istream& is);
Deck load_deck(const std::string& path);

}  // namespace mdeck
