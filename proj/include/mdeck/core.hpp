#pragma once

// Binary strings, run-length notation, and exact integer arithmetic.
//
// Everything downstream (decks, searches, bounds) counts index subsets, so
// all counts live in arbitrary-precision integers. Fixed-width fast paths
// elsewhere must prove their bounds against binomial() before running.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mdeck {

using ExactInt = boost::multiprecision::cpp_int;
using ExactRational = boost::multiprecision::cpp_rational;

// Malformed textual input (bad digit, bad token, empty input).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain (m > n, length mismatch, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data that parses but cannot come from any real string (inexact division,
// broken sum invariant). Always fatal, never downgraded to a warning.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Work refused up front because it would exceed a size or memory limit.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A finite sequence of binary digits. Comparison is lexicographic, which for
// equal lengths matches the numeric order of the big-endian packed value.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::vector<std::uint8_t> digits);

  // Parses "0110"; rejects anything outside {0,1}.
  static BitString from_text(std::string_view text);

  std::size_t size() const noexcept { return digits_.size(); }
  bool empty() const noexcept { return digits_.empty(); }
  int operator[](std::size_t i) const noexcept { return digits_[i]; }
  const std::vector<std::uint8_t>& digits() const noexcept { return digits_; }

  void push_back(int digit);
  std::size_t count_ones() const noexcept;
  BitString complemented() const;
  BitString reversed() const;
  std::string text() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// One maximal (or as-parsed) run: `count` copies of `digit`.
struct Run {
  std::uint64_t count = 0;
  int digit = 0;

  friend bool operator==(const Run&, const Run&) = default;
};

// Run-length form of a binary string, token syntax "<count>_<digit>".
// Input may repeat a digit across adjacent runs (the printed pairs do, across
// line breaks); the canonical form merges them.
class RunLengthString {
 public:
  RunLengthString() = default;
  explicit RunLengthString(std::vector<Run> runs);  // merges, validates

  static RunLengthString parse(std::string_view text);
  static RunLengthString of(const BitString& x);

  const std::vector<Run>& runs() const noexcept { return runs_; }
  std::uint64_t length() const noexcept;
  BitString expand() const;
  std::string text() const;

  friend bool operator==(const RunLengthString&, const RunLengthString&) = default;

 private:
  std::vector<Run> runs_;
};

// Guard for run-length expansion; a corrupt count must not turn into an
// allocation failure.
inline constexpr std::uint64_t kMaxExpandedLength = std::uint64_t{1} << 26;

// Autodetects the notation: any '_' selects run-length form, otherwise the
// text is a plain string over {0,1} returned verbatim.
BitString parse_rle(std::string_view text);

// Canonical maximal-run encoding; parse_rle(to_rle(x)) == x, to_rle("") == "".
std::string to_rle(const BitString& x);

// C(n, k), exactly; 0 when k > n.
ExactInt binomial(std::uint64_t n, std::uint64_t k);

// True iff C(n, j) fits in uint64 for every j <= m (the bound needed by the
// u64 deck sweeps, whose intermediates are all counts of words of length <= m).
bool binomials_fit_u64(std::uint64_t n, int m);

}  // namespace mdeck
