#pragma once

// Constructive inversion of the deck map at n = 2m-1: the number of ones k
// comes from the 1-deck marginal, and the k+1 zero-run lengths are read off
// the (k+1)-deck entries of the words with a single zero. Also provides a
// brute-force inverter used as a test oracle for small n.

#include <cstdint>
#include <vector>

#include "mdeck/deck.hpp"

namespace mdeck {

// Run decomposition recovered by the reconstruction: k ones separating the
// k+1 zero runs. `complemented` records that the deck was complement-
// normalized (k >= m on entry), in which case the caller flips the
// expansion back.
struct RunProfile {
  std::uint64_t ones = 0;                 // k
  std::vector<std::uint64_t> zero_runs;   // i^(0) .. i^(k)
  bool complemented = false;

  // zero^(i0) 1 zero^(i1) 1 ... 1 zero^(ik); exactly `ones` ones.
  BitString expand() const;
};

// Number of ones of the source string, exactly, via the 1-deck marginal.
std::uint64_t count_ones_from_deck(const Deck& d);

// Requires d.n == 2*d.m - 1 and d.m >= 3. Integrity failures (inexact
// marginal divisions, zero-run totals not summing to n-k) throw rather than
// return a guess.
RunProfile reconstruct_profile(const Deck& d);
BitString reconstruct_runs(const Deck& d);

// All strings of length d.n whose deck equals d, ascending. Enumeration
// guard: n <= 24 and m <= 12.
std::vector<BitString> invert_deck_bruteforce(const Deck& d);

}  // namespace mdeck
