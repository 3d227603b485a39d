#pragma once

// Distinguishability over the (m,n)-deletion channel: R(m,n) holds when no
// two distinct length-n strings share an m-deck. This module decides R(m,n)
// by exhaustive search with symmetry reduction, derives the largest n for
// which it holds, verifies witness pairs, and hunts for new collisions by
// splicing known ones.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdeck/deck.hpp"

namespace mdeck {

enum class PartitionScheme {
  ByWeight,              // one partition per digit-weight pair {w, n-w}
  ByWeightAndPairCounts  // further split by the "01" subsequence count
};

struct SearchConfig {
  unsigned threads = 0;  // 0: MDECK_THREADS env, else hardware concurrency
  PartitionScheme scheme = PartitionScheme::ByWeight;
  unsigned fingerprint_passes = 1;
  std::uint64_t memory_budget = std::uint64_t{2} << 30;
  std::uint64_t fingerprint_seed = kFingerprintSeed;
};

struct SearchStats {
  std::uint64_t strings_enumerated = 0;  // enumeration visits over all rounds
  std::uint64_t decks_computed = 0;      // DP sweeps, confirmations included
  std::uint64_t entries_inserted = 0;    // fingerprints kept (2^n on a 1-round run)
  std::uint64_t candidate_groups = 0;    // fingerprint-equal groups of >= 2 strings
  std::uint64_t collisions_confirmed = 0;  // exact-equal pairs found
  std::uint64_t partitions = 0;
  std::uint64_t rounds = 0;
  double wall_seconds = 0.0;
};

struct CollisionReport {
  int m = 0;
  int n = 0;
  bool holds = true;
  // Present iff !holds: the colliding pair minimal under (smaller member,
  // then larger member); re-verified by exact deck comparison on emission.
  std::optional<std::pair<BitString, BitString>> witness;
  SearchStats stats;
};

// First difference between two decks, reported by verify_pair.
struct Distinction {
  BitString word;  // lexicographically smallest y whose counts differ
  ExactInt count_a;
  ExactInt count_b;
};

// nullopt: the decks agree exactly (a collision).
std::optional<Distinction> verify_pair(const BitString& a, const BitString& b, int m);

// Decides R(m,n) exhaustively. Strings are enumerated one canonical
// representative per {complement, reverse} orbit, the representative's deck
// is computed once, and orbit members' decks are derived by index
// permutation. Fingerprint grouping only nominates candidates; every
// reported collision is confirmed by exact deck comparison. Outcome and
// witness are deterministic for any thread count.
CollisionReport check_R(int m, int n, const SearchConfig& cfg = {});

struct NmResult {
  int value = 0;      // largest n <= cap with R(m,n); == cap when capped
  bool capped = false;  // no failure found up to the cap
  std::vector<CollisionReport> reports;  // one per n probed, ascending
};

// N_m by scanning n = m..n_cap until R fails.
NmResult compute_N(int m, int n_cap, const SearchConfig& cfg = {});

// Generates candidate strings by splicing run-boundary-aligned pieces of a
// colliding seed pair: prefix ++ middle ++ suffix, where the prefix is a
// run-prefix, the suffix a run-suffix, and the (optional) middle any run
// substring, each taken from {a, b, reverse(a), reverse(b)}. Candidates are
// filtered by length, digit weight and "01" count, then kept only when an
// exact deck comparison at m_target confirms the collision. The seed must
// collide at m_target - 1. Output is sorted and deduplicated.
std::vector<std::pair<BitString, BitString>> hunt_collisions(
    const std::pair<BitString, BitString>& seed_pair, int m_target,
    std::uint64_t length_cap, const SearchConfig& cfg = {});

// Bundled corpus of known collision pairs, in run-length notation.
struct CorpusPair {
  int m = 0;
  RunLengthString a;
  RunLengthString b;
};

std::vector<CorpusPair> load_pair_corpus(const std::string& path);

}  // namespace mdeck
