#pragma once

// Seeded simulation of the (m,n)-deletion channel and likelihood-based
// discrimination between candidate messages.
//
// Randomness is fully pinned down so batches are reproducible across
// platforms, runs and thread counts:
//   - generator: xoshiro256** (Blackman/Vigna), state seeded with four
//     consecutive outputs of SplitMix64;
//   - bounded draws by rejection on the high bits (never modulo, never
//     std::uniform_int_distribution, whose algorithm is unspecified);
//   - draw i of a batch runs on its own generator seeded with
//     splitmix64_mix(seed ^ (i+1) * 0x9E3779B97F4A7C15), so splitting a
//     batch across workers cannot change its contents.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdeck/deck.hpp"

namespace mdeck {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  // Uniform in [0, bound); bound >= 1.
  std::uint64_t below(std::uint64_t bound);

  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);
  static Rng for_draw(std::uint64_t seed, std::uint64_t draw_index);

 private:
  std::uint64_t s_[4];
};

// One channel use: keeps m of the n digits, the kept index set uniform over
// all C(n,m) subsets (selection sampling), order preserved.
BitString transmit(const BitString& x, int m, Rng& rng);

// The kept positions themselves, ascending; transmit restricts x to these.
std::vector<std::uint32_t> transmit_positions(std::uint64_t n, int m, Rng& rng);

struct SampleBatch {
  int m = 0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  std::vector<BitString> outputs;  // draw order; compared as a multiset
  // Known when the batch was drawn locally; absent (hidden) for batches read
  // from files, which never record their source.
  std::optional<BitString> source;
};

SampleBatch sample_batch(const BitString& x, int m, std::uint64_t count,
                         std::uint64_t seed, unsigned threads = 0);

// Empirical output frequencies; they sum to 1.
std::map<BitString, double> estimate_distribution(const SampleBatch& batch);

// Exact total-variation distance between the batch's empirical distribution
// and the channel distribution of the deck's source string.
ExactRational total_variation(const SampleBatch& batch, const Deck& exact);

struct Discrimination {
  // log P(batch | candidate), natural log; -inf when any observed output has
  // probability zero under the candidate.
  std::vector<double> log_likelihood;  // parallel to the candidate list
  // Indices of the maximizers, ordered by candidate string lexicographically;
  // ties are preserved, never broken.
  std::vector<std::size_t> argmax;
};

// Likelihoods are computed from exact integer deck counts; floating point
// enters only at the final log. Candidates with exactly equal decks share
// one computed value, so their log-likelihoods are bit-identical.
Discrimination discriminate(const SampleBatch& batch,
                            const std::vector<BitString>& candidates, int m);

// Batch file format:
//   samples m=<m> n=<n> seed=<seed> count=<count>
//   <length-m bitstring>          (count lines)
void write_batch(std::ostream& os, const SampleBatch& batch);
SampleBatch read_batch(std::istream& is);
SampleBatch load_batch(const std::string& path);

}  // namespace mdeck
