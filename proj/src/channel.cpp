#include "mdeck/channel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "mdeck/parallel.hpp"

namespace mdeck {

namespace {

// SplitMix64 (Steele, Lea, Flood): used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

// xoshiro256** (Blackman/Vigna, public domain reference).
std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw DomainError("Rng::below requires bound >= 1");
  if (bound == 1) return 0;
  // Rejection on the smallest covering power of two: unbiased and portable.
  const int bits = std::bit_width(bound - 1);
  const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0}
                                        : ((std::uint64_t{1} << bits) - 1);
  for (;;) {
    const std::uint64_t v = next() & mask;
    if (v < bound) return v;
  }
}

std::uint64_t Rng::mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ ((stream + 1) * 0x9e3779b97f4a7c15ULL);
  return splitmix64(state);
}

Rng Rng::for_draw(std::uint64_t seed, std::uint64_t draw_index) {
  return Rng(mix(seed, draw_index));
}

std::vector<std::uint32_t> transmit_positions(std::uint64_t n, int m, Rng& rng) {
  if (m < 0 || static_cast<std::uint64_t>(m) > n)
    throw DomainError("m exceeds string length");
  // Selection sampling: position i is kept with probability
  // needed / remaining, which makes every m-subset equally likely.
  std::vector<std::uint32_t> kept;
  kept.reserve(static_cast<std::size_t>(m));
  std::uint64_t needed = static_cast<std::uint64_t>(m);
  for (std::uint64_t i = 0; i < n && needed > 0; ++i) {
    if (rng.below(n - i) < needed) {
      kept.push_back(static_cast<std::uint32_t>(i));
      --needed;
    }
  }
  return kept;
}

BitString transmit(const BitString& x, int m, Rng& rng) {
  const auto kept = transmit_positions(x.size(), m, rng);
  BitString y;
  for (std::uint32_t i : kept) y.push_back(x[i]);
  return y;
}

SampleBatch sample_batch(const BitString& x, int m, std::uint64_t count,
                         std::uint64_t seed, unsigned threads) {
  if (m < 0 || static_cast<std::size_t>(m) > x.size())
    throw DomainError("m exceeds string length");
  SampleBatch batch;
  batch.m = m;
  batch.n = x.size();
  batch.seed = seed;
  batch.count = count;
  batch.source = x;
  batch.outputs.resize(static_cast<std::size_t>(count));
  parallel_chunks(count, 4096, resolve_threads(threads),
                  [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t i = begin; i < end; ++i) {
                      Rng rng = Rng::for_draw(seed, i);
                      batch.outputs[static_cast<std::size_t>(i)] = transmit(x, m, rng);
                    }
                  });
  return batch;
}

std::map<BitString, double> estimate_distribution(const SampleBatch& batch) {
  if (batch.count == 0 || batch.outputs.empty())
    throw DomainError("empty batch");
  std::map<BitString, std::uint64_t> tally;
  for (const BitString& y : batch.outputs) ++tally[y];
  std::map<BitString, double> freq;
  for (const auto& [y, c] : tally)
    freq[y] = static_cast<double>(c) / static_cast<double>(batch.outputs.size());
  return freq;
}

ExactRational total_variation(const SampleBatch& batch, const Deck& exact) {
  if (batch.m != exact.m()) throw DomainError("batch and deck orders differ");
  if (batch.outputs.empty()) throw DomainError("empty batch");
  const auto probs = deck_to_distribution(exact);
  std::vector<std::uint64_t> tally(probs.size(), 0);
  for (const BitString& y : batch.outputs) {
    if (y.size() != static_cast<std::size_t>(batch.m))
      throw IntegrityError("batch output of wrong length");
    ++tally[Deck::index_of(y)];
  }
  const ExactInt draws = batch.outputs.size();
  ExactRational distance = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const ExactRational emp = ExactRational(tally[i], draws);
    distance += boost::multiprecision::abs(emp - probs[i]);
  }
  return distance / 2;
}

Discrimination discriminate(const SampleBatch& batch,
                            const std::vector<BitString>& candidates, int m) {
  if (candidates.empty()) throw DomainError("empty candidate list");
  if (batch.m != m) throw DomainError("batch order does not match m");
  const std::size_t n = candidates.front().size();
  for (const BitString& c : candidates) {
    if (c.size() != n) throw DomainError("candidates must share one length");
    if (c.size() < static_cast<std::size_t>(m)) throw DomainError("candidate shorter than m");
  }

  // Observed output tallies in deck index order.
  std::vector<std::uint64_t> tally(std::size_t{1} << m, 0);
  for (const BitString& y : batch.outputs) {
    if (y.size() != static_cast<std::size_t>(m))
      throw IntegrityError("batch output of wrong length");
    ++tally[Deck::index_of(y)];
  }

  // One deck and one log-likelihood per distinct deck: candidates with equal
  // decks must tie bit-for-bit, so they share the computed value.
  std::vector<Deck> decks;
  decks.reserve(candidates.size());
  for (const BitString& c : candidates) decks.push_back(compute_deck(c, m));

  std::vector<double> values(candidates.size(),
                             std::numeric_limits<double>::quiet_NaN());
  const double log_total =
      std::log(binomial(n, static_cast<std::uint64_t>(m)).convert_to<double>());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!std::isnan(values[i])) continue;
    double ll = 0.0;
    bool impossible = false;
    for (std::size_t y = 0; y < tally.size(); ++y) {
      if (tally[y] == 0) continue;
      const ExactInt& c = decks[i].count(static_cast<std::uint32_t>(y));
      if (c == 0) {
        impossible = true;
        break;
      }
      ll += static_cast<double>(tally[y]) * std::log(c.convert_to<double>());
    }
    const double result =
        impossible ? -std::numeric_limits<double>::infinity()
                   : ll - static_cast<double>(batch.outputs.size()) * log_total;
    for (std::size_t j = i; j < candidates.size(); ++j)
      if (std::isnan(values[j]) && decks[j] == decks[i]) values[j] = result;
  }

  Discrimination out;
  out.log_likelihood = values;
  double best = -std::numeric_limits<double>::infinity();
  for (double v : values) best = std::max(best, v);
  std::vector<std::size_t> argmax;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == best) argmax.push_back(i);
  std::sort(argmax.begin(), argmax.end(), [&](std::size_t a, std::size_t b) {
    if (candidates[a] != candidates[b]) return candidates[a] < candidates[b];
    return a < b;
  });
  out.argmax = std::move(argmax);
  return out;
}

void write_batch(std::ostream& os, const SampleBatch& batch) {
  os << "samples m=" << batch.m << " n=" << batch.n << " seed=" << batch.seed
     << " count=" << batch.count << "\n";
  for (const BitString& y : batch.outputs) os << y.text() << "\n";
}

SampleBatch read_batch(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("batch file: missing header");
  SampleBatch batch;
  unsigned long long n = 0, seed = 0, count = 0;
  if (std::sscanf(header.c_str(), "samples m=%d n=%llu seed=%llu count=%llu", &batch.m,
                  &n, &seed, &count) != 4)
    throw ParseError("batch file: bad header '" + header + "'");
  batch.n = n;
  batch.seed = seed;
  batch.count = count;
  batch.outputs.reserve(static_cast<std::size_t>(count));
  std::string line;
  for (unsigned long long i = 0; i < count; ++i) {
    if (!std::getline(is, line)) throw ParseError("batch file: truncated outputs");
    BitString y = BitString::from_text(line);
    if (y.size() != static_cast<std::size_t>(batch.m))
      throw ParseError("batch file: output of wrong length: '" + line + "'");
    batch.outputs.push_back(std::move(y));
  }
  return batch;
}

SampleBatch load_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open batch file: " + path);
  return read_batch(in);
}

}  // namespace mdeck
