#include "mdeck/reconstruct.hpp"

#include <algorithm>
#include <optional>

#include "mdeck/packed.hpp"
#include "mdeck/parallel.hpp"
#include "mdeck/sweep.hpp"

namespace mdeck {

BitString RunProfile::expand() const {
  BitString x;
  for (std::size_t j = 0; j < zero_runs.size(); ++j) {
    if (j) x.push_back(1);
    for (std::uint64_t i = 0; i < zero_runs[j]; ++i) x.push_back(0);
  }
  return x;
}

std::uint64_t count_ones_from_deck(const Deck& d) {
  if (d.m() < 1) throw DomainError("count_ones_from_deck requires m >= 1");
  const Deck ones_deck = marginalize(d, 1);
  const ExactInt& k = ones_deck.count(std::uint32_t{1});
  return k.convert_to<std::uint64_t>();
}

RunProfile reconstruct_profile(const Deck& d) {
  const int m = d.m();
  const std::uint64_t n = d.n();
  if (m < 3) throw DomainError("reconstruction requires m >= 3");
  if (n != 2 * static_cast<std::uint64_t>(m) - 1)
    throw DomainError("reconstruction requires n = 2m - 1");

  RunProfile profile;
  std::uint64_t k = count_ones_from_deck(d);

  // The construction needs k < m; otherwise work on the complemented deck
  // and record the flag (then k <- n - k < m).
  const Deck* work = &d;
  std::optional<Deck> transformed;
  if (k >= static_cast<std::uint64_t>(m)) {
    transformed = transform_deck(d, true, false);
    work = &*transformed;
    k = n - k;
    profile.complemented = true;
  }
  profile.ones = k;

  if (k == 0) {
    profile.zero_runs = {n};
    return profile;
  }

  // counts at level k+1 of the words 1^j 0 1^(k-j) are the zero-run lengths.
  const int level = static_cast<int>(k) + 1;
  const Deck marg = marginalize(*work, level);
  const std::uint32_t all_ones = (std::uint32_t{1} << level) - 1;
  profile.zero_runs.resize(static_cast<std::size_t>(k) + 1);
  std::uint64_t total = 0;
  for (std::uint64_t j = 0; j <= k; ++j) {
    const std::uint32_t word = all_ones ^ (std::uint32_t{1} << (k - j));
    const ExactInt& len = marg.count(word);
    profile.zero_runs[static_cast<std::size_t>(j)] = len.convert_to<std::uint64_t>();
    total += profile.zero_runs[static_cast<std::size_t>(j)];
  }
  if (total != n - k)
    throw IntegrityError("zero-run lengths sum to " + std::to_string(total) +
                         ", expected n - k = " + std::to_string(n - k) +
                         ": deck not realizable");
  return profile;
}

BitString reconstruct_runs(const Deck& d) {
  const RunProfile profile = reconstruct_profile(d);
  BitString x = profile.expand();
  return profile.complemented ? x.complemented() : x;
}

std::vector<BitString> invert_deck_bruteforce(const Deck& d) {
  const std::uint64_t n = d.n();
  const int m = d.m();
  if (n > 24) throw ResourceError("brute-force inversion limited to n <= 24");
  if (m > 12) throw ResourceError("brute-force inversion limited to m <= 12");

  // Counts of any real deck at n <= 24 fit u64, so compare in the fast lane.
  std::vector<std::uint64_t> target(d.counts().size());
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = d.count(static_cast<std::uint32_t>(i)).convert_to<std::uint64_t>();

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t deck_offset = detail::sweep_deck_offset(m);
  const std::size_t deck_size = std::size_t{1} << m;
  const std::uint64_t chunk = std::max<std::uint64_t>(total / 256, 4096);
  const std::uint64_t chunks = chunk_count_for(total, chunk);
  std::vector<std::vector<std::uint64_t>> hits(static_cast<std::size_t>(chunks));

  parallel_chunks(total, chunk, resolve_threads(0),
                  [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                    std::vector<std::uint64_t> table((std::size_t{2} << m) - 1);
                    for (std::uint64_t v = begin; v < end; ++v) {
                      detail::sweep_init(table.data(), m);
                      detail::sweep_counts(
                          n,
                          [v, n](std::uint64_t i) {
                            return static_cast<int>((v >> (n - 1 - i)) & 1);
                          },
                          m, table.data());
                      if (std::equal(target.begin(), target.end(),
                                     table.begin() + static_cast<std::ptrdiff_t>(deck_offset),
                                     table.begin() + static_cast<std::ptrdiff_t>(
                                                         deck_offset + deck_size)))
                        hits[static_cast<std::size_t>(c)].push_back(v);
                    }
                  });

  std::vector<BitString> out;
  for (const auto& chunk_hits : hits)
    for (std::uint64_t v : chunk_hits) out.push_back(packed::unpack(v, static_cast<int>(n)));
  return out;  // ascending: chunks ascend and values ascend within a chunk
}

}  // namespace mdeck
