#include "mdeck/collision.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "mdeck/packed.hpp"
#include "mdeck/parallel.hpp"
#include "mdeck/sweep.hpp"

namespace mdeck {

namespace {

constexpr std::uint64_t kChunkSize = 1 << 14;
constexpr int kMaxSearchM = 20;

struct Entry {
  Fingerprint fp;
  std::uint64_t s = 0;

  friend bool operator<(const Entry& a, const Entry& b) {
    if (a.fp != b.fp) return a.fp < b.fp;
    return a.s < b.s;
  }
};
static_assert(sizeof(Entry) == 24);
constexpr std::uint64_t kEntryBytes = sizeof(Entry);

// Pascal triangle in u64; exact for n <= 62.
class BinomTable {
 public:
  explicit BinomTable(int n) : n_(n), c_(static_cast<std::size_t>(n + 1) * (n + 1), 0) {
    for (int a = 0; a <= n; ++a) {
      at(a, 0) = 1;
      for (int b = 1; b <= a; ++b)
        at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : 0);
    }
  }
  std::uint64_t operator()(int a, int b) const {
    if (b < 0 || a < 0 || b > a || a > n_) return 0;
    return c_[static_cast<std::size_t>(a) * (n_ + 1) + b];
  }

 private:
  std::uint64_t& at(int a, int b) { return c_[static_cast<std::size_t>(a) * (n_ + 1) + b]; }
  int n_;
  std::vector<std::uint64_t> c_;
};

// Coefficient c of the Gaussian binomial [n, w]_q: the number of weight-w
// length-n strings with exactly c occurrences of the subsequence "01".
// Gives exact partition sizes for the pair-count scheme.
std::vector<std::uint64_t> pair01_histogram(int n, int w) {
  const int pairs_max = w * (n - w);
  std::vector<std::vector<std::uint64_t>> dp(static_cast<std::size_t>(w) + 1);
  for (auto& row : dp) row.assign(static_cast<std::size_t>(pairs_max) + 1, 0);
  dp[0][0] = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = std::min(i, w - 1); j >= 0; --j) {
      const int zeros = i - j;  // zeros so far when appending a 1
      if (zeros < 0) continue;
      auto& src = dp[j];
      auto& dst = dp[j + 1];
      for (int c = 0; c + zeros <= pairs_max; ++c)
        if (src[c]) dst[c + zeros] += src[c];
    }
  }
  return dp[w];
}

// ---------------------------------------------------------------------------
// Hot path: deck sweep in bit-reversed index order.
//
// The level-j block stores the count of word w at slot rev_j(value(w)).
// Appending digit d maps slot r of level j-1 to slot r + d*2^(j-1) of level
// j, so each level update is one contiguous block add (vectorizable), not a
// stride-2 scatter. Reads go through permutation tables composed with the
// bit reversal, so serialized bytes are identical to the plain layout.
// ---------------------------------------------------------------------------

template <class Count>
void sweep_packed_rev(std::uint64_t v, int n, int m, Count* table) {
  const std::size_t size = (std::size_t{2} << m) - 1;
  std::fill_n(table, size, Count{0});
  table[0] = 1;
  for (int i = 0; i < n; ++i) {
    const std::size_t d = (v >> (n - 1 - i)) & 1;
    for (int j = m; j >= 1; --j) {
      const std::size_t half = std::size_t{1} << (j - 1);
      Count* dst = table + (std::size_t{2} << (j - 1)) - 1 + d * half;
      const Count* prev = table + half - 1;
      for (std::size_t r = 0; r < half; ++r) dst[r] += prev[r];
    }
  }
}

// Canonical serialization (same bytes as fingerprint() in deck.cpp), written
// with raw pointer arithmetic. perm[i] is the slot of logical index i.
template <class Count>
std::size_t serialize_deck_fast(std::uint8_t* out, int m, std::uint64_t n,
                                const Count* slice, const std::uint32_t* perm) {
  out[0] = 'D';
  out[1] = 'K';
  out[2] = '0';
  out[3] = '1';
  const auto m32 = static_cast<std::uint32_t>(m);
  for (int i = 0; i < 4; ++i) out[4 + i] = static_cast<std::uint8_t>(m32 >> (8 * i));
  for (int i = 0; i < 8; ++i) out[8 + i] = static_cast<std::uint8_t>(n >> (8 * i));
  std::uint8_t* p = out + 16;
  const std::size_t size = std::size_t{1} << m;
  for (std::size_t i = 0; i < size; ++i) {
    const std::uint64_t c = slice[perm[i]];
    const std::uint32_t len = c ? (std::bit_width(c) + 7) >> 3 : 0;
    p[0] = static_cast<std::uint8_t>(len);
    p[1] = 0;
    p[2] = 0;
    p[3] = 0;
    p += 4;
    // Store all bytes unconditionally; anything beyond len is overwritten by
    // the next length prefix or left past the reported end.
    for (unsigned b = 0; b < sizeof(Count); ++b)
      p[b] = static_cast<std::uint8_t>(c >> (8 * b));
    p += len;
  }
  return static_cast<std::size_t>(p - out);
}

constexpr std::size_t serialized_deck_capacity(int m) {
  return 16 + (std::size_t{1} << m) * 12;
}

struct OrbitMember {
  std::uint64_t value = 0;
  const std::uint32_t* perm = nullptr;
  std::uint64_t pair01 = 0;
};

struct ChunkOutput {
  std::vector<Entry> low;   // bucket for weight w
  std::vector<Entry> high;  // bucket for weight n-w (pair partitions only)
  std::uint64_t visited = 0;
  std::uint64_t decks = 0;
};

struct PendingWitness {
  std::uint64_t a = ~std::uint64_t{0};
  std::uint64_t b = ~std::uint64_t{0};
  bool found = false;

  void offer(std::uint64_t x, std::uint64_t y) {
    if (x > y) std::swap(x, y);
    if (!found || x < a || (x == a && y < b)) {
      a = x;
      b = y;
      found = true;
    }
  }
};

struct Range {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;  // inclusive
};

// Everything fixed across rounds of one search.
struct SearchContext {
  int m;
  int n;
  std::uint64_t mask;
  const BinomTable& binom;
  SearchConfig cfg;
  // Deck-slot permutations (bit reversal composed on top of the orbit
  // transform): perm_xxx[i] = slot of entry i of the transformed deck.
  std::vector<std::uint32_t> perm_id, perm_rev, perm_comp, perm_comprev;
};

// Confirms one bucket: sorts entries, nominates fingerprint-equal groups and
// settles them by exact deck comparison.
template <class Count>
void confirm_bucket(const SearchContext& ctx, std::vector<Entry>& bucket,
                    SearchStats& stats, PendingWitness& witness) {
  std::sort(bucket.begin(), bucket.end());
  const std::size_t table_size = (std::size_t{2} << ctx.m) - 1;
  std::vector<Count> table(table_size);
  std::vector<std::uint8_t> buf(serialized_deck_capacity(ctx.m));
  const std::size_t offset = (std::size_t{1} << ctx.m) - 1;

  std::size_t i = 0;
  while (i < bucket.size()) {
    std::size_t j = i + 1;
    while (j < bucket.size() && bucket[j].fp == bucket[i].fp) ++j;
    if (j - i >= 2) {
      ++stats.candidate_groups;
      std::vector<std::pair<std::string, std::uint64_t>> members;
      members.reserve(j - i);
      for (std::size_t k = i; k < j; ++k) {
        sweep_packed_rev(bucket[k].s, ctx.n, ctx.m, table.data());
        ++stats.decks_computed;
        const std::size_t len = serialize_deck_fast(
            buf.data(), ctx.m, static_cast<std::uint64_t>(ctx.n), table.data() + offset,
            ctx.perm_id.data());
        members.emplace_back(std::string(buf.begin(), buf.begin() + len), bucket[k].s);
      }
      std::sort(members.begin(), members.end());
      std::size_t g = 0;
      while (g < members.size()) {
        std::size_t h = g + 1;
        while (h < members.size() && members[h].first == members[g].first) ++h;
        const std::uint64_t group = h - g;
        if (group >= 2) {
          stats.collisions_confirmed += group * (group - 1) / 2;
          witness.offer(members[g].second, members[g + 1].second);
        }
        g = h;
      }
    }
    i = j;
  }
}

template <class Count>
void run_round(const SearchContext& ctx, int w, bool paired, const Range& range,
               bool full_range, unsigned pass, SearchStats& stats,
               PendingWitness& witness) {
  const int m = ctx.m;
  const int n = ctx.n;
  const std::uint64_t class_size = ctx.binom(n, w);
  const std::uint64_t pairs_total =
      static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(n - w);
  const std::size_t table_size = (std::size_t{2} << m) - 1;
  const std::size_t deck_offset = (std::size_t{1} << m) - 1;
  const unsigned passes = ctx.cfg.fingerprint_passes;

  const std::uint64_t chunk_count = chunk_count_for(class_size, kChunkSize);
  std::vector<ChunkOutput> outputs(static_cast<std::size_t>(chunk_count));

  parallel_chunks(class_size, kChunkSize, ctx.cfg.threads, [&](std::uint64_t chunk,
                                                               std::uint64_t begin,
                                                               std::uint64_t end) {
    ChunkOutput& out = outputs[static_cast<std::size_t>(chunk)];
    std::vector<Count> table(table_size);
    std::vector<std::uint8_t> buf(serialized_deck_capacity(m));
    std::uint64_t v = packed::nth_of_weight(begin, n, w, ctx.binom);
    for (std::uint64_t rank = begin; rank < end; ++rank) {
      ++out.visited;
      const std::uint64_t rv = packed::reverse_bits(v, n);
      const std::uint64_t cv = v ^ ctx.mask;
      const std::uint64_t crv = rv ^ ctx.mask;
      const bool is_rep = paired ? v <= rv : (v <= rv && v <= cv && v <= crv);
      if (is_rep) {
        // Orbit members and their insertion buckets. pair01 values follow
        // from c01(rev) = c01(comp) = K - c01(id).
        const std::uint64_t c01 = full_range ? 0 : packed::pair01_count(v, n);
        const std::uint64_t c01_flip = pairs_total - c01;
        std::array<OrbitMember, 4> members{};
        std::size_t member_count = 0;
        std::array<OrbitMember, 2> high_members{};
        std::size_t high_count = 0;

        members[member_count++] = OrbitMember{v, ctx.perm_id.data(), c01};
        if (rv != v)
          members[member_count++] = OrbitMember{rv, ctx.perm_rev.data(), c01_flip};
        if (paired) {
          high_members[high_count++] = OrbitMember{cv, ctx.perm_comp.data(), c01_flip};
          if (crv != cv)
            high_members[high_count++] =
                OrbitMember{crv, ctx.perm_comprev.data(), c01};
        } else {
          if (cv != v && cv != rv)
            members[member_count++] = OrbitMember{cv, ctx.perm_comp.data(), c01_flip};
          if (crv != v && crv != rv && crv != cv)
            members[member_count++] =
                OrbitMember{crv, ctx.perm_comprev.data(), c01};
        }

        const auto in_range = [&](std::uint64_t c) {
          return full_range || (c >= range.lo && c <= range.hi);
        };
        bool any = false;
        for (std::size_t k = 0; k < member_count && !any; ++k)
          any = in_range(members[k].pair01);
        for (std::size_t k = 0; k < high_count && !any; ++k)
          any = in_range(high_members[k].pair01);

        if (any) {
          sweep_packed_rev(v, n, m, table.data());
          ++out.decks;
          const Count* slice = table.data() + deck_offset;
          const auto emit = [&](const OrbitMember& mem, std::vector<Entry>& bucket) {
            if (!in_range(mem.pair01)) return;
            const std::size_t len = serialize_deck_fast(
                buf.data(), m, static_cast<std::uint64_t>(n), slice, mem.perm);
            const Fingerprint fp =
                detail::murmur3_x64_128(buf.data(), len, ctx.cfg.fingerprint_seed);
            if (passes > 1 && fp.hi % passes != pass) return;
            bucket.push_back(Entry{fp, mem.value});
          };
          for (std::size_t k = 0; k < member_count; ++k) emit(members[k], out.low);
          for (std::size_t k = 0; k < high_count; ++k) emit(high_members[k], out.high);
        }
      }
      if (rank + 1 < end) v = packed::next_same_weight(v);
    }
  });

  // Deterministic merge in chunk order, then confirm each bucket.
  for (int side = 0; side < (paired ? 2 : 1); ++side) {
    std::size_t total = 0;
    for (const ChunkOutput& out : outputs)
      total += (side == 0 ? out.low : out.high).size();
    std::vector<Entry> bucket;
    bucket.reserve(total);
    for (ChunkOutput& out : outputs) {
      auto& src = side == 0 ? out.low : out.high;
      bucket.insert(bucket.end(), src.begin(), src.end());
      std::vector<Entry>().swap(src);
    }
    stats.entries_inserted += bucket.size();
    confirm_bucket<Count>(ctx, bucket, stats, witness);
  }
  for (const ChunkOutput& out : outputs) {
    stats.strings_enumerated += out.visited;
    stats.decks_computed += out.decks;
  }
}

// Splits the pair-count axis into ranges whose estimated in-memory entry
// bytes stay within the budget. Exact string counts per pair-count value come
// from the Gaussian binomial histogram.
std::vector<Range> plan_ranges(int n, int w, bool paired, const SearchConfig& cfg) {
  const std::uint64_t pairs_max =
      static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(n - w);
  if (cfg.scheme == PartitionScheme::ByWeight) return {Range{0, pairs_max}};

  const std::uint64_t bucket_factor = paired ? 2 : 1;
  const std::uint64_t cap_mass =
      cfg.memory_budget / kEntryBytes * cfg.fingerprint_passes / bucket_factor;
  const auto hist = pair01_histogram(n, w);

  std::vector<Range> ranges;
  std::uint64_t lo = 0;
  std::uint64_t mass = 0;
  for (std::uint64_t c = 0; c <= pairs_max; ++c) {
    const std::uint64_t add = hist[static_cast<std::size_t>(c)];
    if (add > cap_mass) {
      std::ostringstream msg;
      msg << "memory budget too small even for a single pair-count class of weight " << w
          << " (" << add * bucket_factor * kEntryBytes / cfg.fingerprint_passes
          << " bytes); increase --memory-budget or fingerprint passes (need >= "
          << (add * bucket_factor * kEntryBytes + cfg.memory_budget - 1) / cfg.memory_budget
          << ")";
      throw ResourceError(msg.str());
    }
    if (mass + add > cap_mass) {
      ranges.push_back(Range{lo, c - 1});
      lo = c;
      mass = 0;
    }
    mass += add;
  }
  ranges.push_back(Range{lo, pairs_max});
  return ranges;
}

}  // namespace

std::optional<Distinction> verify_pair(const BitString& a, const BitString& b, int m) {
  if (a.size() != b.size()) throw DomainError("pair members must have equal length");
  if (m < 0 || static_cast<std::size_t>(m) > a.size())
    throw DomainError("m exceeds string length");
  const Deck da = compute_deck(a, m);
  const Deck db = compute_deck(b, m);
  const std::size_t size = da.counts().size();
  for (std::size_t i = 0; i < size; ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    if (da.count(idx) != db.count(idx))
      return Distinction{Deck::word_of(idx, m), da.count(idx), db.count(idx)};
  }
  return std::nullopt;
}

CollisionReport check_R(int m, int n, const SearchConfig& user_cfg) {
  if (m < 0 || n < 0 || m > n) throw DomainError("check_R requires 0 <= m <= n");
  if (n > packed::kMaxPackedLength)
    throw ResourceError("exhaustive search supports n <= " +
                        std::to_string(packed::kMaxPackedLength));
  if (m > kMaxSearchM)
    throw ResourceError("search supports m <= " + std::to_string(kMaxSearchM));

  SearchConfig cfg = user_cfg;
  cfg.threads = resolve_threads(cfg.threads);
  if (cfg.fingerprint_passes == 0) throw DomainError("fingerprint passes must be >= 1");
  if (cfg.memory_budget == 0) throw DomainError("memory budget must be positive");
  if (cfg.scheme == PartitionScheme::ByWeightAndPairCounts && m < 2)
    throw DomainError("pair-count partitioning requires m >= 2 (collisions need equal 2-decks)");

  const auto t0 = std::chrono::steady_clock::now();
  CollisionReport report;
  report.m = m;
  report.n = n;

  // m = 0: every string has the same (empty-word) deck, so R(0,n) holds only
  // for the single string of length 0. Weight classes cannot partition this
  // case; handled directly.
  if (m == 0) {
    if (n >= 1) {
      report.holds = false;
      BitString a, b;
      for (int i = 0; i < n; ++i) a.push_back(0);
      for (int i = 0; i < n - 1; ++i) b.push_back(0);
      b.push_back(1);
      report.witness = {a, b};
      report.stats.strings_enumerated = std::uint64_t{1} << n;
    }
    report.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
  }

  const BinomTable binom(n);

  // ByWeight still has to fit: check the worst pair partition up front.
  if (cfg.scheme == PartitionScheme::ByWeight) {
    std::uint64_t worst = 0;
    for (int w = 0; 2 * w <= n; ++w) {
      const std::uint64_t entries = binom(n, w) + (2 * w != n ? binom(n, n - w) : 0);
      worst = std::max(worst, entries);
    }
    const std::uint64_t need = worst * kEntryBytes / cfg.fingerprint_passes;
    if (need > cfg.memory_budget) {
      std::ostringstream msg;
      msg << "estimated working set " << need << " bytes exceeds budget " << cfg.memory_budget
          << "; use partition scheme by-weight-and-pair-counts and/or fingerprint passes >= "
          << (worst * kEntryBytes + cfg.memory_budget - 1) / cfg.memory_budget;
      throw ResourceError(msg.str());
    }
  }

  SearchContext ctx{m, n, packed::ones_mask(n), binom, cfg, {}, {}, {}, {}};
  const std::size_t deck_size = std::size_t{1} << m;
  ctx.perm_id.resize(deck_size);
  ctx.perm_rev.resize(deck_size);
  ctx.perm_comp.resize(deck_size);
  ctx.perm_comprev.resize(deck_size);
  for (std::size_t i = 0; i < deck_size; ++i) {
    const auto idx = static_cast<std::uint32_t>(i);
    const auto rev_slot = [&](std::uint32_t logical) {
      return static_cast<std::uint32_t>(
          packed::reverse_bits(logical, m));  // slot of a logical index
    };
    ctx.perm_id[i] = rev_slot(idx);
    ctx.perm_rev[i] = rev_slot(transform_index(idx, m, false, true));
    ctx.perm_comp[i] = rev_slot(transform_index(idx, m, true, false));
    ctx.perm_comprev[i] = rev_slot(transform_index(idx, m, true, true));
  }

  // u32 counts when every intermediate fits; they halve the sweep's memory
  // traffic. The bound is exact, so overflow is impossible rather than
  // detected.
  const bool use_u32 =
      binomial(static_cast<std::uint64_t>(n),
               std::min<std::uint64_t>(static_cast<std::uint64_t>(m),
                                       static_cast<std::uint64_t>(n) / 2)) <=
      std::numeric_limits<std::uint32_t>::max();

  SearchStats stats;
  PendingWitness witness;

  for (int w = 0; 2 * w <= n; ++w) {
    ++stats.partitions;
    const bool paired = 2 * w != n;
    const std::uint64_t pairs_total =
        static_cast<std::uint64_t>(w) * static_cast<std::uint64_t>(n - w);
    const auto ranges = plan_ranges(n, w, paired, cfg);
    for (const Range& range : ranges) {
      const bool full_range = range.lo == 0 && range.hi == pairs_total;
      for (unsigned pass = 0; pass < cfg.fingerprint_passes; ++pass) {
        ++stats.rounds;
        if (use_u32)
          run_round<std::uint32_t>(ctx, w, paired, range, full_range, pass, stats,
                                   witness);
        else
          run_round<std::uint64_t>(ctx, w, paired, range, full_range, pass, stats,
                                   witness);
      }
    }
  }

  // Every length-n string must have been fingerprinted exactly once.
  if (stats.entries_inserted != (std::uint64_t{1} << n))
    throw IntegrityError("search inserted " + std::to_string(stats.entries_inserted) +
                         " entries, expected 2^n = " +
                         std::to_string(std::uint64_t{1} << n));

  if (witness.found) {
    report.holds = false;
    const BitString a = packed::unpack(witness.a, n);
    const BitString b = packed::unpack(witness.b, n);
    if (verify_pair(a, b, m).has_value())
      throw IntegrityError("internal: witness failed exact re-verification");
    if (a.count_ones() != b.count_ones())
      throw IntegrityError("internal: witness members differ in digit weight");
    report.witness = {a, b};
  }

  report.stats = stats;
  report.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

NmResult compute_N(int m, int n_cap, const SearchConfig& cfg) {
  if (m < 0) throw DomainError("m must be nonnegative");
  if (n_cap < m) throw DomainError("compute_N requires n_cap >= m");
  NmResult out;
  for (int n = m; n <= n_cap; ++n) {
    out.reports.push_back(check_R(m, n, cfg));
    if (!out.reports.back().holds) {
      out.value = n - 1;
      out.capped = false;
      return out;
    }
  }
  out.value = n_cap;
  out.capped = true;
  return out;
}

namespace {

// A contiguous slice of runs from one source string, with the digit-level
// invariants needed for cheap candidate filtering.
struct Slice {
  std::uint32_t source = 0;
  std::uint32_t first = 0;  // runs [first, last)
  std::uint32_t last = 0;
  std::uint64_t length = 0;
  std::uint64_t ones = 0;
  std::uint64_t pair01 = 0;

  std::uint64_t zeros() const { return length - ones; }
  bool empty() const { return first == last; }
};

Slice make_slice(const std::vector<RunLengthString>& sources, std::uint32_t src,
                 std::uint32_t first, std::uint32_t last) {
  Slice s{src, first, last, 0, 0, 0};
  std::uint64_t zeros_seen = 0;
  const auto& runs = sources[src].runs();
  for (std::uint32_t i = first; i < last; ++i) {
    s.length += runs[i].count;
    if (runs[i].digit == 1) {
      s.ones += runs[i].count;
      s.pair01 += zeros_seen * runs[i].count;
    } else {
      zeros_seen += runs[i].count;
    }
  }
  return s;
}

void append_slice(std::vector<std::uint8_t>& digits,
                  const std::vector<RunLengthString>& sources, const Slice& s) {
  const auto& runs = sources[s.source].runs();
  for (std::uint32_t i = s.first; i < s.last; ++i)
    digits.insert(digits.end(), static_cast<std::size_t>(runs[i].count),
                  static_cast<std::uint8_t>(runs[i].digit));
}

struct CandidateKey {
  std::uint64_t length = 0;
  std::uint64_t ones = 0;
  std::uint64_t pair01 = 0;

  friend auto operator<=>(const CandidateKey&, const CandidateKey&) = default;
};

struct Candidate {
  CandidateKey key;
  std::uint32_t prefix = 0;
  std::uint32_t middle = 0;  // index into middles; 0 is the empty middle
  std::uint32_t suffix = 0;

  friend bool operator<(const Candidate& a, const Candidate& b) { return a.key < b.key; }
};

}  // namespace

std::vector<std::pair<BitString, BitString>> hunt_collisions(
    const std::pair<BitString, BitString>& seed_pair, int m_target,
    std::uint64_t length_cap, const SearchConfig& user_cfg) {
  if (m_target < 1) throw DomainError("m_target must be >= 1");
  if (seed_pair.first == seed_pair.second)
    throw DomainError("seed pair members must be distinct");
  if (length_cap < static_cast<std::uint64_t>(m_target))
    throw DomainError("length cap below m_target");
  if (verify_pair(seed_pair.first, seed_pair.second, m_target - 1).has_value())
    throw DomainError("seed pair does not collide at m_target - 1");

  SearchConfig cfg = user_cfg;
  cfg.threads = resolve_threads(cfg.threads);

  std::vector<RunLengthString> sources = {
      RunLengthString::of(seed_pair.first),
      RunLengthString::of(seed_pair.second),
      RunLengthString::of(seed_pair.first.reversed()),
      RunLengthString::of(seed_pair.second.reversed()),
  };

  std::vector<Slice> prefixes, suffixes, middles;
  middles.push_back(Slice{});  // empty middle
  for (std::uint32_t src = 0; src < sources.size(); ++src) {
    const auto run_count = static_cast<std::uint32_t>(sources[src].runs().size());
    for (std::uint32_t last = 1; last <= run_count; ++last)
      prefixes.push_back(make_slice(sources, src, 0, last));
    for (std::uint32_t first = 0; first < run_count; ++first)
      suffixes.push_back(make_slice(sources, src, first, run_count));
    for (std::uint32_t first = 0; first < run_count; ++first)
      for (std::uint32_t last = first + 1; last <= run_count; ++last)
        middles.push_back(make_slice(sources, src, first, last));
  }

  // Enumerate splices, keeping only the cheap digit-level key.
  std::vector<Candidate> candidates;
  for (std::uint32_t p = 0; p < prefixes.size(); ++p) {
    for (std::uint32_t mi = 0; mi < middles.size(); ++mi) {
      const std::uint64_t pm_len = prefixes[p].length + middles[mi].length;
      if (pm_len + 1 > length_cap) continue;  // suffixes are nonempty
      for (std::uint32_t s = 0; s < suffixes.size(); ++s) {
        const Slice& pre = prefixes[p];
        const Slice& mid = middles[mi];
        const Slice& suf = suffixes[s];
        const std::uint64_t len = pm_len + suf.length;
        if (len > length_cap || len < static_cast<std::uint64_t>(m_target)) continue;
        CandidateKey key;
        key.length = len;
        key.ones = pre.ones + mid.ones + suf.ones;
        key.pair01 = pre.pair01 + mid.pair01 + suf.pair01 +
                     pre.zeros() * (mid.ones + suf.ones) + mid.zeros() * suf.ones;
        candidates.push_back(Candidate{key, p, mi, s});
      }
    }
  }

  std::sort(candidates.begin(), candidates.end());

  // Group boundaries: only keys shared by at least two splices can collide.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  {
    std::size_t i = 0;
    while (i < candidates.size()) {
      std::size_t j = i + 1;
      while (j < candidates.size() && candidates[j].key == candidates[i].key) ++j;
      if (j - i >= 2) groups.emplace_back(i, j);
      i = j;
    }
  }

  const auto expand = [&](const Candidate& c) {
    std::vector<std::uint8_t> digits;
    digits.reserve(static_cast<std::size_t>(c.key.length));
    append_slice(digits, sources, prefixes[c.prefix]);
    append_slice(digits, sources, middles[c.middle]);
    append_slice(digits, sources, suffixes[c.suffix]);
    return BitString(std::move(digits));
  };

  // Per group: dedupe identical strings, then compare exact decks.
  std::vector<std::vector<std::pair<BitString, BitString>>> found(groups.size());
  parallel_chunks(groups.size(), 1, cfg.threads, [&](std::uint64_t g, std::uint64_t,
                                                     std::uint64_t) {
    const auto [begin, end] = groups[static_cast<std::size_t>(g)];
    std::vector<BitString> strings;
    strings.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) strings.push_back(expand(candidates[i]));
    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
    if (strings.size() < 2) return;

    const int n = static_cast<int>(strings.front().size());
    std::vector<std::pair<std::string, std::size_t>> keyed;
    keyed.reserve(strings.size());
    if (binomials_fit_u64(static_cast<std::uint64_t>(n), m_target)) {
      std::vector<std::uint64_t> table((std::size_t{2} << m_target) - 1);
      std::vector<std::uint8_t> buf;
      for (std::size_t i = 0; i < strings.size(); ++i) {
        detail::sweep_init(table.data(), m_target);
        detail::sweep_counts(
            static_cast<std::uint64_t>(n),
            [&s = strings[i]](std::uint64_t k) { return s[static_cast<std::size_t>(k)]; },
            m_target, table.data());
        buf.clear();
        detail::serialize_deck_header(buf, m_target, static_cast<std::uint64_t>(n));
        const std::uint64_t* slice = table.data() + detail::sweep_deck_offset(m_target);
        for (std::size_t y = 0; y < (std::size_t{1} << m_target); ++y)
          detail::serialize_count(buf, slice[y]);
        keyed.emplace_back(std::string(buf.begin(), buf.end()), i);
      }
    } else {
      std::vector<std::uint8_t> buf;
      for (std::size_t i = 0; i < strings.size(); ++i) {
        const Deck d = compute_deck(strings[i], m_target);
        buf.clear();
        detail::serialize_deck_header(buf, d.m(), d.n());
        for (const ExactInt& c : d.counts()) detail::serialize_count(buf, c);
        keyed.emplace_back(std::string(buf.begin(), buf.end()), i);
      }
    }
    std::sort(keyed.begin(), keyed.end());
    std::size_t i = 0;
    while (i < keyed.size()) {
      std::size_t j = i + 1;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
      for (std::size_t x = i; x < j; ++x)
        for (std::size_t y = x + 1; y < j; ++y)
          found[static_cast<std::size_t>(g)].emplace_back(strings[keyed[x].second],
                                                          strings[keyed[y].second]);
      i = j;
    }
  });

  std::vector<std::pair<BitString, BitString>> result;
  for (auto& group_pairs : found)
    for (auto& pr : group_pairs) {
      if (pr.first > pr.second) std::swap(pr.first, pr.second);
      result.push_back(std::move(pr));
    }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());

  // Postcondition: everything emitted must survive the public verifier.
  for (const auto& pr : result)
    if (verify_pair(pr.first, pr.second, m_target).has_value())
      throw IntegrityError("internal: hunted pair failed exact re-verification");
  return result;
}

std::vector<CorpusPair> load_pair_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open corpus file: " + path);

  std::vector<CorpusPair> corpus;
  std::string line;
  int pending_m = -1;
  std::vector<RunLengthString> pending;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("pair m=", 0) == 0) {
      if (pending_m >= 0)
        throw IntegrityError("corpus: pair m=" + std::to_string(pending_m) +
                             " has fewer than two strings");
      const std::string field = line.substr(7);
      if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
        throw IntegrityError("corpus: bad pair header '" + line + "'");
      pending_m = std::stoi(field);
      if (pending_m < 1) throw IntegrityError("corpus: pair with m < 1");
      continue;
    }
    if (pending_m < 0) throw IntegrityError("corpus: string outside a pair record");
    pending.push_back(RunLengthString::parse(line));
    if (pending.size() == 2) {
      if (pending[0].length() != pending[1].length())
        throw IntegrityError("corpus: pair m=" + std::to_string(pending_m) +
                             " members differ in length");
      if (pending[0].length() < static_cast<std::uint64_t>(pending_m))
        throw IntegrityError("corpus: pair m=" + std::to_string(pending_m) +
                             " shorter than m");
      corpus.push_back(CorpusPair{pending_m, pending[0], pending[1]});
      pending.clear();
      pending_m = -1;
    }
  }
  if (pending_m >= 0) throw IntegrityError("corpus: truncated final pair");
  if (corpus.empty()) throw IntegrityError("corpus: no pairs found");
  return corpus;
}

}  // namespace mdeck
