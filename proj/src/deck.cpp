#include "mdeck/deck.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "mdeck/sweep.hpp"

namespace mdeck {

Deck::Deck(int m, std::uint64_t n, std::vector<ExactInt> counts)
    : m_(m), n_(n), counts_(std::move(counts)) {
  if (m < 0) throw DomainError("deck order m must be nonnegative");
  if (m > kMaxDeckM) throw ResourceError("deck order m too large: " + std::to_string(m));
  if (static_cast<std::uint64_t>(m) > n)
    throw DomainError("deck requires m <= n");
  const std::size_t expected = std::size_t{1} << m;
  if (counts_.size() != expected)
    throw IntegrityError("deck holds " + std::to_string(counts_.size()) +
                         " counts, expected " + std::to_string(expected));
  ExactInt sum = 0;
  for (const ExactInt& c : counts_) {
    if (c < 0) throw IntegrityError("negative deck count");
    sum += c;
  }
  const ExactInt total = binomial(n, static_cast<std::uint64_t>(m));
  if (sum != total)
    throw IntegrityError("deck counts sum to " + sum.str() + ", expected C(n,m) = " +
                         total.str());
}

const ExactInt& Deck::count(const BitString& y) const {
  if (y.size() != static_cast<std::size_t>(m_))
    throw DomainError("word length does not match deck order");
  return counts_[index_of(y)];
}

std::uint32_t Deck::index_of(const BitString& y) {
  if (y.size() > 31) throw DomainError("word too long to index");
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < y.size(); ++i) v = (v << 1) | static_cast<std::uint32_t>(y[i]);
  return v;
}

BitString Deck::word_of(std::uint32_t index, int m) {
  BitString y;
  for (int i = m - 1; i >= 0; --i) y.push_back(static_cast<int>((index >> i) & 1));
  return y;
}

ExactInt occurrence_count(const BitString& y, const BitString& x) {
  if (y.size() > x.size()) return 0;
  // dp[j] = ways to realize the length-j prefix of y so far.
  std::vector<ExactInt> dp(y.size() + 1);
  dp[0] = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = std::min(y.size(), i + 1); j >= 1; --j) {
      if (x[i] == y[j - 1]) dp[j] += dp[j - 1];
    }
  }
  return dp[y.size()];
}

Deck compute_deck(const BitString& x, int m) {
  const std::uint64_t n = x.size();
  if (m < 0) throw DomainError("deck order m must be nonnegative");
  if (static_cast<std::uint64_t>(m) > n)
    throw DomainError("m exceeds string length");
  if (m > kMaxDeckM) throw ResourceError("deck order m too large: " + std::to_string(m));

  const std::size_t deck_size = std::size_t{1} << m;
  const std::size_t table_size = (std::size_t{2} << m) - 1;
  const auto digit_at = [&x](std::uint64_t i) { return x[static_cast<std::size_t>(i)]; };
  std::vector<ExactInt> counts(deck_size);

  if (binomials_fit_u64(n, m)) {
    std::vector<std::uint64_t> table(table_size);
    detail::sweep_init(table.data(), m);
    detail::sweep_counts(n, digit_at, m, table.data());
    const std::uint64_t* deck = table.data() + detail::sweep_deck_offset(m);
    for (std::size_t i = 0; i < deck_size; ++i) counts[i] = deck[i];
  } else {
    std::vector<ExactInt> table(table_size);
    detail::sweep_init(table.data(), m);
    detail::sweep_counts(n, digit_at, m, table.data());
    for (std::size_t i = 0; i < deck_size; ++i)
      counts[i] = std::move(table[detail::sweep_deck_offset(m) + i]);
  }
  return Deck(m, n, std::move(counts));
}

Deck marginalize(const Deck& d, int j) {
  const int m = d.m();
  if (j < 0 || j > m) throw DomainError("marginalize requires 0 <= j <= m");

  const std::size_t out_size = std::size_t{1} << j;
  std::vector<ExactInt> sums(out_size);

  // One row of occurrence counts per source word z: occ_row[y] for all
  // |y| = j at once, so no per-(y,z) dynamic program is ever repeated.
  const std::size_t row_table_size = (std::size_t{2} << j) - 1;
  std::vector<std::uint64_t> row(row_table_size);
  const std::size_t z_count = std::size_t{1} << m;
  for (std::size_t z = 0; z < z_count; ++z) {
    const ExactInt& cz = d.count(static_cast<std::uint32_t>(z));
    if (cz == 0) continue;
    detail::sweep_init(row.data(), j);
    const auto digit_at = [z, m](std::uint64_t i) {
      return static_cast<int>((z >> (m - 1 - i)) & 1);
    };
    detail::sweep_counts(static_cast<std::uint64_t>(m), digit_at, j, row.data());
    const std::uint64_t* occ = row.data() + detail::sweep_deck_offset(j);
    for (std::size_t y = 0; y < out_size; ++y) {
      if (occ[y]) sums[y] += cz * occ[y];
    }
  }

  const ExactInt divisor = binomial(d.n() - static_cast<std::uint64_t>(j),
                                    static_cast<std::uint64_t>(m - j));
  std::vector<ExactInt> counts(out_size);
  for (std::size_t y = 0; y < out_size; ++y) {
    ExactInt q, r;
    boost::multiprecision::divide_qr(sums[y], divisor, q, r);
    if (r != 0)
      throw IntegrityError("marginalization divides inexactly: corrupted deck");
    counts[y] = std::move(q);
  }
  return Deck(j, d.n(), std::move(counts));
}

std::vector<ExactRational> deck_to_distribution(const Deck& d) {
  const ExactInt total = binomial(d.n(), static_cast<std::uint64_t>(d.m()));
  std::vector<ExactRational> probs;
  probs.reserve(d.counts().size());
  ExactRational sum = 0;
  for (const ExactInt& c : d.counts()) {
    probs.emplace_back(ExactRational(c) / ExactRational(total));
    sum += probs.back();
  }
  if (sum != 1) throw IntegrityError("deck probabilities do not sum to 1");
  return probs;
}

std::uint32_t transform_index(std::uint32_t index, int m, bool complement, bool reverse) {
  const std::uint32_t mask =
      m >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << m) - 1);
  std::uint32_t v = index;
  if (reverse) {
    std::uint32_t r = 0;
    for (int i = 0; i < m; ++i) {
      r = (r << 1) | (v & 1);
      v >>= 1;
    }
    v = r;
  }
  if (complement) v ^= mask;
  return v;
}

Deck transform_deck(const Deck& d, bool complement, bool reverse) {
  const std::size_t size = d.counts().size();
  std::vector<ExactInt> counts(size);
  for (std::size_t i = 0; i < size; ++i)
    counts[i] = d.count(transform_index(static_cast<std::uint32_t>(i), d.m(),
                                        complement, reverse));
  return Deck(d.m(), d.n(), std::move(counts));
}

namespace detail {

namespace {

inline std::uint64_t rotl64(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

inline std::uint64_t fmix64(std::uint64_t k) {
  k ^= k >> 33;
  k *= 0xff51afd7ed558ccdULL;
  k ^= k >> 33;
  k *= 0xc4ceb9fe1a85ec53ULL;
  k ^= k >> 33;
  return k;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

}  // namespace

void serialize_deck_header(std::vector<std::uint8_t>& out, int m, std::uint64_t n) {
  out.push_back('D');
  out.push_back('K');
  out.push_back('0');
  out.push_back('1');
  put_u32(out, static_cast<std::uint32_t>(m));
  put_u64(out, n);
}

void serialize_count(std::vector<std::uint8_t>& out, std::uint64_t count) {
  const std::size_t len_pos = out.size();
  put_u32(out, 0);
  std::uint32_t len = 0;
  while (count) {
    out.push_back(static_cast<std::uint8_t>(count & 0xff));
    count >>= 8;
    ++len;
  }
  out[len_pos] = static_cast<std::uint8_t>(len);  // len < 256 always here
}

void serialize_count(std::vector<std::uint8_t>& out, const ExactInt& count) {
  const std::size_t len_pos = out.size();
  put_u32(out, 0);
  std::uint32_t len = 0;
  ExactInt v = count;
  while (v != 0) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    v >>= 8;
    ++len;
  }
  for (int i = 0; i < 4; ++i)
    out[len_pos + i] = static_cast<std::uint8_t>(len >> (8 * i));
}

// MurmurHash3 x64 128 (Austin Appleby's public-domain algorithm), widened to
// a 64-bit seed: h1 = h2 = seed.
Fingerprint murmur3_x64_128(const std::uint8_t* data, std::size_t len, std::uint64_t seed) {
  const std::size_t nblocks = len / 16;
  std::uint64_t h1 = seed;
  std::uint64_t h2 = seed;
  const std::uint64_t c1 = 0x87c37b91114253d5ULL;
  const std::uint64_t c2 = 0x4cf5ad432745937fULL;

  for (std::size_t i = 0; i < nblocks; ++i) {
    std::uint64_t k1, k2;
    std::memcpy(&k1, data + i * 16, 8);
    std::memcpy(&k2, data + i * 16 + 8, 8);
    k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
    h1 = rotl64(h1, 27); h1 += h2; h1 = h1 * 5 + 0x52dce729;
    k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2;
    h2 = rotl64(h2, 31); h2 += h1; h2 = h2 * 5 + 0x38495ab5;
  }

  const std::uint8_t* tail = data + nblocks * 16;
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  switch (len & 15) {
    case 15: k2 ^= std::uint64_t(tail[14]) << 48; [[fallthrough]];
    case 14: k2 ^= std::uint64_t(tail[13]) << 40; [[fallthrough]];
    case 13: k2 ^= std::uint64_t(tail[12]) << 32; [[fallthrough]];
    case 12: k2 ^= std::uint64_t(tail[11]) << 24; [[fallthrough]];
    case 11: k2 ^= std::uint64_t(tail[10]) << 16; [[fallthrough]];
    case 10: k2 ^= std::uint64_t(tail[9]) << 8; [[fallthrough]];
    case 9:  k2 ^= std::uint64_t(tail[8]);
             k2 *= c2; k2 = rotl64(k2, 33); k2 *= c1; h2 ^= k2; [[fallthrough]];
    case 8:  k1 ^= std::uint64_t(tail[7]) << 56; [[fallthrough]];
    case 7:  k1 ^= std::uint64_t(tail[6]) << 48; [[fallthrough]];
    case 6:  k1 ^= std::uint64_t(tail[5]) << 40; [[fallthrough]];
    case 5:  k1 ^= std::uint64_t(tail[4]) << 32; [[fallthrough]];
    case 4:  k1 ^= std::uint64_t(tail[3]) << 24; [[fallthrough]];
    case 3:  k1 ^= std::uint64_t(tail[2]) << 16; [[fallthrough]];
    case 2:  k1 ^= std::uint64_t(tail[1]) << 8; [[fallthrough]];
    case 1:  k1 ^= std::uint64_t(tail[0]);
             k1 *= c1; k1 = rotl64(k1, 31); k1 *= c2; h1 ^= k1;
  }

  h1 ^= static_cast<std::uint64_t>(len);
  h2 ^= static_cast<std::uint64_t>(len);
  h1 += h2;
  h2 += h1;
  h1 = fmix64(h1);
  h2 = fmix64(h2);
  h1 += h2;
  h2 += h1;
  return Fingerprint{h1, h2};
}

}  // namespace detail

std::string Fingerprint::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s(32, '0');
  for (int i = 0; i < 16; ++i) {
    const std::uint64_t word = i < 8 ? hi : lo;
    const int shift = 8 * (7 - (i % 8));
    const std::uint8_t byte = static_cast<std::uint8_t>(word >> shift);
    s[2 * i] = digits[byte >> 4];
    s[2 * i + 1] = digits[byte & 0xf];
  }
  return s;
}

Fingerprint fingerprint(const Deck& d, std::uint64_t seed) {
  std::vector<std::uint8_t> bytes;
  bytes.reserve(16 + d.counts().size() * 12);
  detail::serialize_deck_header(bytes, d.m(), d.n());
  for (const ExactInt& c : d.counts()) detail::serialize_count(bytes, c);
  return detail::murmur3_x64_128(bytes.data(), bytes.size(), seed);
}

void write_deck(std::ostream& os, const Deck& d) {
  os << "deck m=" << d.m() << " n=" << d.n() << "\n";
  const std::size_t size = d.counts().size();
  for (std::size_t i = 0; i < size; ++i) {
    os << Deck::word_of(static_cast<std::uint32_t>(i), d.m()).text() << ' '
       << d.count(static_cast<std::uint32_t>(i)).str() << "\n";
  }
}

Deck read_deck(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw ParseError("deck file: missing header");
  int m = -1;
  unsigned long long n = 0;
  if (std::sscanf(header.c_str(), "deck m=%d n=%llu", &m, &n) != 2)
    throw ParseError("deck file: bad header '" + header + "'");
  if (m < 0 || m > kMaxDeckM) throw ParseError("deck file: unsupported m");

  const std::size_t size = std::size_t{1} << m;
  std::vector<ExactInt> counts;
  counts.reserve(size);
  std::string line;
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::getline(is, line))
      throw ParseError("deck file: expected " + std::to_string(size) + " count lines");
    if (line.size() < static_cast<std::size_t>(m) + 2 ||
        line[static_cast<std::size_t>(m)] != ' ')
      throw ParseError("deck file: malformed line '" + line + "'");
    const std::string word = line.substr(0, static_cast<std::size_t>(m));
    const BitString y = BitString::from_text(word);
    if (Deck::index_of(y) != i)
      throw ParseError("deck file: line out of order: '" + line + "'");
    const std::string digits = line.substr(static_cast<std::size_t>(m) + 1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("deck file: bad count '" + digits + "'");
    counts.emplace_back(digits);
  }
  return Deck(m, n, std::move(counts));
}

Deck load_deck(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open deck file: " + path);
  return read_deck(in);
}

}  // namespace mdeck
