#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <vector>

#include "mdeck/deck.hpp"

using namespace mdeck;

namespace {

BitString bits(const char* s) { return BitString::from_text(s); }

std::vector<BitString> all_strings(int n) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x;
    for (int i = n - 1; i >= 0; --i) x.push_back(static_cast<int>((v >> i) & 1));
    out.push_back(std::move(x));
  }
  return out;
}

// Oracle: tally every m-subset of positions explicitly.
std::vector<std::uint64_t> deck_by_enumeration(const BitString& x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::uint64_t> counts(std::size_t{1} << m, 0);
  std::vector<int> idx(m);
  for (int i = 0; i < m; ++i) idx[i] = i;
  if (m > n) return counts;
  for (;;) {
    std::uint32_t word = 0;
    for (int i = 0; i < m; ++i) word = (word << 1) | static_cast<std::uint32_t>(x[idx[i]]);
    ++counts[word];
    int i = m - 1;
    while (i >= 0 && idx[i] == n - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return counts;
}

Deck deck_of(const char* s, int m) { return compute_deck(bits(s), m); }

}  // namespace

TEST_CASE("occurrence_count examples") {
  CHECK(occurrence_count(bits("01"), bits("0110")) == 2);
  CHECK(occurrence_count(BitString{}, bits("0110")) == 1);
  CHECK(occurrence_count(BitString{}, BitString{}) == 1);
  CHECK(occurrence_count(bits("010"), bits("01")) == 0);
  CHECK(occurrence_count(bits("11"), bits("0110")) == 1);
}

TEST_CASE("compute_deck small examples") {
  const Deck d = deck_of("0110", 2);
  CHECK(d.count(bits("00")) == 1);
  CHECK(d.count(bits("01")) == 2);
  CHECK(d.count(bits("10")) == 2);
  CHECK(d.count(bits("11")) == 1);
  CHECK(deck_of("0110", 2) == deck_of("1001", 2));

  const Deck single = deck_of("0", 1);
  CHECK(single.count(bits("0")) == 1);
  CHECK(single.count(bits("1")) == 0);

  CHECK_THROWS_WITH_AS(deck_of("01", 3), doctest::Contains("m exceeds"), DomainError);
}

TEST_CASE("compute_deck agrees with index-subset enumeration, n <= 12, m <= 5") {
  for (int n = 0; n <= 12; ++n) {
    for (const BitString& x : all_strings(n)) {
      for (int m = 0; m <= std::min(n, 5); ++m) {
        const Deck d = compute_deck(x, m);
        const auto oracle = deck_by_enumeration(x, m);
        for (std::size_t i = 0; i < oracle.size(); ++i) {
          CAPTURE(x.text());
          CAPTURE(m);
          CAPTURE(i);
          CHECK(d.count(static_cast<std::uint32_t>(i)) == oracle[i]);
        }
      }
    }
  }
}

TEST_CASE("deck construction enforces the sum invariant") {
  CHECK_THROWS_AS(Deck(1, 2, {ExactInt(1), ExactInt(2)}), IntegrityError);
  CHECK_THROWS_AS(Deck(1, 2, {ExactInt(3), ExactInt(-1)}), IntegrityError);
  CHECK_THROWS_AS(Deck(1, 2, {ExactInt(2)}), IntegrityError);
  CHECK_THROWS_AS(Deck(3, 2, {ExactInt(0)}), DomainError);  // m > n
  CHECK_NOTHROW(Deck(1, 2, {ExactInt(1), ExactInt(1)}));
}

TEST_CASE("marginalize examples") {
  const Deck d = deck_of("0110", 2);
  const Deck ones = marginalize(d, 1);
  CHECK(ones.count(bits("0")) == 2);
  CHECK(ones.count(bits("1")) == 2);
  CHECK(marginalize(d, 2) == d);
  const Deck empty = marginalize(d, 0);
  CHECK(empty.m() == 0);
  CHECK(empty.count(std::uint32_t{0}) == 1);
  CHECK_THROWS_AS(marginalize(d, 3), DomainError);
}

TEST_CASE("marginalize agrees with direct computation, |x| <= 10") {
  for (int n = 0; n <= 10; ++n) {
    for (const BitString& x : all_strings(n)) {
      for (int m = 0; m <= std::min(n, 5); ++m) {
        const Deck d = compute_deck(x, m);
        for (int j = 0; j <= m; ++j) {
          CAPTURE(x.text());
          CAPTURE(m);
          CAPTURE(j);
          CHECK(marginalize(d, j) == compute_deck(x, j));
        }
      }
    }
  }
}

TEST_CASE("two-stage marginalization equals one stage") {
  for (const char* s : {"01101001", "11110000", "01010101", "00000000"}) {
    const Deck d = deck_of(s, 4);
    for (int j = 0; j <= 4; ++j)
      for (int i = 0; i <= j; ++i) {
        CAPTURE(s);
        CAPTURE(j);
        CAPTURE(i);
        CHECK(marginalize(marginalize(d, j), i) == marginalize(d, i));
      }
  }
}

TEST_CASE("deck_to_distribution gives exact probabilities") {
  const auto probs = deck_to_distribution(deck_of("0110", 2));
  CHECK(probs[0] == ExactRational(1, 6));
  CHECK(probs[1] == ExactRational(1, 3));
  CHECK(probs[2] == ExactRational(1, 3));
  CHECK(probs[3] == ExactRational(1, 6));

  const auto point = deck_to_distribution(deck_of("0", 1));
  CHECK(point[0] == 1);
  CHECK(point[1] == 0);

  const auto uniform_source = deck_to_distribution(deck_of("0000", 2));
  CHECK(uniform_source[0] == 1);
  CHECK(uniform_source[1] == 0);
  CHECK(uniform_source[2] == 0);
  CHECK(uniform_source[3] == 0);
}

TEST_CASE("transform_deck examples") {
  CHECK(transform_deck(deck_of("0110", 2), true, false) == deck_of("1001", 2));
  const Deck d = deck_of("0110", 2);
  CHECK(transform_deck(d, false, false) == d);
  CHECK(transform_deck(deck_of("01", 1), false, true) == deck_of("10", 1));
}

TEST_CASE("transform_deck matches transforming the string, |x| <= 10, m <= 4") {
  for (int n = 0; n <= 10; ++n) {
    for (const BitString& x : all_strings(n)) {
      for (int m = 0; m <= std::min(n, 4); ++m) {
        const Deck d = compute_deck(x, m);
        for (int flags = 0; flags < 4; ++flags) {
          const bool comp = flags & 1;
          const bool rev = flags & 2;
          BitString y = x;
          if (comp) y = y.complemented();
          if (rev) y = y.reversed();
          CAPTURE(x.text());
          CAPTURE(m);
          CAPTURE(flags);
          CHECK(transform_deck(d, comp, rev) == compute_deck(y, m));
        }
      }
    }
  }
}

TEST_CASE("fingerprint: equal decks agree, differing decks verified different") {
  const Deck a = deck_of("0110", 2);
  const Deck b = deck_of("1001", 2);
  CHECK(a == b);  // exact comparison first; fingerprints then must match
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK(fingerprint(a) == fingerprint(a));

  const Deck c = deck_of("01", 2);
  const Deck d = deck_of("11", 2);
  CHECK(c != d);
  CHECK(fingerprint(c) != fingerprint(d));

  // Seeds matter (used by the filter-completeness rerun in the search).
  CHECK(fingerprint(a, 1) != fingerprint(a, 2));
  CHECK(fingerprint(a).hex().size() == 32);
}

TEST_CASE("deck text format round-trips bit-exactly") {
  for (const char* s : {"0110", "01001", "1111", "0"}) {
    for (int m = 0; m <= 3; ++m) {
      if (static_cast<std::size_t>(m) > std::string(s).size()) continue;
      const Deck d = deck_of(s, m);
      std::ostringstream first;
      write_deck(first, d);
      std::istringstream in(first.str());
      const Deck back = read_deck(in);
      CHECK(back == d);
      std::ostringstream second;
      write_deck(second, back);
      CHECK(second.str() == first.str());
    }
  }
}

TEST_CASE("deck reader rejects malformed input") {
  const auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_deck(in);
  };
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("deck m=1 n=2\n0 1\n"), ParseError);          // truncated
  CHECK_THROWS_AS(parse("deck m=1 n=2\n1 1\n0 1\n"), ParseError);     // out of order
  CHECK_THROWS_AS(parse("deck m=1 n=2\n0 x\n1 1\n"), ParseError);     // bad count
  CHECK_THROWS_AS(parse("junk\n"), ParseError);
  CHECK_THROWS_AS(parse("deck m=1 n=2\n0 2\n1 1\n"), IntegrityError);  // bad sum
}
