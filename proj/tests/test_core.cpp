#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <vector>

#include "mdeck/core.hpp"

using namespace mdeck;

namespace {

BitString bits(const char* s) { return BitString::from_text(s); }

// All strings of length n in lexicographic order.
std::vector<BitString> all_strings(int n) {
  std::vector<BitString> out;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x;
    for (int i = n - 1; i >= 0; --i) x.push_back(static_cast<int>((v >> i) & 1));
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

TEST_CASE("parse_rle expands run tokens") {
  CHECK(parse_rle("2_0") == bits("00"));
  CHECK(parse_rle("3_1") == bits("111"));
  CHECK(parse_rle("1_0 1_1") == bits("01"));
  CHECK(parse_rle("1_0 2_1 1_0") == bits("0110"));
  CHECK(parse_rle("  2_0\t1_1 ") == bits("001"));
}

TEST_CASE("parse_rle passes plain strings through verbatim") {
  CHECK(parse_rle("0110") == bits("0110"));
  CHECK(parse_rle(" 0110 ") == bits("0110"));
  CHECK(parse_rle("0") == bits("0"));
}

TEST_CASE("parse_rle merges adjacent runs of the same digit") {
  CHECK(parse_rle("1_0 1_0") == bits("00"));
  CHECK(parse_rle("2_1 3_1 1_0") == bits("111110"));
  CHECK(RunLengthString::parse("1_0 1_0").text() == "2_0");
}

TEST_CASE("parse_rle rejects malformed input, naming the token") {
  CHECK_THROWS_WITH_AS(parse_rle("2-0 1_1"), doctest::Contains("2-0"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rle("0_1"), doctest::Contains("0_1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rle("1_2"), doctest::Contains("1_2"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rle("x_1"), doctest::Contains("x_1"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rle("1_"), doctest::Contains("1_"), ParseError);
  CHECK_THROWS_WITH_AS(parse_rle("1_00"), doctest::Contains("1_00"), ParseError);
  CHECK_THROWS_AS(parse_rle(""), ParseError);
  CHECK_THROWS_AS(parse_rle("   "), ParseError);
  CHECK_THROWS_AS(parse_rle("01injection"), ParseError);
}

TEST_CASE("to_rle produces the canonical maximal-run encoding") {
  CHECK(to_rle(bits("00")) == "2_0");
  CHECK(to_rle(bits("0110")) == "1_0 2_1 1_0");
  CHECK(to_rle(BitString{}) == "");
  CHECK(to_rle(bits("1")) == "1_1");
}

TEST_CASE("parse_rle inverts to_rle on every string of length 1..12") {
  for (int n = 1; n <= 12; ++n) {
    for (const BitString& x : all_strings(n)) {
      CAPTURE(x.text());
      CHECK(parse_rle(to_rle(x)) == x);
    }
  }
}

TEST_CASE("run-length expansion refuses absurd totals") {
  CHECK_THROWS_AS(parse_rle("99999999999_1"), ResourceError);
}

TEST_CASE("binomial small cases") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(3, 7) == 0);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
}

TEST_CASE("binomial agrees with the Pascal-triangle recurrence up to 120") {
  // Independent route: pure additive triangle.
  std::vector<std::vector<ExactInt>> tri(121);
  for (int n = 0; n <= 120; ++n) {
    tri[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) tri[n][k] = tri[n - 1][k - 1] + tri[n - 1][k];
  }
  for (int n = 0; n <= 120; ++n)
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(binomial(n, k) == tri[n][k]);
    }
  CHECK(binomial(106, 8) == tri[106][8]);
}

TEST_CASE("binomial rows sum to powers of two up to n = 60") {
  for (int n = 0; n <= 60; ++n) {
    ExactInt sum = 0;
    for (int k = 0; k <= n; ++k) sum += binomial(n, k);
    CHECK(sum == ExactInt(1) << n);
  }
}

TEST_CASE("binomials_fit_u64 detects the u64 boundary") {
  CHECK(binomials_fit_u64(106, 8));
  CHECK(binomials_fit_u64(62, 31));
  CHECK(binomials_fit_u64(66, 33));
  CHECK_FALSE(binomials_fit_u64(68, 34));   // C(68,34) > 2^64
  CHECK_FALSE(binomials_fit_u64(1000, 8));  // C(1000,8) > 2^64
}

TEST_CASE("BitString basics") {
  CHECK(bits("0110").size() == 4);
  CHECK(bits("0110").count_ones() == 2);
  CHECK(bits("0110").complemented() == bits("1001"));
  CHECK(bits("0010").reversed() == bits("0100"));
  CHECK(bits("01") < bits("10"));
  CHECK(bits("0110").text() == "0110");
  CHECK(BitString{}.empty());
  CHECK_THROWS_AS(BitString::from_text("012"), ParseError);
  BitString x;
  CHECK_THROWS_AS(x.push_back(2), DomainError);
}
