#include "mdeck/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>

namespace mdeck {

BitString::BitString(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  for (std::uint8_t d : digits_) {
    if (d > 1) throw DomainError("BitString digit out of range: " + std::to_string(d));
  }
}

BitString BitString::from_text(std::string_view text) {
  BitString out;
  out.digits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw ParseError(std::string("invalid binary digit '") + c + "'");
    out.digits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

void BitString::push_back(int digit) {
  if (digit != 0 && digit != 1) throw DomainError("digit must be 0 or 1");
  digits_.push_back(static_cast<std::uint8_t>(digit));
}

std::size_t BitString::count_ones() const noexcept {
  return static_cast<std::size_t>(std::count(digits_.begin(), digits_.end(), std::uint8_t{1}));
}

BitString BitString::complemented() const {
  BitString out = *this;
  for (auto& d : out.digits_) d ^= 1;
  return out;
}

BitString BitString::reversed() const {
  BitString out = *this;
  std::reverse(out.digits_.begin(), out.digits_.end());
  return out;
}

std::string BitString::text() const {
  std::string s(digits_.size(), '0');
  for (std::size_t i = 0; i < digits_.size(); ++i) s[i] = static_cast<char>('0' + digits_[i]);
  return s;
}

RunLengthString::RunLengthString(std::vector<Run> runs) {
  runs_.reserve(runs.size());
  for (const Run& r : runs) {
    if (r.count == 0) throw DomainError("run count must be positive");
    if (r.digit != 0 && r.digit != 1) throw DomainError("run digit must be 0 or 1");
    if (!runs_.empty() && runs_.back().digit == r.digit) {
      runs_.back().count += r.count;
    } else {
      runs_.push_back(r);
    }
  }
}

namespace {

Run parse_run_token(std::string_view token) {
  const std::size_t sep = token.find('_');
  const std::string shown(token);
  if (sep == std::string_view::npos || sep == 0 || sep + 2 != token.size())
    throw ParseError("malformed run token '" + shown + "'");
  std::uint64_t count = 0;
  const char* first = token.data();
  const char* last = token.data() + sep;
  auto [ptr, ec] = std::from_chars(first, last, count);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("malformed run count in token '" + shown + "'");
  if (count == 0) throw ParseError("zero run count in token '" + shown + "'");
  const char digit = token[sep + 1];
  if (digit != '0' && digit != '1')
    throw ParseError("run digit must be 0 or 1 in token '" + shown + "'");
  return Run{count, digit - '0'};
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

RunLengthString RunLengthString::parse(std::string_view text) {
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    runs.push_back(parse_run_token(text.substr(i, j - i)));
    i = j;
  }
  if (runs.empty()) throw ParseError("empty input: no run tokens");
  return RunLengthString(std::move(runs));
}

RunLengthString RunLengthString::of(const BitString& x) {
  std::vector<Run> runs;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!runs.empty() && runs.back().digit == x[i])
      ++runs.back().count;
    else
      runs.push_back(Run{1, x[i]});
  }
  RunLengthString out;
  out.runs_ = std::move(runs);  // already maximal
  return out;
}

std::uint64_t RunLengthString::length() const noexcept {
  std::uint64_t total = 0;
  for (const Run& r : runs_) total += r.count;
  return total;
}

BitString RunLengthString::expand() const {
  const std::uint64_t total = length();
  if (total > kMaxExpandedLength)
    throw ResourceError("run-length expansion of " + std::to_string(total) +
                        " digits exceeds the limit");
  std::vector<std::uint8_t> digits;
  digits.reserve(static_cast<std::size_t>(total));
  for (const Run& r : runs_)
    digits.insert(digits.end(), static_cast<std::size_t>(r.count),
                  static_cast<std::uint8_t>(r.digit));
  return BitString(std::move(digits));
}

std::string RunLengthString::text() const {
  std::string out;
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(runs_[i].count);
    out += '_';
    out += static_cast<char>('0' + runs_[i].digit);
  }
  return out;
}

BitString parse_rle(std::string_view text) {
  if (text.find('_') != std::string_view::npos)
    return RunLengthString::parse(text).expand();
  // Plain notation; allow surrounding whitespace only.
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  if (b == e) throw ParseError("empty input");
  return BitString::from_text(text.substr(b, e - b));
}

std::string to_rle(const BitString& x) { return RunLengthString::of(x).text(); }

ExactInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (n - k < k) k = n - k;
  ExactInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;  // exact: product of i consecutive integers is divisible by i!
  }
  return result;
}

bool binomials_fit_u64(std::uint64_t n, int m) {
  if (m < 0) return true;
  // C(n, j) is increasing in j up to n/2, so the peak over j <= m is here.
  const std::uint64_t peak = std::min<std::uint64_t>(static_cast<std::uint64_t>(m), n / 2);
  return binomial(n, peak) <= std::numeric_limits<std::uint64_t>::max();
}

}  // namespace mdeck
