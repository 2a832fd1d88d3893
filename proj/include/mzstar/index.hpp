#pragma once

// Signed (alternating) indices and the two-block shape
// ({2}^{a_0}, c_1, {2}^{a_1}, ..., c_d, {2}^{a_d}[, 1]).

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "mzstar/error.hpp"

namespace mzstar {

/// One entry s_j of an index; `barred` entries contribute (-1)^k.
struct Entry {
  unsigned magnitude = 1;
  bool barred = false;

  [[nodiscard]] int sign() const { return barred ? -1 : 1; }
  [[nodiscard]] long as_signed() const {
    return barred ? -static_cast<long>(magnitude) : static_cast<long>(magnitude);
  }
  static Entry from_signed(long v) {
    if (v == 0) throw ParseError("index entry must be nonzero");
    return v < 0 ? Entry{static_cast<unsigned>(-v), true} : Entry{static_cast<unsigned>(v), false};
  }

  friend bool operator==(const Entry&, const Entry&) = default;
  friend std::strong_ordering operator<=>(const Entry& x, const Entry& y) {
    if (auto c = x.magnitude <=> y.magnitude; c != 0) return c;
    return x.barred <=> y.barred;
  }
};

/// A composition with per-entry sign. The empty index is legal and stands for 1.
class SignedIndex {
 public:
  SignedIndex() = default;
  explicit SignedIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_)
      if (e.magnitude == 0) throw ParseError("index entry magnitude must be >= 1");
  }
  /// Unbarred index from magnitudes.
  static SignedIndex of(std::initializer_list<unsigned> mags) {
    std::vector<Entry> es;
    for (unsigned m : mags) es.push_back({m, false});
    return SignedIndex(std::move(es));
  }
  /// Negative values denote barred entries.
  static SignedIndex from_signed(const std::vector<long>& values) {
    std::vector<Entry> es;
    es.reserve(values.size());
    for (long v : values) es.push_back(Entry::from_signed(v));
    return SignedIndex(std::move(es));
  }

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] std::size_t depth() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] const Entry& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] unsigned weight() const {
    return std::accumulate(entries_.begin(), entries_.end(), 0u,
                           [](unsigned acc, const Entry& e) { return acc + e.magnitude; });
  }
  [[nodiscard]] bool all_unbarred() const {
    return std::none_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.barred; });
  }
  /// Leading entry barred or of magnitude >= 2 (the empty index also converges).
  [[nodiscard]] bool converges() const {
    return entries_.empty() || entries_.front().barred || entries_.front().magnitude >= 2;
  }
  [[nodiscard]] SignedIndex tail() const {
    if (entries_.empty()) return {};
    return SignedIndex(std::vector<Entry>(entries_.begin() + 1, entries_.end()));
  }
  [[nodiscard]] std::vector<long> to_signed() const {
    std::vector<long> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.as_signed());
    return out;
  }

  friend bool operator==(const SignedIndex&, const SignedIndex&) = default;
  /// Canonical order: weight, then depth, then entries lexicographically.
  friend std::strong_ordering operator<=>(const SignedIndex& x, const SignedIndex& y) {
    if (auto c = x.weight() <=> y.weight(); c != 0) return c;
    if (auto c = x.depth() <=> y.depth(); c != 0) return c;
    return std::lexicographical_compare_three_way(x.entries_.begin(), x.entries_.end(),
                                                  y.entries_.begin(), y.entries_.end());
  }

 private:
  std::vector<Entry> entries_;
};

/// Comma-separated rendering with negative numbers for barred entries: "3,-2,1".
inline std::string render(const SignedIndex& s) {
  std::string out;
  for (std::size_t i = 0; i < s.depth(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i].as_signed());
  }
  return out;
}

namespace detail {

inline bool all_digits(std::string_view t) {
  return !t.empty() && std::all_of(t.begin(), t.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

inline unsigned parse_count(std::string_view digits, std::string_view token) {
  if (!all_digits(digits)) throw ParseError("malformed index term '" + std::string(token) + "'");
  unsigned long v = 0;
  for (char ch : digits) {
    v = v * 10 + static_cast<unsigned long>(ch - '0');
    if (v > 1'000'000) throw ParseError("index term out of range '" + std::string(token) + "'");
  }
  return static_cast<unsigned>(v);
}

}  // namespace detail

/// Parses `term ("," term)*` with term := ["-"] digits | digits "^" digits.
/// "s^m" expands to m copies of s; "-s" is the barred entry. Whitespace is ignored
/// and blank text yields the empty index.
inline SignedIndex parse_index(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (ch != ' ' && ch != '\t' && ch != '\n' && ch != '\r') compact += ch;
  std::vector<Entry> entries;
  if (compact.empty()) return {};

  std::size_t start = 0;
  while (true) {
    const std::size_t comma = compact.find(',', start);
    const std::string_view token =
        std::string_view(compact).substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (token.empty()) throw ParseError("empty index term");

    const bool barred = token.front() == '-';
    const std::string_view body = barred ? token.substr(1) : token;
    const std::size_t caret = body.find('^');
    if (caret != std::string_view::npos) {
      if (barred) throw ParseError("repetition applied to barred entry '" + std::string(token) + "'");
      const unsigned mag = detail::parse_count(body.substr(0, caret), token);
      const unsigned reps = detail::parse_count(body.substr(caret + 1), token);
      if (mag == 0) throw ParseError("zero magnitude in '" + std::string(token) + "'");
      entries.insert(entries.end(), reps, Entry{mag, false});
    } else {
      const unsigned mag = detail::parse_count(body, token);
      if (mag == 0) throw ParseError("zero magnitude in '" + std::string(token) + "'");
      entries.push_back({mag, barred});
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return SignedIndex(std::move(entries));
}

/// Per-block delta values delta_0..delta_d, each in {0,1,2,3}.
struct DeltaProfile {
  std::vector<unsigned> deltas;
  friend bool operator==(const DeltaProfile&, const DeltaProfile&) = default;
};

/// delta(c): 2 for c = 0, 1 for c = 1, 0 for c >= 3.
inline unsigned small_delta(unsigned c) {
  switch (c) {
    case 0: return 2;
    case 1: return 1;
    case 2: throw DomainError("small_delta is undefined at c = 2");
    default: return 0;
  }
}

/// ({2}^{a_0}, c_1, {2}^{a_1}, ..., c_d, {2}^{a_d}) with every c_i != 2, optionally
/// followed by a final 1 (`trailing_one`).
struct TwoBlockIndex {
  std::vector<unsigned> a{0};
  std::vector<unsigned> c;
  bool trailing_one = false;

  TwoBlockIndex() = default;
  TwoBlockIndex(std::vector<unsigned> blocks, std::vector<unsigned> separators, bool trailing = false)
      : a(std::move(blocks)), c(std::move(separators)), trailing_one(trailing) {
    validate();
  }

  void validate() const {
    if (a.size() != c.size() + 1)
      throw DomainError("two-block index needs exactly one more block than separators");
    for (unsigned ci : c) {
      if (ci == 2) throw DomainError("two-block separator must differ from 2");
      if (ci == 0) throw DomainError("two-block separator must be positive");
    }
  }

  [[nodiscard]] std::size_t d() const { return c.size(); }

  /// Star value converges iff a_0 >= 1, or d >= 1 and c_1 >= 3.
  [[nodiscard]] bool converges() const { return a[0] >= 1 || (!c.empty() && c[0] >= 3); }

  [[nodiscard]] SignedIndex flatten() const {
    std::vector<Entry> es;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i > 0) es.push_back({c[i - 1], false});
      es.insert(es.end(), a[i], Entry{2, false});
    }
    if (trailing_one) es.push_back({1, false});
    return SignedIndex(std::move(es));
  }

  /// delta_i = delta(c_i) + delta(c_{i+1}) with c_0 = 1 and c_{d+1} = 0 (or 1 with trailing one).
  [[nodiscard]] DeltaProfile delta_profile() const {
    DeltaProfile p;
    const std::size_t dd = d();
    for (std::size_t i = 0; i <= dd; ++i) {
      const unsigned left = i == 0 ? 1 : c[i - 1];
      const unsigned right = i == dd ? (trailing_one ? 1u : 0u) : c[i];
      p.deltas.push_back(small_delta(left) + small_delta(right));
    }
    return p;
  }

  friend bool operator==(const TwoBlockIndex&, const TwoBlockIndex&) = default;
};

/// Splits an unbarred index into runs of 2s separated by non-2 entries. With
/// `absorb_trailing_one`, a final 1 is taken as the trailing one instead of a separator.
inline TwoBlockIndex detect_two_block(const SignedIndex& s, bool absorb_trailing_one = false) {
  if (!s.all_unbarred()) throw ParseError("two-block shape requires an unbarred index, got " + render(s));
  std::size_t end = s.depth();
  bool trailing = false;
  if (absorb_trailing_one) {
    if (end == 0 || s[end - 1].magnitude != 1)
      throw ParseError("index " + render(s) + " does not end in 1");
    trailing = true;
    --end;
  }
  TwoBlockIndex t;
  t.a = {0};
  t.c.clear();
  t.trailing_one = trailing;
  for (std::size_t i = 0; i < end; ++i) {
    if (s[i].magnitude == 2) {
      ++t.a.back();
    } else {
      t.c.push_back(s[i].magnitude);
      t.a.push_back(0);
    }
  }
  return t;
}

/// All 2^(d-1) indices p_1 o p_2 o ... o p_d where o is "," or "+".
inline std::vector<SignedIndex> compositions(const std::vector<unsigned>& parts) {
  if (parts.empty()) throw DomainError("compositions of an empty part list");
  if (parts.size() > 30) throw DomainError("too many parts for composition enumeration");
  std::vector<SignedIndex> out;
  const std::uint32_t choices = 1u << (parts.size() - 1);
  for (std::uint32_t mask = 0; mask < choices; ++mask) {
    std::vector<Entry> es{{parts[0], false}};
    for (std::size_t j = 1; j < parts.size(); ++j) {
      if (mask & (1u << (j - 1)))
        es.back().magnitude += parts[j];
      else
        es.push_back({parts[j], false});
    }
    out.emplace_back(std::move(es));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mzstar
