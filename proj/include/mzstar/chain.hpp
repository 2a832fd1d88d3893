#pragma once

// Symbolic expansion of multiple zeta star values into alternating Euler sums.
//
// A ChainSum is a weighted non-strict nested sum
//
//   scalar * sum_{v_0 >= v_1 >= ... >= v_L >= 1} prod_j sgn_j^{v_j} / v_j^{e_j} * prod_links w(v_j, v_{j+1})
//
// where a COND2 link weighs 2 when v_j > v_{j+1} and 1 when they are equal.
// Expansion resolves each ">=" into ">" or "=", merging tied variables.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mzstar/error.hpp"
#include "mzstar/exact.hpp"
#include "mzstar/index.hpp"

namespace mzstar {

enum class Link : std::uint8_t { COND2, PLAIN };

struct ChainVar {
  unsigned exponent = 1;
  unsigned parity = 0;  // 1: factor (-1)^v
  friend bool operator==(const ChainVar&, const ChainVar&) = default;
};

struct ChainSum {
  BigRational scalar{1};
  std::vector<ChainVar> vars;
  std::vector<Link> links;  // links[j] joins vars[j] and vars[j+1]

  void validate() const {
    if (vars.empty()) throw DomainError("chain needs at least one variable");
    if (links.size() + 1 != vars.size()) throw DomainError("chain needs one link fewer than variables");
    for (const auto& v : vars) {
      if (v.exponent == 0) throw DomainError("chain variable exponent must be >= 1");
      if (v.parity > 1) throw DomainError("chain variable parity must be 0 or 1");
    }
  }
  friend bool operator==(const ChainSum&, const ChainSum&) = default;
};

/// Finite map SignedIndex -> coefficient, zero coefficients never stored, keys in
/// canonical (weight, depth, entries) order.
class EulerCombination {
 public:
  using Terms = std::map<SignedIndex, BigRational>;

  EulerCombination() = default;
  EulerCombination(std::initializer_list<std::pair<SignedIndex, BigRational>> init) {
    for (const auto& [k, v] : init) add(k, v);
  }

  void add(const SignedIndex& key, const BigRational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] BigRational coefficient(const SignedIndex& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? BigRational(0) : it->second;
  }

  friend bool operator==(const EulerCombination&, const EulerCombination&) = default;

 private:
  Terms terms_;
};

inline bool combination_equal(const EulerCombination& x, const EulerCombination& y) { return x == y; }

/// Chain for zeta*(t): one variable per block k_i with exponent 2a_i + 3 - delta_i and
/// parity delta_i mod 2, and c_i - 3 unit variables for every sharp block with c_i >= 4.
/// The leading sharp factor with k_{-1} = 0 is the constant 2, and the global sign is -1
/// (+1 with a trailing one). A final block of exponent 0 (c_d = 1, a_d = 0, no trailing
/// one) sums to -1 against its COND2 link and is folded into the scalar.
inline ChainSum build_chain(const TwoBlockIndex& t) {
  t.validate();
  if (!t.converges())
    throw DivergenceError("zeta* of " + render(t.flatten()) + " diverges (needs a_0 >= 1, or c_1 >= 3)");
  const auto deltas = t.delta_profile().deltas;
  ChainSum ch;
  ch.scalar = t.trailing_one ? 2 : -2;
  for (std::size_t i = 0; i < t.a.size(); ++i) {
    if (i > 0) {
      const unsigned ci = t.c[i - 1];
      for (unsigned extra = 3; extra < ci; ++extra) {
        ch.links.push_back(Link::COND2);
        ch.vars.push_back({1, 0});
      }
      ch.links.push_back(Link::COND2);
    }
    ch.vars.push_back({2 * t.a[i] + 3 - deltas[i], deltas[i] % 2});
  }
  if (ch.vars.back().exponent == 0) {
    // sum_{v=1}^{u} (-1)^v 2^Delta(u,v) = -1 for every u >= 1
    ch.vars.pop_back();
    ch.links.pop_back();
    ch.scalar = -ch.scalar;
  }
  ch.validate();
  return ch;
}

/// Resolves every link into ">" or "=" and collects the strict sums.
inline EulerCombination expand_chain(const ChainSum& ch) {
  ch.validate();
  const std::size_t links = ch.links.size();
  if (links > 40) throw DomainError("chain too long to expand");
  EulerCombination out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << links); ++mask) {
    std::vector<Entry> key{{ch.vars[0].exponent, ch.vars[0].parity == 1}};
    BigRational coeff = ch.scalar;
    for (std::size_t j = 0; j < links; ++j) {
      const ChainVar& v = ch.vars[j + 1];
      if (mask & (std::uint64_t{1} << j)) {  // tie: merge into the previous variable
        key.back().magnitude += v.exponent;
        key.back().barred = key.back().barred != (v.parity == 1);
      } else {
        key.push_back({v.exponent, v.parity == 1});
        if (ch.links[j] == Link::COND2) coeff *= 2;
      }
    }
    out.add(SignedIndex(std::move(key)), coeff);
  }
  return out;
}

/// scalar * sum over top >= v_0 >= ... >= v_L >= 1, exact.
inline BigRational evaluate_chain(const ChainSum& ch, std::uint64_t top) {
  ch.validate();
  const std::size_t n_vars = ch.vars.size();
  // prefix[j] = sum over x >= v_j >= ... of the sub-chain starting at j, for the current x
  std::vector<BigRational> prefix(n_vars, BigRational(0));
  for (std::uint64_t x = 1; x <= top; ++x) {
    BigRational below(1);
    for (std::size_t j = n_vars; j-- > 0;) {
      BigRational term = inverse_power(x, ch.vars[j].exponent) * below;
      if (ch.vars[j].parity == 1 && (x & 1u)) term = -term;
      prefix[j] += term;
      if (j > 0) below = ch.links[j - 1] == Link::COND2 ? BigRational(2 * prefix[j] - term) : prefix[j];
    }
  }
  return ch.scalar * prefix[0];
}

/// sum of coeff * H_N(key).
inline BigRational evaluate_truncated(const EulerCombination& comb, std::uint64_t n) {
  BigRational total(0);
  for (const auto& [key, coeff] : comb.terms()) total += coeff * h_strict(n, key);
  return total;
}

/// sum over p in (2a_1+1) o ... o (2a_d+1) of 2^depth(p) zeta(p).
inline EulerCombination two_one_reference(const std::vector<unsigned>& a) {
  if (a.empty()) throw DomainError("two-one reference needs d >= 1");
  if (a[0] == 0) throw DivergenceError("two-one reference needs a_1 >= 1 (leading 1 diverges)");
  std::vector<unsigned> parts;
  for (unsigned ai : a) parts.push_back(2 * ai + 1);
  EulerCombination out;
  for (const auto& p : compositions(parts)) {
    mpz_class coeff;
    mpz_ui_pow_ui(coeff.get_mpz_t(), 2, p.depth());
    out.add(p, BigRational(coeff));
  }
  return out;
}

/// -2 zeta(bar(2a+2b+3)) - 4 zeta(bar(2a+2), 2b+1), the value of zeta*({2}^a, 3, {2}^b).
inline EulerCombination two_three_two_reference(unsigned a, unsigned b) {
  return {{SignedIndex({{2 * a + 2 * b + 3, true}}), BigRational(-2)},
          {SignedIndex({{2 * a + 2, true}, {2 * b + 1, false}}), BigRational(-4)}};
}

/// -2 zeta(bar(2a+2b+1)) - 4 zeta(2a+1, bar(2b)), the value of zeta*({2}^a, 1, {2}^b), a, b >= 1.
inline EulerCombination two_one_two_reference(unsigned a, unsigned b) {
  if (a == 0 || b == 0) throw DomainError("({2}^a,1,{2}^b) reference needs a, b >= 1");
  return {{SignedIndex({{2 * a + 2 * b + 1, true}}), BigRational(-2)},
          {SignedIndex({{2 * a + 1, false}, {2 * b, true}}), BigRational(-4)}};
}

/// "-2·Z(-3) -4·Z(-2,1)"; "0" for the empty combination.
inline std::string render(const EulerCombination& comb) {
  if (comb.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, coeff] : comb.terms()) {
    std::string c = to_string(coeff);
    if (!first) out += (coeff > 0 ? " +" : " ");
    out += c + "·Z(" + render(key) + ")";
    first = false;
  }
  return out;
}

}  // namespace mzstar
