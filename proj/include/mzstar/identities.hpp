#pragma once

// Exact verification of the finite binomial and generating-function identities.
// Every check evaluates both sides as exact rationals; pass means lhs == rhs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mzstar/chain.hpp"
#include "mzstar/error.hpp"
#include "mzstar/exact.hpp"
#include "mzstar/index.hpp"
#include "mzstar/nested.hpp"

namespace mzstar {

struct CheckReport {
  std::string identity;
  nlohmann::ordered_json params;
  BigRational lhs;
  BigRational rhs;
  bool pass = false;
};

inline CheckReport make_report(std::string identity, nlohmann::ordered_json params, BigRational lhs, BigRational rhs) {
  const bool pass = lhs == rhs;
  return {std::move(identity), std::move(params), std::move(lhs), std::move(rhs), pass};
}

inline nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  j["params"] = r.params;
  j["lhs"] = to_string(r.lhs);
  j["rhs"] = to_string(r.rhs);
  j["pass"] = r.pass;
  return j;
}

inline nlohmann::ordered_json rationals_json(std::span<const BigRational> z) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : z) arr.push_back(to_string(v));
  return arr;
}

// ---------------------------------------------------------------------------
// Binomial lemmas

/// part 1: 2 sum_{k=l+1}^n (-1)^k r(n,k) = (-1)^{l+1}/n (n-l) r(n,l)
/// part 2: 2 sum_{k=l+1}^n k r(n,k)      = (n-l) r(n,l)
/// part 3: sum_{k=1}^n (-1)^k k^2 r(n,k) = 0,   n >= 2
/// where r(n,k) = C(n,k)/C(n+k,k).
inline CheckReport check_lemma21(std::uint64_t n, std::uint64_t l, int part) {
  if (n == 0) throw DomainError("check_lemma21 requires n >= 1");
  if (part < 1 || part > 3) throw DomainError("check_lemma21 has parts 1..3");
  if (part != 3 && l > n) throw DomainError("check_lemma21 requires 0 <= l <= n");
  if (part == 3 && n < 2) throw DomainError("check_lemma21 part 3 requires n >= 2");
  const auto r = binom_ratios(n);
  const mpz_class nz(static_cast<unsigned long>(n));
  const mpz_class lz(static_cast<unsigned long>(l));
  BigRational lhs(0), rhs(0);
  nlohmann::ordered_json params{{"n", n}, {"l", l}, {"part", part}};
  switch (part) {
    case 1:
      for (std::uint64_t k = l + 1; k <= n; ++k) lhs += (k & 1u) ? BigRational(-r[k]) : r[k];
      lhs *= 2;
      rhs = BigRational(nz - lz) * r[l] / nz;
      if ((l + 1) & 1u) rhs = -rhs;
      break;
    case 2:
      for (std::uint64_t k = l + 1; k <= n; ++k) lhs += static_cast<unsigned long>(k) * r[k];
      lhs *= 2;
      rhs = BigRational(nz - lz) * r[l];
      break;
    default:
      params.erase("l");
      for (std::uint64_t k = 1; k <= n; ++k) {
        BigRational t = BigRational(static_cast<unsigned long>(k * k)) * r[k];
        lhs += (k & 1u) ? BigRational(-t) : t;
      }
      break;
  }
  return make_report("binomial_sums", std::move(params), lhs, rhs);
}

/// part 1: sum_{k=l}^n k r(n,k) 2^Delta(k,l)                 = n r(n,l)
/// part 2: sum_{k=l}^n (-1)^k r(n,k) S#_{k,l}({1}^c)        = (-1)^l / n^{c+1} * l r(n,l)
inline CheckReport check_lemma22(std::uint64_t n, std::uint64_t l, unsigned c, int part) {
  if (l == 0 || l > n) throw DomainError("check_lemma22 requires 1 <= l <= n");
  if (part < 1 || part > 2) throw DomainError("check_lemma22 has parts 1..2");
  const auto r = binom_ratios(n);
  BigRational lhs(0), rhs(0);
  nlohmann::ordered_json params{{"n", n}, {"l", l}};
  if (part == 1) {
    for (std::uint64_t k = l; k <= n; ++k)
      lhs += static_cast<unsigned long>(k * (big_delta(k, l) ? 2 : 1)) * r[k];
    rhs = static_cast<unsigned long>(n) * r[l];
  } else {
    params["c"] = c;
    const auto unit = ones(c);
    const auto sharp = sharp_sums_to(n, l, unit);
    for (std::uint64_t k = l; k <= n; ++k) {
      BigRational t = r[k] * sharp[k];
      lhs += (k & 1u) ? BigRational(-t) : t;
    }
    rhs = static_cast<unsigned long>(l) * r[l] * inverse_power(n, c + 1);
    if (l & 1u) rhs = -rhs;
  }
  params["part"] = part;
  return make_report("binomial_sharp_sums", std::move(params), lhs, rhs);
}

// ---------------------------------------------------------------------------
// Finite generating-function identity and its coefficient form

struct T1Options {
  bool trailing_one = false;
  std::optional<std::size_t> forced_block;  // restrict to a_m >= 1
};

namespace detail {

// Variable layout of the binomial-weighted right-hand sides: block variable k_i,
// preceded (for i >= 1, c_i >= 4) by c_i - 3 unit variables of the sharp sum
// S#_{k_{i-1},k_i}({1}^{c_i-3}); every link carries 2^Delta.
struct BlockLayout {
  std::vector<int> block_of_level;  // -1 for sharp unit variables
  std::vector<Link> links;
};

inline BlockLayout block_layout(std::span<const unsigned> c) {
  BlockLayout lay;
  for (std::size_t i = 0; i <= c.size(); ++i) {
    if (i > 0) {
      for (unsigned extra = 3; extra < c[i - 1]; ++extra) {
        lay.links.push_back(Link::COND2);
        lay.block_of_level.push_back(-1);
      }
      lay.links.push_back(Link::COND2);
    }
    lay.block_of_level.push_back(static_cast<int>(i));
  }
  return lay;
}

inline std::vector<unsigned> deltas_for(std::span<const unsigned> c, bool trailing_one) {
  TwoBlockIndex t(std::vector<unsigned>(c.size() + 1, 0), std::vector<unsigned>(c.begin(), c.end()), trailing_one);
  return t.delta_profile().deltas;
}

inline BigRational signed_parity(BigRational v, std::uint64_t k, unsigned delta) {
  if ((delta & 1u) && (k & 1u)) v = -v;
  return v;
}

template <class Weight>
BigRational binomial_weighted_rhs(std::uint64_t n, std::span<const unsigned> c, bool trailing_one, Weight&& block_weight) {
  const auto lay = block_layout(c);
  const auto r = binom_ratios(n);
  const BigRational sign = trailing_one ? 1 : -1;
  return nested_chain_sum<BigRational>(
      n, lay.block_of_level.size(), lay.links, [](int v) { return BigRational(v); },
      [&](std::size_t level, std::uint64_t k) -> BigRational {
        const int block = lay.block_of_level[level];
        if (block < 0) return BigRational(mpz_class(1), mpz_class(static_cast<unsigned long>(k)));
        return block_weight(static_cast<std::size_t>(block), k);
      },
      // C(n,k_0)/C(n+k_0,k_0) times the leading S#_{0,k_0} = 2
      [&](std::uint64_t k) { return BigRational(2 * sign * r[k]); });
}

}  // namespace detail

/// Right-hand side of the finite generating-function identity:
///   -+ sum_{n >= k_0 >= ... >= k_d >= 1} r(n,k_0) prod_i (-1)^{k_i delta_i} k_i^{delta_i - 1} / (k_i^2 - z_i^2)
///        * S#_{k_{i-1},k_i}({1}^{c_i - 3})
/// with the extra factor z_m^2 / k_m^2 when a block is forced.
inline BigRational t1_rhs(std::uint64_t n, std::span<const unsigned> c, std::span<const BigRational> z,
                          const T1Options& opts = {}) {
  if (n == 0) throw DomainError("t1_rhs requires n >= 1");
  if (z.size() != c.size() + 1) throw DomainError("t1_rhs needs d+1 arguments z_0..z_d");
  require_no_two(c);
  require_inside_unit_disc(z);
  if (opts.forced_block && *opts.forced_block > c.size()) throw DomainError("forced block out of range");
  const auto deltas = detail::deltas_for(c, opts.trailing_one);
  std::vector<BigRational> z2;
  for (const auto& zj : z) z2.push_back(zj * zj);
  return detail::binomial_weighted_rhs(n, c, opts.trailing_one, [&](std::size_t i, std::uint64_t k) {
    const BigRational k2(mpz_class(static_cast<unsigned long>(k)) * static_cast<unsigned long>(k));
    BigRational w = 1 / (k2 - z2[i]);
    if (deltas[i] == 0)
      w /= static_cast<unsigned long>(k);
    else
      for (unsigned e = 1; e < deltas[i]; ++e) w *= static_cast<unsigned long>(k);
    if (opts.forced_block && *opts.forced_block == i) w *= z2[i] / k2;
    return detail::signed_parity(w, k, deltas[i]);
  });
}

/// Compares t1_rhs with the product form of the harmonic-star generating function. The
/// trailing-one variant is the product form with an extra separator 1 and z = 0 after
/// it; a forced block m is F(z) - F(z with z_m = 0).
inline CheckReport verify_t1(std::uint64_t n, std::span<const unsigned> c, std::span<const BigRational> z,
                             const T1Options& opts = {}) {
  const BigRational rhs = t1_rhs(n, c, z, opts);
  std::vector<unsigned> cc(c.begin(), c.end());
  std::vector<BigRational> zz(z.begin(), z.end());
  if (opts.trailing_one) {
    cc.push_back(1);
    zz.emplace_back(0);
  }
  BigRational lhs = gf_product_form(n, cc, zz);
  if (opts.forced_block) {
    zz[*opts.forced_block] = 0;
    lhs -= gf_product_form(n, cc, zz);
  }
  nlohmann::ordered_json params{{"n", n}, {"c", std::vector<unsigned>(c.begin(), c.end())}, {"z", rationals_json(z)}};
  params["trailing_one"] = opts.trailing_one;
  if (opts.forced_block) params["forced_block"] = *opts.forced_block;
  return make_report("finite_gf", std::move(params), lhs, rhs);
}

/// F_n(c; z) = n^{2-c_1}/(n^2 - z_0^2) F_n(c_2..; z_1..) + n^2/(n^2 - z_0^2) F_{n-1}(c; z),
/// with F_0 = 1 for d = 0 and 0 otherwise (the first term is absent for d = 0).
inline CheckReport check_recurrence(std::uint64_t n, std::span<const unsigned> c, std::span<const BigRational> z) {
  if (n == 0) throw DomainError("recurrence requires n >= 1");
  const BigRational lhs = gf_product_form(n, c, z);
  const BigRational n2(mpz_class(static_cast<unsigned long>(n)) * static_cast<unsigned long>(n));
  const BigRational denom = n2 - z[0] * z[0];
  BigRational rhs = n2 / denom * gf_product_form(n - 1, c, z);
  if (!c.empty()) {
    BigRational head = c[0] >= 2 ? inverse_power(n, c[0] - 2) : BigRational(static_cast<unsigned long>(n));
    rhs += head / denom * gf_product_form(n, c.subspan(1), z.subspan(1));
  }
  nlohmann::ordered_json params{{"n", n}, {"c", std::vector<unsigned>(c.begin(), c.end())}, {"z", rationals_json(z)}};
  return make_report("recurrence", std::move(params), lhs, rhs);
}

/// Coefficient form: -+ sum_{n >= k_0 >= ... >= k_d >= 1} r(n,k_0) prod_i (-1)^{k_i delta_i} / k_i^{2a_i + 3 - delta_i}
///   * S#_{k_{i-1},k_i}({1}^{c_i - 3}), equal to H_n^*(flatten(t)).
inline BigRational c4_rhs(std::uint64_t n, const TwoBlockIndex& t) {
  if (n == 0) throw DomainError("c4_rhs requires n >= 1");
  t.validate();
  const auto deltas = t.delta_profile().deltas;
  return detail::binomial_weighted_rhs(n, t.c, t.trailing_one, [&](std::size_t i, std::uint64_t k) {
    return detail::signed_parity(inverse_power(k, 2 * t.a[i] + 3 - deltas[i]), k, deltas[i]);
  });
}

inline nlohmann::ordered_json two_block_json(const TwoBlockIndex& t) {
  return {{"a", t.a}, {"c", t.c}, {"trailing_one", t.trailing_one}};
}

inline CheckReport verify_c4(std::uint64_t n, const TwoBlockIndex& t) {
  nlohmann::ordered_json params{{"n", n}, {"index", render(t.flatten())}};
  params.update(two_block_json(t));
  return make_report("finite_duality", std::move(params), h_star(n, t.flatten()), c4_rhs(n, t));
}

// ---------------------------------------------------------------------------
// Parameter grids

/// Every two-block index with d <= d_max, a_i <= a_max, c_i drawn from `c_values`,
/// weight (of the flattened index) <= weight_max, in both trailing-one variants.
inline std::vector<TwoBlockIndex> two_block_grid(std::size_t d_max, unsigned a_max, const std::vector<unsigned>& c_values,
                                                 unsigned weight_max, bool convergent_only) {
  std::vector<TwoBlockIndex> out;
  for (std::size_t d = 0; d <= d_max; ++d) {
    std::vector<std::size_t> ci(d, 0);
    std::vector<unsigned> ai(d + 1, 0);
    while (true) {
      // enumerate a for the current c
      std::fill(ai.begin(), ai.end(), 0u);
      while (true) {
        for (bool trailing : {false, true}) {
          std::vector<unsigned> cs;
          for (auto idx : ci) cs.push_back(c_values[idx]);
          TwoBlockIndex t(ai, cs, trailing);
          if (t.flatten().weight() <= weight_max && (!convergent_only || t.converges())) out.push_back(t);
        }
        std::size_t pos = 0;
        while (pos < ai.size() && ai[pos] == a_max) ai[pos++] = 0;
        if (pos == ai.size()) break;
        ++ai[pos];
      }
      std::size_t pos = 0;
      while (pos < ci.size() && ci[pos] + 1 == c_values.size()) ci[pos++] = 0;
      if (pos == ci.size()) break;
      ++ci[pos];
    }
  }
  return out;
}

/// 1/2, 1/3, 1/5, 1/7, 1/11, ... (reciprocal primes).
inline std::vector<BigRational> default_z_samples(std::size_t count) {
  std::vector<BigRational> out;
  for (unsigned long p = 2; out.size() < count; ++p) {
    bool prime = true;
    for (unsigned long q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (prime) out.emplace_back(mpz_class(1), mpz_class(p));
  }
  return out;
}

/// Separator lists of length <= d_max over `c_values`, with c_1 >= 3 when required.
inline std::vector<std::vector<unsigned>> separator_lists(std::size_t d_max, const std::vector<unsigned>& c_values,
                                                          bool leading_at_least_three) {
  std::vector<std::vector<unsigned>> out{{}};
  std::vector<std::vector<unsigned>> frontier{{}};
  for (std::size_t d = 1; d <= d_max; ++d) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& base : frontier)
      for (unsigned cv : c_values) {
        if (base.empty() && leading_at_least_three && cv < 3) continue;
        auto ext = base;
        ext.push_back(cv);
        next.push_back(ext);
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

}  // namespace mzstar
