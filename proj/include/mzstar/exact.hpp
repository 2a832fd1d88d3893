#pragma once

// Exact rational evaluation of the finite sums: binomial ratios, multiple
// harmonic (star) sums, sharp sums, and the product form of the harmonic-star
// generating function. Everything is mpq_class, canonical after each operation.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mzstar/error.hpp"
#include "mzstar/index.hpp"

namespace mzstar {

using BigRational = mpq_class;

/// "p/q" (or "p" when q = 1).
inline std::string to_string(const BigRational& q) { return q.get_str(); }

inline BigRational parse_rational(const std::string& text) {
  BigRational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw ParseError("malformed rational '" + text + "'");
  q.canonicalize();
  return q;
}

/// 1/k^e, exact.
inline BigRational inverse_power(std::uint64_t k, unsigned e) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), k, e);
  return BigRational(mpz_class(1), den);
}

/// Delta(a,b): 0 if a = b, 1 otherwise.
constexpr unsigned big_delta(std::uint64_t a, std::uint64_t b) { return a == b ? 0u : 1u; }

/// C(n,k)/C(n+k,k) for k = 0..n via r_k = r_{k-1} (n-k+1)/(n+k).
inline std::vector<BigRational> binom_ratios(std::uint64_t n) {
  std::vector<BigRational> r;
  r.reserve(n + 1);
  r.emplace_back(1);
  for (std::uint64_t k = 1; k <= n; ++k) {
    BigRational step(mpz_class(static_cast<unsigned long>(n - k + 1)), mpz_class(static_cast<unsigned long>(n + k)));
    step.canonicalize();
    r.push_back(r.back() * step);
  }
  return r;
}

inline BigRational binom_ratio(std::uint64_t n, std::int64_t k) {
  if (n == 0) throw DomainError("binom_ratio requires n >= 1");
  if (k < 0 || static_cast<std::uint64_t>(k) > n)
    throw DomainError("binom_ratio requires 0 <= k <= n, got k = " + std::to_string(k));
  BigRational r(1);
  for (std::uint64_t j = 1; j <= static_cast<std::uint64_t>(k); ++j) {
    BigRational step(mpz_class(static_cast<unsigned long>(n - j + 1)), mpz_class(static_cast<unsigned long>(n + j)));
    step.canonicalize();
    r *= step;
  }
  return r;
}

namespace detail {

// sgn^k / k^|s|
inline BigRational harmonic_term(std::uint64_t k, const Entry& e) {
  BigRational t = inverse_power(k, e.magnitude);
  if (e.barred && (k & 1u)) t = -t;
  return t;
}

// suffix[j] holds the sum over k >= k_j >= ... >= k_m >= 1 (star) or
// k >= k_j > ... > k_m >= 1 (strict) for the entries j..m-1 of s.
template <bool Star>
std::vector<BigRational> harmonic_table(std::uint64_t nmax, const SignedIndex& s) {
  const std::size_t m = s.depth();
  std::vector<BigRational> out(nmax + 1);
  if (m == 0) {
    for (auto& v : out) v = 1;
    return out;
  }
  std::vector<BigRational> suffix(m + 1, BigRational(0));
  suffix[m] = 1;
  out[0] = 0;
  for (std::uint64_t k = 1; k <= nmax; ++k) {
    if constexpr (Star) {
      for (std::size_t j = m; j-- > 0;) suffix[j] += harmonic_term(k, s[j]) * suffix[j + 1];
    } else {
      for (std::size_t j = 0; j < m; ++j) suffix[j] += harmonic_term(k, s[j]) * suffix[j + 1];
    }
    out[k] = suffix[0];
  }
  return out;
}

}  // namespace detail

/// H_n(s) = sum over n >= k_1 > ... > k_m >= 1; 0 when n < depth, 1 for the empty index.
inline BigRational h_strict(std::uint64_t n, const SignedIndex& s) {
  return detail::harmonic_table<false>(n, s)[n];
}

/// H_n^*(s) = sum over n >= k_1 >= ... >= k_m >= 1.
inline BigRational h_star(std::uint64_t n, const SignedIndex& s) { return detail::harmonic_table<true>(n, s)[n]; }

/// H_0..H_nmax in one pass.
inline std::vector<BigRational> h_strict_table(std::uint64_t nmax, const SignedIndex& s) {
  return detail::harmonic_table<false>(nmax, s);
}
inline std::vector<BigRational> h_star_table(std::uint64_t nmax, const SignedIndex& s) {
  return detail::harmonic_table<true>(nmax, s);
}

/// S#_{k,m}(r) for all k = 0..kmax at fixed m. For k < m (or r empty) the value is
/// 2^Delta(k,m). Otherwise the nested sum over k >= l_1 >= ... >= l_c >= m weighted by
/// 2^(number of strict steps in k, l_1, ..., l_c, m).
///
/// Experimental for r outside {1}^c.
inline std::vector<BigRational> sharp_sums_to(std::uint64_t kmax, std::uint64_t m, std::span<const unsigned> r) {
  if (m == 0) throw DomainError("sharp sum requires m >= 1");
  std::vector<BigRational> out(kmax + 1);
  for (std::uint64_t k = 0; k <= kmax && k < m; ++k) out[k] = big_delta(k, m) ? 2 : 1;
  if (kmax < m) return out;
  if (r.empty()) {
    for (std::uint64_t k = m; k <= kmax; ++k) out[k] = big_delta(k, m) ? 2 : 1;
    return out;
  }
  // level[j](x) = sum_{x >= y >= m} 2^Delta(x,y) y^{-r_j} level[j+1](y), level[c](x) = 2^Delta(x,m).
  // The weighted sum over y <= x with 2^Delta(x,y) is 2*prefix(x) - term(x).
  const std::size_t c = r.size();
  std::vector<BigRational> prefix(c, BigRational(0));
  for (std::uint64_t x = m; x <= kmax; ++x) {
    BigRational below = big_delta(x, m) ? 2 : 1;
    for (std::size_t j = c; j-- > 0;) {
      const BigRational term = inverse_power(x, r[j]) * below;
      prefix[j] += term;
      below = 2 * prefix[j] - term;
    }
    out[x] = below;
  }
  return out;
}

inline BigRational sharp_sum(std::uint64_t k, std::uint64_t m, const SignedIndex& r) {
  if (k == 0 || m == 0) throw DomainError("sharp sum requires positive k and m");
  if (!r.all_unbarred()) throw DomainError("sharp sum requires an unbarred index");
  std::vector<unsigned> mags;
  for (const auto& e : r.entries()) mags.push_back(e.magnitude);
  return sharp_sums_to(k, m, mags)[k];
}

/// {1}^c as a magnitude list.
inline std::vector<unsigned> ones(std::size_t c) { return std::vector<unsigned>(c, 1u); }

inline void require_inside_unit_disc(std::span<const BigRational> z) {
  for (const auto& zj : z)
    if (abs(zj) >= 1) throw DomainError("generating-function argument must satisfy |z| < 1, got " + to_string(zj));
}

inline void require_no_two(std::span<const unsigned> c) {
  for (unsigned ci : c)
    if (ci == 2) throw DomainError("separator c_i = 2 is not allowed");
    else if (ci == 0) throw DomainError("separator c_i must be positive");
}

/// F_n(c_1..c_d; z_0..z_d) = sum over n >= k_1 >= ... >= k_d >= 1 of
///   prod_{k=k_1}^{n} (1 - z_0^2/k^2)^{-1} k_1^{-c_1} prod_{k=k_2}^{k_1} (1 - z_1^2/k^2)^{-1} ... prod_{k=1}^{k_d} (...)^{-1}.
/// For d = 0 this is prod_{k=1}^{n} (1 - z_0^2/k^2)^{-1}. n = 0 gives the empty-range value.
inline BigRational gf_product_form(std::uint64_t n, std::span<const unsigned> c, std::span<const BigRational> z) {
  if (z.size() != c.size() + 1) throw DomainError("gf_product_form needs d+1 arguments z_0..z_d");
  require_inside_unit_disc(z);
  require_no_two(c);
  const std::size_t d = c.size();

  // partial[j][k] = prod_{i=1}^{k} (1 - z_j^2/i^2)^{-1}
  std::vector<std::vector<BigRational>> partial(d + 1, std::vector<BigRational>(n + 1));
  for (std::size_t j = 0; j <= d; ++j) {
    const BigRational z2 = z[j] * z[j];
    partial[j][0] = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
      const BigRational k2(mpz_class(static_cast<unsigned long>(k)) * static_cast<unsigned long>(k));
      partial[j][k] = partial[j][k - 1] * k2 / (k2 - z2);
    }
  }
  if (d == 0) return partial[0][n];

  // inner[k] = value of the nested sum hanging below k_j = k, for j = d down to 1.
  std::vector<BigRational> inner(n + 1);
  for (std::uint64_t k = 1; k <= n; ++k) inner[k] = inverse_power(k, c[d - 1]) * partial[d][k];
  for (std::size_t j = d - 1; j >= 1; --j) {
    std::vector<BigRational> next(n + 1);
    BigRational running(0);
    for (std::uint64_t k = 1; k <= n; ++k) {
      running += inner[k] / partial[j][k - 1];
      next[k] = inverse_power(k, c[j - 1]) * partial[j][k] * running;
    }
    inner = std::move(next);
  }
  BigRational total(0);
  for (std::uint64_t k = 1; k <= n; ++k) total += inner[k] / partial[0][k - 1];
  return partial[0][n] * total;
}

}  // namespace mzstar
