#pragma once

// High-precision truncated evaluation of Euler sums, zeta star values and the
// generating functions, plus numeric checks of the infinite-sum identities.
// Summation order is always increasing k, so results are reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mzstar/chain.hpp"
#include "mzstar/error.hpp"
#include "mzstar/identities.hpp"
#include "mzstar/index.hpp"
#include "mzstar/nested.hpp"
#include "mzstar/real.hpp"

namespace mzstar {

/// Guard bits added to the requested precision.
inline constexpr mpfr_prec_t kGuardBits = 32;

inline mpfr_prec_t working_precision(unsigned bits) {
  if (bits < 53) throw DomainError("precision must be at least 53 bits");
  return static_cast<mpfr_prec_t>(bits) + kGuardBits;
}

struct EvalResult {
  Real value;
  std::uint64_t terms_used = 1;
  Real tail_estimate;
};

namespace detail {

template <bool Star>
EvalResult nested_numeric(const SignedIndex& s, std::uint64_t n, unsigned precision, bool require_convergent = true) {
  if (require_convergent && !s.converges())
    throw DivergenceError("series for (" + render(s) + ") diverges: leading entry 1 (s_1 != 1 required)");
  if (n == 0) throw DomainError("number of terms must be >= 1");
  const mpfr_prec_t wp = working_precision(precision);
  const std::size_t m = s.depth();
  if (m == 0) return {Real(1L, wp), n, Real(wp)};
  if (!Star && n < m) throw DomainError("number of terms must be >= depth for strict sums");

  // distinct magnitudes, so k^{-e} is formed once per k
  std::vector<unsigned> mags;
  for (const auto& e : s.entries())
    if (std::find(mags.begin(), mags.end(), e.magnitude) == mags.end()) mags.push_back(e.magnitude);
  std::vector<std::size_t> slot(m);
  for (std::size_t j = 0; j < m; ++j)
    slot[j] = static_cast<std::size_t>(std::find(mags.begin(), mags.end(), s[j].magnitude) - mags.begin());

  std::vector<Real> inv(mags.size(), Real(wp));
  std::vector<Real> suffix(m + 1, Real(wp));
  mpfr_set_ui(suffix[m].get(), 1, MPFR_RNDN);
  Real term(wp);
  for (std::uint64_t k = 1; k <= n; ++k) {
    for (std::size_t q = 0; q < mags.size(); ++q) {
      mpfr_ui_pow_ui(inv[q].get(), k, mags[q], MPFR_RNDN);
      mpfr_ui_div(inv[q].get(), 1, inv[q].get(), MPFR_RNDN);
    }
    auto update = [&](std::size_t j) {
      mpfr_mul(term.get(), inv[slot[j]].get(), suffix[j + 1].get(), MPFR_RNDN);
      if (s[j].barred && (k & 1u))
        mpfr_sub(suffix[j].get(), suffix[j].get(), term.get(), MPFR_RNDN);
      else
        mpfr_add(suffix[j].get(), suffix[j].get(), term.get(), MPFR_RNDN);
    };
    if constexpr (Star) {
      for (std::size_t j = m; j-- > 0;) update(j);
    } else {
      for (std::size_t j = 0; j < m; ++j) update(j);
    }
  }
  // C * N^{1-|s_1|} (unbarred lead) or C * N^{-|s_1|} (barred lead), C = inner partial sum
  Real tail = abs(suffix[1]);
  const unsigned lead = s[0].magnitude;
  Real scale = Real::inverse_power(n, s[0].barred ? lead : lead - 1, wp);
  tail *= scale;
  return {suffix[0], n, tail};
}

}  // namespace detail

/// Truncated zeta(s): k_1 <= N.
inline EvalResult euler_numeric(const SignedIndex& s, std::uint64_t n, unsigned precision) {
  return detail::nested_numeric<false>(s, n, precision);
}

/// Truncated zeta*(s): k_1 <= N.
inline EvalResult star_numeric(const SignedIndex& s, std::uint64_t n, unsigned precision) {
  return detail::nested_numeric<true>(s, n, precision);
}

inline EvalResult combination_numeric(const EulerCombination& comb, std::uint64_t n, unsigned precision) {
  const mpfr_prec_t wp = working_precision(precision);
  EvalResult out{Real(wp), n, Real(wp)};
  for (const auto& [key, coeff] : comb.terms()) {
    if (!key.converges()) throw DivergenceError("combination term Z(" + render(key) + ") diverges");
    auto r = euler_numeric(key, n, precision);
    const Real c(coeff, wp);
    out.value += c * r.value;
    out.tail_estimate += abs(c) * r.tail_estimate;
  }
  return out;
}

/// zeta(s) by direct summation to N-1 plus Euler-Maclaurin through the B_6 term,
/// N chosen so that the first omitted term is below 2^-(precision + guard).
inline Real zeta_single(unsigned s, unsigned precision, std::optional<std::uint64_t> terms = std::nullopt) {
  if (s < 2) throw DivergenceError("zeta(s) requires s >= 2");
  const mpfr_prec_t wp = working_precision(precision);
  std::uint64_t n = terms.value_or(static_cast<std::uint64_t>(
                                       std::ceil(std::exp2(static_cast<double>(wp) / static_cast<double>(s + 7)))) +
                                   10);
  n = std::max<std::uint64_t>(n, 2);
  Real sum(wp), t(wp);
  for (std::uint64_t k = 1; k < n; ++k) {
    mpfr_ui_pow_ui(t.get(), k, s, MPFR_RNDN);
    mpfr_ui_div(t.get(), 1, t.get(), MPFR_RNDN);
    sum += t;
  }
  const Real nn(static_cast<long>(n), wp);
  const Real n_pow = Real::inverse_power(n, s, wp);  // N^{-s}
  Real corr = n_pow * nn;
  corr /= static_cast<long>(s - 1);  // N^{1-s}/(s-1)
  sum += corr;
  Real half = n_pow;
  half /= 2L;
  sum += half;
  // B_2/2!, B_4/4!, B_6/6! times the rising factorial s(s+1)...(s+2j-2), times N^{-s-2j+1}
  const mpq_class bern[3] = {mpq_class(1, 12), mpq_class(-1, 720), mpq_class(1, 30240)};
  Real power = n_pow / nn;  // N^{-s-1}
  mpz_class rising = s;
  const Real inv_n2 = Real::inverse_power(n, 2, wp);
  for (unsigned j = 1; j <= 3; ++j) {
    if (j > 1) {
      rising *= (s + 2 * j - 3);
      rising *= (s + 2 * j - 2);
      power *= inv_n2;
    }
    sum += Real(bern[j - 1] * rising, wp) * power;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Numeric checks

struct NumericReport {
  std::string check;
  nlohmann::ordered_json params;
  Real lhs;
  Real rhs;
  Real abs_diff;
  Real tail;
  bool pass = false;

  [[nodiscard]] double rel_diff() const {
    return rhs.is_zero() ? abs_diff.to_double() : (abs_diff / abs(rhs)).to_double();
  }
};

/// pass iff |lhs - rhs| <= max(tol, safety * tail)
inline NumericReport make_numeric_report(std::string check, nlohmann::ordered_json params, Real lhs, Real rhs, Real tail,
                                         double tol, double safety = 10.0) {
  Real diff = abs(lhs - rhs);
  const mpfr_prec_t p = lhs.precision();
  Real bound = max(Real(tol, p), tail * Real(safety, p));
  const bool pass = diff <= bound;
  return {std::move(check), std::move(params), std::move(lhs), std::move(rhs), std::move(diff), std::move(tail), pass};
}

inline nlohmann::ordered_json to_json(const NumericReport& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["params"] = r.params;
  j["lhs"] = r.lhs.to_string(40);
  j["rhs"] = r.rhs.to_string(40);
  j["abs_diff"] = r.abs_diff.to_double();
  j["rel_diff"] = r.rel_diff();
  j["tail"] = r.tail.to_double();
  j["pass"] = r.pass;
  return j;
}

inline SignedIndex twos(unsigned m) { return SignedIndex(std::vector<Entry>(m, Entry{2, false})); }

/// For m <= max_m: zeta*({2}^m) vs -2 zeta(bar(2m)); zeta({2}^m) vs pi^{2m}/(2m+1)!;
/// and for 2 <= s <= 2 max_m: zeta(bar s) vs (2^{1-s} - 1) zeta(s).
/// The last family has an alternating leading entry and is judged against tol_alternating
/// (default: tol).
inline std::vector<NumericReport> verify_closed_forms(unsigned max_m, std::uint64_t n, unsigned precision, double tol,
                                                      std::optional<double> tol_alternating = std::nullopt) {
  const mpfr_prec_t wp = working_precision(precision);
  std::vector<NumericReport> out;
  const Real pi = Real::pi(wp);
  for (unsigned m = 1; m <= max_m; ++m) {
    auto star = star_numeric(twos(m), n, precision);
    auto alt = euler_numeric(SignedIndex({{2 * m, true}}), n, precision);
    Real rhs = alt.value * Real(-2L, wp);
    Real tail = star.tail_estimate + alt.tail_estimate * Real(2L, wp);
    out.push_back(make_numeric_report("zeta_star_twos", {{"m", m}, {"N", n}}, star.value, rhs, tail, tol));
  }
  for (unsigned m = 1; m <= max_m; ++m) {
    auto strict = euler_numeric(twos(m), n, precision);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), 2 * m + 1);
    Real rhs = pow(pi, 2 * m) / Real(mpq_class(fact), wp);
    out.push_back(make_numeric_report("zeta_twos", {{"m", m}, {"N", n}}, strict.value, rhs, strict.tail_estimate, tol));
  }
  for (unsigned s = 2; s <= 2 * max_m; ++s) {
    auto alt = euler_numeric(SignedIndex({{s, true}}), n, precision);
    Real factor(mpq_class(1, 1u << (s - 1)) - 1, wp);
    Real rhs = factor * zeta_single(s, precision);
    out.push_back(make_numeric_report("alternating_single", {{"s", s}, {"N", n}}, alt.value, rhs, alt.tail_estimate,
                                      tol_alternating.value_or(tol)));
  }
  return out;
}

/// zeta*({2}^a, 3, {2}^b) directly vs the expansion of its duality chain.
inline NumericReport verify_zagier(unsigned a, unsigned b, std::uint64_t n, unsigned precision, double tol) {
  const TwoBlockIndex t({a, b}, {3});
  auto direct = star_numeric(t.flatten(), n, precision);
  auto expanded = combination_numeric(expand_chain(build_chain(t)), n, precision);
  Real tail = direct.tail_estimate + expanded.tail_estimate;
  return make_numeric_report("two_three_two", {{"a", a}, {"b", b}, {"N", n}}, direct.value, expanded.value, tail, tol);
}

/// Expanded duality chain of t vs the directly summed star value.
inline NumericReport verify_duality(const TwoBlockIndex& t, std::uint64_t n, unsigned precision, double tol) {
  auto direct = star_numeric(t.flatten(), n, precision);
  auto expanded = combination_numeric(expand_chain(build_chain(t)), n, precision);
  Real tail = direct.tail_estimate + expanded.tail_estimate;
  nlohmann::ordered_json params{{"index", render(t.flatten())}, {"N", n}};
  params.update(two_block_json(t));
  return make_numeric_report("duality", std::move(params), direct.value, expanded.value, tail, tol);
}

// ---------------------------------------------------------------------------
// Generating functions of zeta star values

enum class GfFamily {
  TwoThree,             // sum zeta*({2}^{a_0},3,...,3,{2}^{a_d}) z^{2a}, d >= 1
  TwoThreeD0,           // sum zeta*({2}^{a_0}) z^{2a_0}
  TwoOneTwo,            // sum zeta*({2}^{a_0+1},1,{2}^{a_1},...,1,{2}^{a_d}) z^{2a}
  TwoOneTwoTrailing,    // the same with a final 1
  TwoThreeOne,          // ({2}^{a_0},3,{2}^{a_1},1,...,3,{2}^{a_{2d-1}},1,{2}^{a_{2d}}), d >= 1
  TwoThreeOneTrailing,  // ({2}^{a_1},3,{2}^{a_2},1,...,3,{2}^{a_{2d}},1), d >= 1
  General,              // arbitrary separators with c_1 >= 3, optional trailing one / forced block
};

inline std::string to_string(GfFamily t) {
  switch (t) {
    case GfFamily::TwoThree: return "2-3";
    case GfFamily::TwoThreeD0: return "2-3-d0";
    case GfFamily::TwoOneTwo: return "2-1-2";
    case GfFamily::TwoOneTwoTrailing: return "2-1-2-1";
    case GfFamily::TwoThreeOne: return "2-3-1";
    case GfFamily::TwoThreeOneTrailing: return "2-3-1-trailing";
    case GfFamily::General: return "general";
  }
  return "?";
}

struct GfCase {
  GfFamily family = GfFamily::TwoThree;
  std::size_t d = 1;              // d as quantified by the family
  std::vector<unsigned> c;        // separators, General only
  T1Options opts;                 // General only
  std::vector<double> z;          // arguments in the family's own numbering
};

namespace detail {

// Separator list and argument vector of the product form for a family case, and the
// block whose a >= 1 restriction divides out z^2 (or is merely forced, for General).
struct ProductFormShape {
  std::vector<unsigned> c;
  std::vector<double> z;
  std::optional<std::size_t> forced;
  bool divide_by_z2 = false;
};

inline ProductFormShape product_form_shape(const GfCase& g) {
  ProductFormShape p;
  auto expect_z = [&](std::size_t count) {
    if (g.z.size() != count)
      throw DomainError("family " + to_string(g.family) + " with d = " + std::to_string(g.d) + " needs " +
                        std::to_string(count) + " arguments");
  };
  switch (g.family) {
    case GfFamily::TwoThree:
      if (g.d < 1) throw DomainError("2-3 generating function needs d >= 1");
      expect_z(g.d + 1);
      p.c.assign(g.d, 3);
      p.z = g.z;
      break;
    case GfFamily::TwoThreeD0:
      expect_z(1);
      p.z = g.z;
      break;
    case GfFamily::TwoOneTwo:
    case GfFamily::TwoOneTwoTrailing:
      expect_z(g.d + 1);
      p.c.assign(g.d, 1);
      p.z = g.z;
      if (g.family == GfFamily::TwoOneTwoTrailing) {
        p.c.push_back(1);
        p.z.push_back(0.0);
      }
      p.forced = 0;
      p.divide_by_z2 = true;
      if (g.z[0] == 0.0) throw DomainError("2-1-2 generating function evaluated through z_0 != 0");
      break;
    case GfFamily::TwoThreeOne:
    case GfFamily::TwoThreeOneTrailing:
      if (g.d < 1) throw DomainError("2-3-1 generating function needs d >= 1");
      for (std::size_t i = 0; i < g.d; ++i) {
        p.c.push_back(3);
        p.c.push_back(1);
      }
      if (g.family == GfFamily::TwoThreeOne) {
        expect_z(2 * g.d + 1);
        p.z = g.z;
      } else {
        expect_z(2 * g.d);
        p.z = g.z;
        p.z.push_back(0.0);
      }
      break;
    case GfFamily::General:
      require_no_two(g.c);
      if (!g.c.empty() && g.c[0] < 3 && !(g.opts.forced_block && *g.opts.forced_block == 0))
        throw DivergenceError("generating function needs c_1 >= 3");
      expect_z(g.c.size() + 1);
      p.c = g.c;
      p.z = g.z;
      if (g.opts.trailing_one) {
        p.c.push_back(1);
        p.z.push_back(0.0);
      }
      p.forced = g.opts.forced_block;
      break;
  }
  for (double zj : p.z)
    if (!(std::abs(zj) < 1.0)) throw DomainError("generating-function argument must satisfy |z| < 1");
  return p;
}

// prod_{k>=1} (1 - z^2/k^2)^{-1} = pi z / sin(pi z)
inline Real infinite_product(const Real& z, const Real& pi) {
  if (z.is_zero()) return Real(1L, z.precision());
  Real x = pi * z;
  return x / sin(x);
}

// Product form with the outermost product taken to infinity:
//   sum_{N >= k_1 >= ... >= k_d >= 1} prod_{k >= k_1} (...)^{-1} k_1^{-c_1} prod_{k=k_2}^{k_1} (...)^{-1} ... prod_{k=1}^{k_d} (...)^{-1}
inline Real product_form_numeric(std::uint64_t n, const std::vector<unsigned>& c, const std::vector<Real>& z,
                                 const Real& pi) {
  const mpfr_prec_t wp = z[0].precision();
  const std::size_t d = c.size();
  const Real one(1L, wp);
  const Real full0 = infinite_product(z[0], pi);
  if (d == 0) return full0;
  std::vector<Real> z2;
  for (const auto& zj : z) z2.push_back(zj * zj);
  // partial_j(k) = prod_{i<=k} (1 - z_j^2/i^2)^{-1}, generated on the fly
  std::vector<Real> partial(d + 1, one);     // value at k
  std::vector<Real> partial_prev(d + 1, one);  // value at k-1
  std::vector<Real> running(d + 1, Real(wp));  // prefix sums of inner / partial_j(k-1)
  Real total(wp), k2(wp), factor(wp), inner(wp);
  for (std::uint64_t k = 1; k <= n; ++k) {
    mpfr_set_ui(k2.get(), k, MPFR_RNDN);
    mpfr_mul_ui(k2.get(), k2.get(), k, MPFR_RNDN);
    for (std::size_t j = 0; j <= d; ++j) {
      partial_prev[j] = partial[j];
      factor = k2 - z2[j];
      factor = k2 / factor;
      partial[j] *= factor;
    }
    // innermost level d: k^{-c_d} partial_d(k); then levels d-1..1
    inner = Real::inverse_power(k, c[d - 1], wp) * partial[d];
    for (std::size_t j = d - 1; j >= 1; --j) {
      running[j] += inner / partial_prev[j];
      inner = Real::inverse_power(k, c[j - 1], wp) * partial[j] * running[j];
    }
    total += inner / partial_prev[0];
  }
  return full0 * total;
}

inline Real gf_rhs_numeric(const GfCase& g, std::uint64_t n, const std::vector<Real>& z, Real* last_outer) {
  const mpfr_prec_t wp = z[0].precision();
  auto lift = [wp](int v) { return Real(static_cast<long>(v), wp); };
  std::vector<Real> z2;
  for (const auto& zj : z) z2.push_back(zj * zj);
  auto kk = [wp](std::uint64_t k) {
    Real r(wp);
    mpfr_set_ui(r.get(), k, MPFR_RNDN);
    return r;
  };
  auto alt = [](Real v, std::uint64_t k) { return (k & 1u) ? -v : v; };
  auto resolvent = [&](std::size_t i, std::uint64_t k) {  // 1/(k^2 - z_i^2)
    Real k2 = kk(k) * kk(k);
    return Real(1L, wp) / (k2 - z2[i]);
  };

  std::size_t levels = 0;
  std::vector<Link> links;
  std::function<Real(std::size_t, std::uint64_t)> weight;
  long outer = 0;
  Real shift(wp);  // additive constant

  switch (g.family) {
    case GfFamily::TwoThree:
      // -2 sum (-1)^{k_0} k_d^2/(k_0^2 - z_0^2) prod_{i>=1} 2^Delta / (k_i (k_i^2 - z_i^2))
      levels = g.d + 1;
      weight = [&, d = g.d](std::size_t i, std::uint64_t k) {
        Real w = resolvent(i, k);
        if (i == 0) w = alt(w, k);
        if (i >= 1) w /= static_cast<long>(k);
        if (i == d) w = w * kk(k) * kk(k);
        return w;
      };
      outer = -2;
      break;
    case GfFamily::TwoThreeD0:
      // 1 - 2 z_0^2 sum (-1)^k/(k^2 - z_0^2)
      levels = 1;
      weight = [&](std::size_t, std::uint64_t k) { return alt(resolvent(0, k) * z2[0], k); };
      outer = -2;
      shift = lift(1);
      break;
    case GfFamily::TwoOneTwo:
      // -sum (-1)^{k_d} k_d/k_0^2 prod_i k_i 2^Delta(k_{i-1},k_i)/(k_i^2 - z_i^2), k_{-1} = 0
      levels = g.d + 1;
      weight = [&, d = g.d](std::size_t i, std::uint64_t k) {
        Real w = resolvent(i, k) * kk(k);
        if (i == 0) w = w / (kk(k) * kk(k));
        if (i == d) w = alt(w * kk(k), k);
        return w;
      };
      outer = -2;
      break;
    case GfFamily::TwoOneTwoTrailing:
      // sum 1/k_0^2 prod_i k_i 2^Delta(k_{i-1},k_i)/(k_i^2 - z_i^2)
      levels = g.d + 1;
      weight = [&](std::size_t i, std::uint64_t k) {
        Real w = resolvent(i, k) * kk(k);
        if (i == 0) w = w / (kk(k) * kk(k));
        return w;
      };
      outer = 2;
      break;
    case GfFamily::TwoThreeOne:
      // -sum k_{2d}^2 prod_{i=0}^{2d} (-1)^{k_i} 2^Delta(k_{i-1},k_i)/(k_i^2 - z_i^2)
      levels = 2 * g.d + 1;
      weight = [&, last = 2 * g.d](std::size_t i, std::uint64_t k) {
        Real w = alt(resolvent(i, k), k);
        if (i == last) w = w * kk(k) * kk(k);
        return w;
      };
      outer = -2;
      break;
    case GfFamily::TwoThreeOneTrailing:
      // sum_{k_1 >= ... >= k_{2d}} prod_{i=1}^{2d} (-1)^{k_i} 2^Delta(k_{i-1},k_i)/(k_i^2 - z_i^2), k_0 = 0
      levels = 2 * g.d;
      weight = [&](std::size_t i, std::uint64_t k) { return alt(resolvent(i, k), k); };
      outer = 2;
      break;
    case GfFamily::General: {
      // -+ sum prod_i (-1)^{k_i delta_i} k_i^{delta_i-1}/(k_i^2 - z_i^2) S#_{k_{i-1},k_i}({1}^{c_i-3}) [z_m^2/k_m^2]
      const auto lay = block_layout(g.c);
      const auto deltas = deltas_for(g.c, g.opts.trailing_one);
      levels = lay.block_of_level.size();
      links = lay.links;
      weight = [&, lay, deltas](std::size_t level, std::uint64_t k) {
        const int block = lay.block_of_level[level];
        if (block < 0) return Real(1L, wp) / kk(k);
        const auto i = static_cast<std::size_t>(block);
        Real w = resolvent(i, k);
        if (deltas[i] == 0) w /= static_cast<long>(k);
        for (unsigned e = 1; e < deltas[i]; ++e) w *= static_cast<long>(k);
        if ((deltas[i] & 1u)) w = alt(w, k);
        if (g.opts.forced_block && *g.opts.forced_block == i) w = w * z2[i] / (kk(k) * kk(k));
        return w;
      };
      outer = g.opts.trailing_one ? 2 : -2;
      break;
    }
  }
  if (links.empty()) links.assign(levels - 1, Link::COND2);
  Real last(wp);
  const Real outer_r = lift(static_cast<int>(outer));
  Real total = nested_chain_sum<Real>(n, levels, links, lift, weight, [&](std::uint64_t k) {
    (void)k;
    return outer_r;
  });
  // outermost term at k_0 = N: rerun the final step cheaply by differencing one shorter sum
  if (last_outer) {
    Real shorter = nested_chain_sum<Real>(n - 1, levels, links, lift, weight, [&](std::uint64_t) { return outer_r; });
    *last_outer = abs(total - shorter);
  }
  return total + shift;
}

}  // namespace detail

/// Compares the generating function evaluated through its product form (outer product
/// taken to infinity, inner sums cut at N) with the family's nested series cut at k_0 <= N.
/// tail = prod pi q_j / sin(pi q_j) * H*_N(c) / (N - 1) + N * |outermost term at N|.
inline NumericReport verify_gf_numeric(const GfCase& g, std::uint64_t n, double tol, unsigned precision = 128) {
  if (n < 2) throw DomainError("verify_gf_numeric needs N >= 2");
  const auto shape = detail::product_form_shape(g);
  const mpfr_prec_t wp = working_precision(precision);
  const Real pi = Real::pi(wp);

  std::vector<Real> zf;
  for (double v : shape.z) zf.emplace_back(v, wp);
  Real lhs = detail::product_form_numeric(n, shape.c, zf, pi);
  if (shape.forced) {
    auto zero = zf;
    zero[*shape.forced] = Real(wp);
    lhs -= detail::product_form_numeric(n, shape.c, zero, pi);
  }
  Real z2_div(1L, wp);
  if (shape.divide_by_z2) {
    z2_div = zf[*shape.forced] * zf[*shape.forced];
    lhs /= z2_div;
  }

  std::vector<Real> zt;
  for (double v : g.z) zt.emplace_back(v, wp);
  Real last(wp);
  Real rhs = detail::gf_rhs_numeric(g, n, zt, &last);

  Real bound(1L, wp);
  for (const auto& zj : zf) bound *= detail::infinite_product(abs(zj), pi);
  std::vector<Entry> ce;
  for (unsigned ci : shape.c) ce.push_back({ci, false});
  const SignedIndex cidx(ce);
  // H*_N(c) is finite even when c_1 = 1
  const Real h = detail::nested_numeric<true>(cidx, n, precision, false).value;
  Real tail = bound * h / Real(static_cast<long>(n - 1), wp) / z2_div + last * Real(static_cast<long>(n), wp);

  nlohmann::ordered_json params{{"family", to_string(g.family)}, {"d", g.d}, {"z", g.z}, {"N", n}};
  if (g.family == GfFamily::General) {
    params["c"] = g.c;
    params["trailing_one"] = g.opts.trailing_one;
    if (g.opts.forced_block) params["forced_block"] = *g.opts.forced_block;
  }
  return make_numeric_report("gf", std::move(params), lhs, rhs, tail, tol);
}

}  // namespace mzstar
