#include "mzstar/numeric.hpp"

#include <gtest/gtest.h>

namespace mzstar {
namespace {

// 45-digit reference values (independent multiprecision library)
constexpr const char* kLog2 = "0.693147180559945309417232121458176568075500134";
constexpr const char* kZeta2 = "1.6449340668482264364724151666460251892189499";
constexpr const char* kZeta3 = "1.20205690315959428539973816151144999076498629";
constexpr const char* kZeta4 = "1.08232323371113819151600369654116790277475095";
constexpr const char* kZeta5 = "1.03692775514336992633136548645703416805708092";
constexpr const char* kZetaStar23 = "1.74849395269394235842833929254343678014964212";
constexpr const char* kZetaStar32 = "1.26573815274672368610011163539872295998959026";
constexpr const char* kZetaBar2One = "0.150257112894949285674967270188931248845623287";

Real constant(const char* digits, mpfr_prec_t bits = 192) {
  Real r(bits);
  mpfr_set_str(r.get(), digits, 10, MPFR_RNDN);
  return r;
}

double gap(const Real& x, const Real& y) { return abs(x - y).to_double(); }

SignedIndex idx(std::initializer_list<long> v) { return SignedIndex::from_signed(std::vector<long>(v)); }

TEST(EulerNumeric, AlternatingHarmonicIsMinusLogTwo) {
  const auto r = euler_numeric(idx({-1}), 1000000, 128);
  EXPECT_LE(gap(r.value, -constant(kLog2)), r.tail_estimate.to_double());
  EXPECT_EQ(r.terms_used, 1000000u);
}

TEST(EulerNumeric, ZetaTwoWithinTail) {
  const auto r = euler_numeric(idx({2}), 1000000, 128);
  EXPECT_LE(gap(r.value, constant(kZeta2)), r.tail_estimate.to_double());
  EXPECT_GT(r.tail_estimate.to_double(), 0.0);
}

TEST(EulerNumeric, AlternatingDepthTwo) {
  const auto r = euler_numeric(idx({-2, 1}), 1000000, 128);
  EXPECT_LE(gap(r.value, constant(kZetaBar2One)), 10 * r.tail_estimate.to_double());
  EXPECT_LT(gap(r.value, constant(kZetaBar2One)), 1e-10);
}

TEST(StarNumeric, DepthTwoClosedForms) {
  const auto a = star_numeric(idx({2, 3}), 200000, 128);
  EXPECT_LE(gap(a.value, constant(kZetaStar23)), 10 * a.tail_estimate.to_double());
  const auto b = star_numeric(idx({3, 2}), 200000, 128);
  EXPECT_LE(gap(b.value, constant(kZetaStar32)), 10 * b.tail_estimate.to_double());
}

TEST(StarNumeric, MatchesExactHarmonicSums) {
  for (const auto& s : {idx({2, 1}), idx({-3, 1, 2}), idx({2, -2})})
    for (std::uint64_t n : {1, 3, 10}) {
      const Real exact(h_star(n, s), 300);
      EXPECT_LT(gap(star_numeric(s, n, 128).value, exact), 1e-35);
      const Real strict(h_strict(n, s), 300);
      if (n >= s.depth()) {
        EXPECT_LT(gap(euler_numeric(s, n, 128).value, strict), 1e-35);
      }
    }
}

TEST(EulerNumeric, Errors) {
  EXPECT_THROW(euler_numeric(idx({1, 2}), 100, 128), DivergenceError);
  EXPECT_THROW(star_numeric(idx({1}), 100, 128), DivergenceError);
  EXPECT_THROW(euler_numeric(idx({2}), 0, 128), DomainError);
  EXPECT_THROW(euler_numeric(idx({2}), 100, 32), DomainError);
  EXPECT_THROW(euler_numeric(idx({2, 2, 2}), 2, 128), DomainError);
}

TEST(EulerNumeric, MonotoneTruncation) {
  for (const auto& s : {idx({2}), idx({3, 1}), idx({2, 2, 1})}) {
    Real previous_value(128);
    double previous_tail = 1e300;
    for (std::uint64_t n = 2000; n <= 64000; n *= 2) {
      const auto r = euler_numeric(s, n, 128);
      EXPECT_GE(r.value, previous_value);
      EXPECT_LE(r.tail_estimate.to_double(), previous_tail) << render(s) << " N=" << n;
      previous_value = r.value;
      previous_tail = r.tail_estimate.to_double();
    }
  }
}

TEST(EulerNumeric, PrecisionIndependence) {
  for (const auto& s : {idx({2, 1}), idx({-3, 2}), idx({2, 2, 2})}) {
    const auto lo = euler_numeric(s, 20000, 128);
    const auto hi = euler_numeric(s, 20000, 256);
    EXPECT_LT(gap(lo.value, hi.value), std::ldexp(1.0, -64));
  }
}

TEST(EulerNumeric, Reproducible) {
  const auto a = star_numeric(idx({2, -3, 1}), 30000, 128);
  const auto b = star_numeric(idx({2, -3, 1}), 30000, 128);
  EXPECT_TRUE(a.value == b.value);
  EXPECT_TRUE(a.tail_estimate == b.tail_estimate);
}

TEST(ZetaSingle, KnownValues) {
  EXPECT_LT(gap(zeta_single(2, 128), constant(kZeta2)), 1e-36);
  EXPECT_LT(gap(zeta_single(3, 128), constant(kZeta3)), 1e-36);
  EXPECT_LT(gap(zeta_single(4, 128), constant(kZeta4)), 1e-36);
  EXPECT_LT(gap(zeta_single(5, 128), constant(kZeta5)), 1e-36);
  const Real pi = Real::pi(160);
  EXPECT_LT(gap(zeta_single(2, 128), pi * pi / Real(6L, 160)), 1e-36);
  EXPECT_THROW(zeta_single(1, 128), DivergenceError);
}

TEST(ZetaSingle, IndependentOfCutoff) {
  for (unsigned s = 2; s <= 8; ++s) {
    const Real a = zeta_single(s, 128);
    const Real b = zeta_single(s, 128, 3 * static_cast<std::uint64_t>(std::ceil(std::exp2(160.0 / (s + 7)))) + 40);
    EXPECT_LT(gap(a, b), 1e-36) << "s=" << s;
  }
}

TEST(CombinationNumeric, Examples) {
  const auto two = combination_numeric(EulerCombination{{idx({3}), 2}}, 100000, 128);
  EXPECT_LE(gap(two.value, Real(2L, 160) * constant(kZeta3)), 10 * two.tail_estimate.to_double());
  EXPECT_TRUE(combination_numeric(EulerCombination{}, 10, 128).value.is_zero());
  const auto expanded = combination_numeric(expand_chain(build_chain(TwoBlockIndex({0, 0}, {3}))), 1000000, 128);
  EXPECT_LE(gap(expanded.value, constant(kZeta3)), 10 * expanded.tail_estimate.to_double() + 1e-12);
  EXPECT_THROW(combination_numeric(EulerCombination{{idx({1, 2}), 1}}, 10, 128), DivergenceError);
}

TEST(ClosedForms, SmallSweep) {
  for (const auto& r : verify_closed_forms(2, 100000, 128, 1e-4)) EXPECT_TRUE(r.pass) << to_json(r).dump();
}

TEST(ClosedForms, AlternatingChecksAreTight) {
  for (const auto& r : verify_closed_forms(2, 100000, 128, 1e-4))
    if (r.check == "alternating_single") {
      EXPECT_LT(r.rel_diff(), 1e-8) << to_json(r).dump();
    }
}

TEST(TwoThreeTwo, DualMethodAgreement) {
  for (unsigned a = 0; a <= 1; ++a)
    for (unsigned b = 0; b <= 1; ++b) {
      const auto r = verify_zagier(a, b, 100000, 128, 1e-4);
      EXPECT_TRUE(r.pass) << to_json(r).dump();
    }
  const auto r = verify_zagier(1, 0, 100000, 128, 1e-4);
  EXPECT_LT(gap(r.lhs, constant(kZetaStar23)), 1e-4);
}

TEST(Duality, GridAgreement) {
  for (const auto& t : two_block_grid(2, 1, {1, 3, 4}, 9, true)) {
    const auto r = verify_duality(t, 20000, 128, 1e-4);
    EXPECT_TRUE(r.pass) << to_json(r).dump();
  }
}

TEST(NumericReport, Json) {
  const auto j = to_json(verify_zagier(0, 0, 1000, 128, 1e-4));
  EXPECT_EQ(j["check"], "two_three_two");
  EXPECT_TRUE(j["lhs"].is_string());
  EXPECT_TRUE(j["abs_diff"].is_number());
  EXPECT_TRUE(j["tail"].is_number());
  EXPECT_TRUE(j["pass"].is_boolean());
}

// product form with infinite outer product = F_N * prod_{k > N} (1 - z_0^2/k^2)^{-1}
TEST(GfNumeric, ProductFormAgreesWithExact) {
  const mpfr_prec_t wp = 192;
  const Real pi = Real::pi(wp);
  const std::vector<BigRational> zq{BigRational(1, 2), BigRational(1, 3), BigRational(1, 5)};
  for (const auto& c : std::vector<std::vector<unsigned>>{{}, {3}, {3, 1}, {4, 3}})
    for (std::uint64_t n : {1, 4, 9}) {
      const std::vector<BigRational> zz(zq.begin(), zq.begin() + static_cast<long>(c.size() + 1));
      std::vector<Real> zr;
      for (const auto& v : zz) zr.emplace_back(v, wp);
      BigRational head(1);
      for (std::uint64_t k = 1; k <= n; ++k) {
        const BigRational k2(static_cast<unsigned long>(k * k));
        head *= k2 / (k2 - zz[0] * zz[0]);
      }
      const Real expected = Real(gf_product_form(n, c, zz), wp) * detail::infinite_product(zr[0], pi) / Real(head, wp);
      EXPECT_LT(gap(detail::product_form_numeric(n, c, zr, pi), expected), 1e-45);
    }
}

GfCase gf(GfFamily th, std::size_t d, std::vector<double> z) {
  GfCase g;
  g.family = th;
  g.d = d;
  g.z = std::move(z);
  return g;
}

TEST(GfNumeric, FamiliesSmallN) {
  const std::vector<GfCase> cases{
      gf(GfFamily::TwoThree, 1, {0.3, 0.2}),
      gf(GfFamily::TwoThree, 2, {0.3, 0.2, 0.45}),
      gf(GfFamily::TwoThreeD0, 0, {0.5}),
      gf(GfFamily::TwoOneTwo, 1, {0.25, 0.25}),
      gf(GfFamily::TwoOneTwo, 0, {0.4}),
      gf(GfFamily::TwoOneTwo, 2, {0.5, 0.3, 0.2}),
      gf(GfFamily::TwoOneTwoTrailing, 1, {0.25, 0.25}),
      gf(GfFamily::TwoOneTwoTrailing, 0, {0.4}),
      gf(GfFamily::TwoThreeOne, 1, {0.3, 0.2, 0.1}),
      gf(GfFamily::TwoThreeOneTrailing, 1, {0.3, 0.2}),
  };
  for (const auto& g : cases) {
    const auto r = verify_gf_numeric(g, 1500, 1e-4);
    EXPECT_TRUE(r.pass) << to_json(r).dump();
    EXPECT_LT(r.abs_diff.to_double(), r.tail.to_double());
    const auto finer = verify_gf_numeric(g, 6000, 1e-4);
    EXPECT_LT(finer.abs_diff.to_double(), 0.5 * r.abs_diff.to_double()) << to_json(finer).dump();
    EXPECT_LT(finer.tail.to_double(), r.tail.to_double());
  }
}

TEST(GfNumeric, GeneralShapes) {
  std::vector<GfCase> cases;
  for (const auto& c : std::vector<std::vector<unsigned>>{{}, {3}, {4}, {5, 1}, {3, 4}})
    for (bool trailing : {false, true}) {
      GfCase g;
      g.family = GfFamily::General;
      g.c = c;
      g.d = c.size();
      g.opts.trailing_one = trailing;
      g.z.assign(c.size() + 1, 0.35);
      if (c.empty() && !trailing) g.opts.forced_block = 0;
      cases.push_back(g);
    }
  for (const auto& g : cases) {
    const auto r = verify_gf_numeric(g, 3000, 1e-4);
    EXPECT_TRUE(r.pass) << to_json(r).dump();
  }
}

TEST(GfNumeric, DisplayWithDZeroIsSineProduct) {
  // 1 - 2 z^2 sum (-1)^k/(k^2 - z^2) = pi z / sin(pi z)
  const auto r = verify_gf_numeric(gf(GfFamily::TwoThreeD0, 0, {0.5}), 100000, 1e-4);
  EXPECT_TRUE(r.pass);
  EXPECT_LT(gap(r.lhs, Real::pi(160) / Real(2L, 160)), 1e-30);
  EXPECT_LT(r.abs_diff.to_double(), 1e-9);
}

TEST(GfNumeric, Errors) {
  EXPECT_THROW(verify_gf_numeric(gf(GfFamily::TwoThree, 1, {0.3}), 100, 1e-4), DomainError);
  EXPECT_THROW(verify_gf_numeric(gf(GfFamily::TwoThree, 1, {0.3, 1.0}), 100, 1e-4), DomainError);
  EXPECT_THROW(verify_gf_numeric(gf(GfFamily::TwoThree, 0, {0.3}), 100, 1e-4), DomainError);
  GfCase g;
  g.family = GfFamily::General;
  g.c = {1};
  g.z = {0.3, 0.2};
  EXPECT_THROW(verify_gf_numeric(g, 100, 1e-4), DivergenceError);
  g.c = {2};
  EXPECT_THROW(verify_gf_numeric(g, 100, 1e-4), DomainError);
}

}  // namespace
}  // namespace mzstar
