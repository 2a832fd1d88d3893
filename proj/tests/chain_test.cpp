#include "mzstar/chain.hpp"

#include <gtest/gtest.h>

#include "mzstar/identities.hpp"
#include "oracle.hpp"

namespace mzstar {
namespace {

SignedIndex idx(std::initializer_list<long> v) { return SignedIndex::from_signed(std::vector<long>(v)); }

TEST(BuildChain, Examples) {
  for (unsigned a = 0; a <= 3; ++a)
    for (unsigned b = 0; b <= 3; ++b) {
      const auto ch = build_chain(TwoBlockIndex({a, b}, {3}));
      EXPECT_EQ(ch.vars, (std::vector<ChainVar>{{2 * a + 2, 1}, {2 * b + 1, 0}}));
      EXPECT_EQ(ch.links, std::vector<Link>{Link::COND2});
      EXPECT_EQ(ch.scalar, -2);
    }
  const auto single = build_chain(TwoBlockIndex({1}, {}));
  EXPECT_EQ(single.vars, (std::vector<ChainVar>{{2, 1}}));
  EXPECT_EQ(single.scalar, -2);
  const auto sharp = build_chain(TwoBlockIndex({0, 0}, {5}));
  EXPECT_EQ(sharp.vars, (std::vector<ChainVar>{{2, 1}, {1, 0}, {1, 0}, {1, 0}}));
  EXPECT_EQ(sharp.links.size(), 3u);
}

TEST(BuildChain, Errors) {
  EXPECT_THROW(build_chain(TwoBlockIndex({0, 0}, {1})), DivergenceError);
  EXPECT_THROW(build_chain(TwoBlockIndex({0}, {}, true)), DivergenceError);
  EXPECT_THROW(build_chain(TwoBlockIndex({0, 0}, {2})), DomainError);
}

TEST(ExpandChain, Examples) {
  EXPECT_EQ(expand_chain(build_chain(TwoBlockIndex({0, 0}, {3}))), (EulerCombination{{idx({-3}), -2}, {idx({-2, 1}), -4}}));
  ChainSum one;
  one.scalar = -2;
  one.vars = {{7, 1}};
  EXPECT_EQ(expand_chain(one), (EulerCombination{{idx({-7}), -2}}));
  EXPECT_EQ(render(expand_chain(build_chain(TwoBlockIndex({0, 0}, {3})))), "-2·Z(-3) -4·Z(-2,1)");
  EXPECT_EQ(render(expand_chain(build_chain(TwoBlockIndex({1}, {})))), "-2·Z(-2)");
}

TEST(ExpandChain, TwoThreeTwoClosedForm) {
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      EXPECT_TRUE(combination_equal(expand_chain(build_chain(TwoBlockIndex({a, b}, {3}))), two_three_two_reference(a, b)));
}

TEST(ExpandChain, TwoOneTwoClosedForm) {
  for (unsigned a = 1; a <= 3; ++a)
    for (unsigned b = 1; b <= 3; ++b)
      EXPECT_TRUE(combination_equal(expand_chain(build_chain(TwoBlockIndex({a, b}, {1}))), two_one_two_reference(a, b)));
  EXPECT_THROW(two_one_two_reference(0, 1), DomainError);
}

TEST(ExpandChain, TwoOneReference) {
  for (std::size_t d = 1; d <= 3; ++d) {
    std::vector<unsigned> a(d, 0);
    a[0] = 1;
    while (true) {
      // ({2}^{a_1},1,...,{2}^{a_d},1): separators 1 between blocks, trailing one
      const TwoBlockIndex t(a, std::vector<unsigned>(d - 1, 1), true);
      EXPECT_TRUE(combination_equal(expand_chain(build_chain(t)), two_one_reference(a))) << render(t.flatten());
      std::size_t pos = 0;
      while (pos < d && a[pos] == 2) {
        a[pos] = pos == 0 ? 1 : 0;
        ++pos;
      }
      if (pos == d) break;
      ++a[pos];
    }
  }
}

TEST(TwoOneReference, Examples) {
  EXPECT_EQ(two_one_reference({1}), (EulerCombination{{idx({3}), 2}}));
  EXPECT_EQ(two_one_reference({1, 1}), (EulerCombination{{idx({3, 3}), 4}, {idx({6}), 2}}));
  EXPECT_EQ(two_one_reference({2, 0}), (EulerCombination{{idx({5, 1}), 4}, {idx({6}), 2}}));
  EXPECT_THROW(two_one_reference({0, 1}), DivergenceError);
}

TEST(EulerCombination, EqualityDropsZeros) {
  EulerCombination x{{idx({3}), 2}};
  EulerCombination y{{idx({3}), 2}, {idx({5}), 1}};
  y.add(idx({5}), -1);
  EXPECT_TRUE(combination_equal(x, y));
  EXPECT_TRUE(combination_equal(EulerCombination{}, EulerCombination{}));
  EXPECT_EQ(render(EulerCombination{}), "0");
}

// Brute-force chain evaluation: enumerate top >= v_0 >= ... >= v_L >= 1 directly.
BigRational brute_chain(const ChainSum& ch, std::uint64_t top) {
  BigRational total(0);
  oracle::for_each_chain(top, 1, ch.vars.size(), false, [&](const std::vector<std::uint64_t>& v) {
    BigRational term = ch.scalar;
    for (std::size_t j = 0; j < v.size(); ++j) {
      term *= oracle::inv_pow(v[j], ch.vars[j].exponent);
      if (ch.vars[j].parity && (v[j] & 1u)) term = -term;
      if (j > 0 && ch.links[j - 1] == Link::COND2 && v[j - 1] != v[j]) term *= 2;
    }
    total += term;
  });
  return total;
}

TEST(EvaluateChain, MatchesBruteForce) {
  ChainSum ch;
  ch.scalar = 3;
  ch.vars = {{2, 1}, {1, 0}, {3, 1}, {1, 1}};
  ch.links = {Link::COND2, Link::PLAIN, Link::COND2};
  for (std::uint64_t top = 0; top <= 8; ++top) EXPECT_EQ(evaluate_chain(ch, top), brute_chain(ch, top));
}

TEST(EvaluateChain, TruncationEqualityOverGrid) {
  for (const auto& t : two_block_grid(2, 1, {1, 3, 4, 5}, 12, true)) {
    const auto ch = build_chain(t);
    const auto comb = expand_chain(ch);
    for (std::uint64_t n : {1, 2, 5, 13}) EXPECT_EQ(evaluate_chain(ch, n), evaluate_truncated(comb, n)) << render(t.flatten());
  }
}

TEST(EvaluateChain, PlainLinksExpandWithoutFactorTwo) {
  ChainSum ch;
  ch.vars = {{2, 0}, {1, 1}, {2, 0}};
  ch.links = {Link::PLAIN, Link::COND2};
  const auto comb = expand_chain(ch);
  EXPECT_EQ(comb.coefficient(idx({2, -1, 2})), 2);
  EXPECT_EQ(comb.coefficient(idx({-3, 2})), 2);
  EXPECT_EQ(comb.coefficient(idx({2, -3})), 1);
  EXPECT_EQ(comb.coefficient(idx({-5})), 1);
  for (std::uint64_t n = 0; n <= 9; ++n) EXPECT_EQ(evaluate_chain(ch, n), evaluate_truncated(comb, n));
}

// The dropped exponent-0 tail: sum_{v=1}^u (-1)^v 2^Delta(u,v) = -1.
TEST(BuildChain, FoldedTailAgreesWithUnfoldedSum) {
  for (unsigned a = 1; a <= 3; ++a)
    for (std::uint64_t n = 1; n <= 12; ++n) {
      const TwoBlockIndex t({a, 0}, {1});
      const auto folded = build_chain(t);
      BigRational unfolded(0);
      for (std::uint64_t u = 1; u <= n; ++u) {
        BigRational inner(0);
        for (std::uint64_t v = 1; v <= u; ++v) inner += BigRational((v & 1u) ? -1 : 1) * (u == v ? 1 : 2);
        BigRational head = oracle::inv_pow(u, folded.vars[0].exponent);
        if (folded.vars[0].parity && (u & 1u)) head = -head;
        unfolded += head * inner;
      }
      EXPECT_EQ(evaluate_chain(folded, n), -folded.scalar * unfolded);
    }
}

TEST(ExpandChain, KeysConvergeAndCoefficientsArePowersOfTwo) {
  for (const auto& t : two_block_grid(3, 2, {1, 3}, 16, true)) {
    const auto comb = expand_chain(build_chain(t));
    for (const auto& [key, coeff] : comb.terms()) {
      EXPECT_TRUE(key.converges()) << render(t.flatten()) << " -> " << render(key);
      mpz_class mag = abs(coeff.get_num());
      EXPECT_EQ(coeff.get_den(), 1);
      EXPECT_GE(mag, 2);
      EXPECT_EQ(mpz_popcount(mag.get_mpz_t()), 1u) << render(t.flatten());
    }
  }
}

TEST(ExpandChain, KeysConvergeWithSharpBlocks) {
  for (const auto& t : two_block_grid(2, 2, {1, 3, 4, 5}, 14, true)) {
    const auto comb = expand_chain(build_chain(t));
    for (const auto& [key, coeff] : comb.terms()) EXPECT_TRUE(key.converges());
  }
}

}  // namespace
}  // namespace mzstar
