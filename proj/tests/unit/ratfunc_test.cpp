#include <gtest/gtest.h>

#include <random>

#include "perfclose/errors.hpp"
#include "perfclose/random_corpus.hpp"
#include "perfclose/ratfunc.hpp"

namespace perfclose {
namespace {

Poly P(PrimeModulus m, std::vector<std::int64_t> asc) { return Poly::from_coeffs(m, asc); }

// Equality of fractions by cross-multiplication, independent of reduction.
bool cross_equal(const Poly& an, const Poly& ad, const Poly& bn, const Poly& bd) {
  return an * bd == bn * ad;
}

TEST(RatFunc, InverseTSumVanishesOverF2) {
  PrimeModulus m(2);
  RatFunc x(Poly::constant(m, 1), Poly::variable(m));
  EXPECT_TRUE((x + x).is_zero());
}

TEST(RatFunc, ReducesByGcd) {
  PrimeModulus m(2);
  RatFunc x(P(m, {1, 0, 0, 1}), P(m, {1, 0, 0, 0, 0, 1}));
  EXPECT_EQ(x.num(), P(m, {1, 1, 1}));
  EXPECT_EQ(x.den(), P(m, {1, 1, 1, 1, 1}));
}

TEST(RatFunc, DenominatorMonic) {
  PrimeModulus m(5);
  RatFunc x(P(m, {1}), P(m, {0, 3}));
  EXPECT_TRUE(x.den().is_monic());
  EXPECT_EQ(x.num(), Poly::constant(m, 2));
}

TEST(RatFunc, ZeroDenominatorThrows) {
  PrimeModulus m(3);
  EXPECT_THROW(RatFunc(P(m, {1}), Poly(m)), DivisionByZero);
  EXPECT_THROW(RatFunc(m).inverse(), DivisionByZero);
}

TEST(RatFunc, ArithmeticAgainstCrossMultiplication) {
  std::mt19937_64 rng(21);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 200; ++i) {
      Poly an = random_poly(m, 4, rng), ad = random_nonzero_poly(rng, m, 4);
      Poly bn = random_poly(m, 4, rng), bd = random_nonzero_poly(rng, m, 4);
      RatFunc a(an, ad), b(bn, bd);
      RatFunc s = a + b;
      EXPECT_TRUE(cross_equal(s.num(), s.den(), an * bd + bn * ad, ad * bd));
      RatFunc pr = a * b;
      EXPECT_TRUE(cross_equal(pr.num(), pr.den(), an * bn, ad * bd));
      if (!bn.is_zero()) {
        RatFunc q = a / b;
        EXPECT_TRUE(cross_equal(q.num(), q.den(), an * bd, ad * bn));
      }
      EXPECT_EQ(gcd(s.num(), s.den()).degree(), 0);
      EXPECT_TRUE(s.den().is_monic());
    }
  }
}

TEST(RatFunc, FrobeniusIsPthPower) {
  std::mt19937_64 rng(22);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 50; ++i) {
      RatFunc x = random_ratfunc(rng, m, 3);
      EXPECT_EQ(x.frobenius(), x.pow(p));
      auto r = x.frobenius().pth_root();
      ASSERT_TRUE(r.has_value());
      EXPECT_EQ(*r, x);
    }
  }
}

TEST(RatFunc, NegativePower) {
  PrimeModulus m(3);
  RatFunc t(Poly::variable(m));
  EXPECT_EQ(t.pow(-2) * t.pow(2), RatFunc::constant(m, 1));
}

}  // namespace
}  // namespace perfclose
