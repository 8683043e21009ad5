#include <gtest/gtest.h>

#include "perfclose/errors.hpp"
#include "perfclose/random_corpus.hpp"

namespace perfclose {
namespace {

Exp ipow(Exp b, int e) {
  Exp r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// (num, den) of x written in s = t^(1/p^n), n >= level(x), by substitution.
std::pair<Poly, Poly> at_level(const PerfElem& x, int n) {
  Exp k = ipow(x.modulus().value(), n - x.level());
  return {x.value().num().inflate(k), x.value().den().inflate(k)};
}

TEST(PerfElem, RootPlusT) {
  PrimeModulus m(2);
  PerfElem x = PerfElem::root_of_t(m, 2) + PerfElem::t(m);
  EXPECT_EQ(x.level(), 2);
  EXPECT_EQ(x.value(), RatFunc(Poly::from_terms(m, {{1, 1}, {4, 1}})));
}

TEST(PerfElem, FrobeniusDropsLevel) {
  PrimeModulus m(3);
  PerfElem x = PerfElem::root_of_t(m, 1);
  EXPECT_EQ(x.frobenius(), PerfElem::t(m));
  EXPECT_EQ(x.frobenius().level(), 0);
}

TEST(PerfElem, SquareOfRootIsT) {
  PrimeModulus m(2);
  PerfElem r = PerfElem::root_of_t(m, 1);
  EXPECT_EQ(r * r, PerfElem::t(m));
}

TEST(PerfElem, NormalizesPthPowers) {
  PrimeModulus m(3);
  PerfElem x(2, RatFunc(Poly::monomial(m, 1, 9), Poly::from_coeffs(m, std::vector<std::int64_t>{1, 0, 0, 1})));
  EXPECT_EQ(x.level(), 1);
  EXPECT_EQ(x, PerfElem(1, RatFunc(Poly::monomial(m, 1, 3), Poly::from_coeffs(m, std::vector<std::int64_t>{1, 1}))));
}

TEST(PerfElem, LevelCap) {
  PrimeModulus m(2);
  PerfElem x = PerfElem::root_of_t(m, 3);
  EXPECT_THROW(x.pth_root(3), LevelCapExceeded);
  EXPECT_EQ(x.pth_root(4).level(), 4);
}

TEST(PerfElem, ToString) {
  PrimeModulus m(2);
  EXPECT_EQ((PerfElem::root_of_t(m, 1) + PerfElem::t(m)).to_string(), "t + rt(t,1)");
  EXPECT_EQ(PerfElem::constant(m, 0).to_string(), "0");
}

TEST(PerfElem, ArithmeticAgainstSubstitution) {
  Rng rng(31);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 150; ++i) {
      PerfElem a = random_elem(rng, m, 0, 2, 3);
      PerfElem b = random_elem(rng, m, 0, 2, 3);
      int n = std::max(a.level(), b.level());
      auto [an, ad] = at_level(a, n);
      auto [bn, bd] = at_level(b, n);
      for (auto [got, num, den] : {std::tuple{a + b, an * bd + bn * ad, ad * bd},
                                   std::tuple{a - b, an * bd - bn * ad, ad * bd},
                                   std::tuple{a * b, an * bn, ad * bd},
                                   std::tuple{a / b, an * bd, ad * bn}}) {
        ASSERT_LE(got.level(), n);
        auto [gn, gd] = at_level(got, n);
        EXPECT_EQ(gn * den, num * gd);
      }
    }
  }
}

TEST(PerfElem, LevelIsMinimal) {
  Rng rng(32);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 200; ++i) {
      PerfElem x = random_elem(rng, m, 0, 3, 4, false);
      if (x.level() == 0) continue;
      EXPECT_FALSE(is_pth_power(x.value().num()).has_value() && is_pth_power(x.value().den()).has_value());
    }
  }
}

TEST(PerfElem, FrobeniusAndRootInverse) {
  Rng rng(33);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 100; ++i) {
      PerfElem x = random_elem(rng, m, 0, 3, 3, false);
      EXPECT_EQ(x.pth_root().frobenius(), x);
      EXPECT_EQ(x.frobenius().pth_root(), x);
      EXPECT_EQ(x.frobenius(), x.pow(p));
    }
  }
}

TEST(PerfElem, DivisionByZeroThrows) {
  PrimeModulus m(5);
  EXPECT_THROW(PerfElem::t(m) / PerfElem(m), DivisionByZero);
}

}  // namespace
}  // namespace perfclose
