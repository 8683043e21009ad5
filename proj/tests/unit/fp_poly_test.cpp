#include <gtest/gtest.h>

#include <map>
#include <random>

#include "perfclose/errors.hpp"
#include "perfclose/fp_poly.hpp"

namespace perfclose {
namespace {

Poly P(PrimeModulus m, std::vector<std::int64_t> asc) { return Poly::from_coeffs(m, asc); }

// Every monic polynomial of degree d over F_p, by counting in base p.
std::vector<Poly> monic_of_degree(PrimeModulus m, int d) {
  std::vector<Poly> out;
  std::int64_t p = m.value();
  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= p;
  for (std::int64_t code = 0; code < total; ++code) {
    std::vector<std::int64_t> c(d + 1, 0);
    std::int64_t k = code;
    for (int i = 0; i < d; ++i) {
      c[i] = k % p;
      k /= p;
    }
    c[d] = 1;
    out.push_back(P(m, c));
  }
  return out;
}

// Trial division by every monic polynomial of degree <= deg/2.
bool brute_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const Poly& g : monic_of_degree(f.modulus(), d))
      if ((f % g).is_zero()) return false;
  return true;
}

TEST(PrimeModulus, RejectsComposite) {
  EXPECT_THROW(PrimeModulus(4), DomainError);
  EXPECT_THROW(PrimeModulus(1), DomainError);
  EXPECT_NO_THROW(PrimeModulus(7));
}

TEST(PrimeModulus, InverseOfZeroThrows) {
  PrimeModulus m(5);
  EXPECT_THROW(m.inv(0), DivisionByZero);
  for (std::uint32_t a = 1; a < 5; ++a) EXPECT_EQ(m.mul(a, m.inv(a)), 1u);
}

TEST(Poly, GcdOverF2) {
  PrimeModulus m(2);
  Poly a = P(m, {1, 0, 0, 1});
  Poly b = P(m, {1, 0, 0, 0, 0, 1});
  EXPECT_EQ(gcd(a, b), P(m, {1, 1}));
}

TEST(Poly, ProductOverF2) {
  PrimeModulus m(2);
  EXPECT_EQ(P(m, {0, 1, 1}) * P(m, {1, 1}), P(m, {0, 1, 0, 1}));
}

TEST(Poly, PthPowerRecognized) {
  PrimeModulus m(2);
  auto r = is_pth_power(P(m, {0, 0, 1, 0, 1}));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, P(m, {0, 1, 1}));
  EXPECT_FALSE(is_pth_power(P(m, {0, 1, 1})).has_value());
}

TEST(Poly, DivisionByZeroThrows) {
  PrimeModulus m(3);
  EXPECT_THROW(divrem(P(m, {1, 1}), Poly(m)), DivisionByZero);
}

TEST(Poly, MixedModuliThrow) {
  EXPECT_THROW(P(PrimeModulus(2), {1, 1}) + P(PrimeModulus(3), {1, 1}), ModulusMismatch);
}

TEST(Poly, ToStringDescending) {
  PrimeModulus m(5);
  EXPECT_EQ(P(m, {1, 2, 0, 1}).to_string(), "t^3 + 2*t + 1");
  EXPECT_EQ(Poly(m).to_string(), "0");
}

TEST(Poly, DivremIdentityRandom) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 200; ++i) {
      Poly a = random_poly(m, 12, rng);
      Poly b = random_poly(m, 6, rng);
      if (b.is_zero()) continue;
      DivRem qr = divrem(a, b);
      EXPECT_EQ(qr.quotient * b + qr.remainder, a);
      EXPECT_LT(qr.remainder.degree(), b.degree());
    }
  }
}

TEST(Poly, GcdAgainstCommonFactor) {
  std::mt19937_64 rng(12);
  PrimeModulus m(3);
  for (int i = 0; i < 200; ++i) {
    Poly c = random_poly(m, 3, rng);
    Poly a = random_poly(m, 5, rng);
    Poly b = random_poly(m, 5, rng);
    if (c.is_zero() || a.is_zero() || b.is_zero()) continue;
    Poly g = gcd(a * c, b * c);
    EXPECT_TRUE(g.is_monic());
    EXPECT_TRUE(((a * c) % g).is_zero());
    EXPECT_TRUE(((b * c) % g).is_zero());
    EXPECT_TRUE((g % c.monic()).is_zero());
    EXPECT_EQ(gcd(exact_div(a * c, g), exact_div(b * c, g)), Poly::constant(m, 1));
  }
}

TEST(Poly, PowmodMatchesRepeatedProduct) {
  std::mt19937_64 rng(13);
  PrimeModulus m(5);
  for (int i = 0; i < 50; ++i) {
    Poly a = random_poly(m, 4, rng);
    Poly mod = random_poly(m, 5, rng);
    if (mod.degree() < 1) continue;
    Poly slow = Poly::constant(m, 1);
    for (int e = 0; e < 13; ++e) slow = (slow * a) % mod;
    EXPECT_EQ(powmod(a, 13, mod), slow);
  }
}

TEST(Factor, SmallExamples) {
  PrimeModulus two(2);
  Factorization f = factor(P(two, {1, 0, 0, 1}));
  ASSERT_EQ(f.factors.size(), 2u);
  EXPECT_EQ(f.factors[0], (Factor{P(two, {1, 1}), 1}));
  EXPECT_EQ(f.factors[1], (Factor{P(two, {1, 1, 1}), 1}));

  PrimeModulus three(3);
  Factorization g = factor(Poly::monomial(three, 1, 4));
  ASSERT_EQ(g.factors.size(), 1u);
  EXPECT_EQ(g.factors[0], (Factor{Poly::variable(three), 4}));
}

TEST(Factor, ZeroThrows) { EXPECT_THROW(factor(Poly(PrimeModulus(2))), DomainError); }

TEST(Factor, RandomAgainstTrialDivision) {
  std::mt19937_64 rng(14);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 150; ++i) {
      Poly f = random_poly(m, 8, rng);
      if (f.is_zero()) continue;
      Factorization fz = factor(f, rng);
      EXPECT_EQ(expand(fz, m), f);
      for (const Factor& fc : fz.factors) {
        EXPECT_TRUE(fc.poly.is_monic());
        EXPECT_GE(fc.multiplicity, 1);
        EXPECT_TRUE(brute_irreducible(fc.poly)) << fc.poly.to_string();
      }
      for (std::size_t k = 1; k < fz.factors.size(); ++k)
        EXPECT_LT(fz.factors[k - 1].poly, fz.factors[k].poly);
    }
  }
}

TEST(Factor, SeedDoesNotChangeResult) {
  PrimeModulus m(3);
  std::mt19937_64 rng(15);
  for (int i = 0; i < 40; ++i) {
    Poly f = random_poly(m, 10, rng);
    if (f.is_zero()) continue;
    Factorization a = factor(f, std::uint64_t{1});
    Factorization b = factor(f, std::uint64_t{99});
    EXPECT_EQ(a.unit, b.unit);
    EXPECT_EQ(a.factors, b.factors);
  }
}

TEST(Factor, HighPowerOfP) {
  PrimeModulus m(2);
  Poly base = P(m, {1, 1, 1});
  Factorization f = factor(base.pow(8) * P(m, {0, 1}).pow(3));
  std::map<std::string, Exp> got;
  for (const Factor& fc : f.factors) got[fc.poly.to_string()] = fc.multiplicity;
  EXPECT_EQ(got, (std::map<std::string, Exp>{{"t", 3}, {"t^2 + t + 1", 8}}));
}

}  // namespace
}  // namespace perfclose
