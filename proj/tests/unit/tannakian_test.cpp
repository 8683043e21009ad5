#include <gtest/gtest.h>

#include <memory>

#include "perfclose/errors.hpp"
#include "perfclose/random_corpus.hpp"
#include "perfclose/tannakian.hpp"

namespace perfclose {
namespace {

PerfElem r(PrimeModulus m, int k) { return PerfElem::root_of_t(m, k); }
PerfElem c(PrimeModulus m, std::int64_t v) { return PerfElem::constant(m, v); }
PerfMatrix one_by_one(const PerfElem& x) { return PerfMatrix(1, 1, x); }

FpMatrix fp(PrimeModulus m, std::vector<std::vector<std::uint32_t>> rows) {
  std::vector<std::vector<FpElem>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (std::uint32_t v : row) out.back().push_back({v, m});
  }
  return FpMatrix::from_rows(out, FpElem{0, m});
}

TEST(Triple, RejectsSingular) {
  PrimeModulus m(2);
  EXPECT_THROW(TannakianTriple(m, one_by_one(PerfElem(m))), DomainError);
  EXPECT_THROW(TannakianTriple(m, PerfMatrix(1, 2, c(m, 1))), DomainError);
}

TEST(Triple, Rank1Iso) {
  PrimeModulus m(2);
  TannakianTriple x(m, one_by_one(r(m, 1)));
  TannakianTriple y(m, one_by_one(r(m, 1) * PerfElem::t(m)));
  auto iso = rank1_iso(x, y);
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(iso->a()(0, 0), PerfElem::t(m).inverse());
  EXPECT_EQ(iso->b()(0, 0).value, 1u);
  EXPECT_TRUE(iso->is_compatible());
  EXPECT_FALSE(rank1_iso(x, TannakianTriple::unit(m)).has_value());
}

TEST(Triple, Rank1ClassAgreesWithIso) {
  Rng rng(71);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 50; ++i) {
      PerfElem u = random_elem(rng, m, 0, 2, 2);
      PerfElem v = (i % 2) ? u * random_elem(rng, m, 0, 0, 2) : random_elem(rng, m, 0, 2, 2);
      TannakianTriple x(m, one_by_one(u)), y(m, one_by_one(v));
      EXPECT_EQ(rank1_iso(x, y).has_value(), class_eq(rank1_class(x), rank1_class(y)));
    }
  }
}

TEST(Triple, MorphismCompatibilityChecked) {
  PrimeModulus m(3);
  TannakianTriple x(m, one_by_one(r(m, 1)));
  EXPECT_NO_THROW(TripleMorphism::make(x, x, one_by_one(c(m, 2)), fp(m, {{2}})));
  EXPECT_THROW(TripleMorphism::make(x, x, one_by_one(c(m, 2)), fp(m, {{1}})), DomainError);
  EXPECT_THROW(TripleMorphism::make(x, x, one_by_one(r(m, 1)), fp(m, {{1}})), DomainError);
}

TEST(Triple, ComposeAndIdentity) {
  PrimeModulus m(2);
  TannakianTriple x(m, one_by_one(r(m, 1)));
  TannakianTriple y(m, one_by_one(r(m, 1) * PerfElem::t(m)));
  auto f = *rank1_iso(x, y);
  auto g = *rank1_iso(y, x);
  EXPECT_EQ(compose(g, f), identity(x));
  EXPECT_EQ(compose(f, identity(x)), f);
  EXPECT_THROW(compose(f, f), DomainError);
}

TEST(Triple, TensorSumDual) {
  Rng rng(72);
  PrimeModulus m(3);
  for (int i = 0; i < 10; ++i) {
    TannakianTriple x(m, random_perf_matrix(rng, m, 2, 1, 1));
    TannakianTriple y(m, random_perf_matrix(rng, m, 2, 1, 1));
    EXPECT_EQ(tensor(x, y).dim(), 4u);
    EXPECT_EQ(direct_sum(x, y).dim(), 4u);
    PerfMatrix prod = perf_multiply(dual(x).psi().transpose(), x.psi());
    EXPECT_EQ(prod, perf_identity(m, 2));
    EXPECT_EQ(perf_determinant(tensor(x, y).psi()),
              perf_determinant(x.psi()).pow(2) * perf_determinant(y.psi()).pow(2));
  }
}

TEST(Triple, PullbackTrivializesClass) {
  PrimeModulus m(2);
  auto l = std::make_shared<const InsepExt>(InsepExt::generate(m, {r(m, 1)}));
  TannakianTriple x(m, one_by_one(r(m, 1)));
  TannakianTriple y = pullback_extension(x, l);
  EXPECT_TRUE(rank1_view_class(y).is_trivial());
  EXPECT_FALSE(rank1_view_class(x).is_trivial());
  EXPECT_THROW(rank1_class(y), DomainError);
  EXPECT_EQ(essential_surjectivity_witness(y), x);
}

TEST(Triple, PullbackOfMorphismKeepsFiber) {
  PrimeModulus m(2);
  auto l = std::make_shared<const InsepExt>(InsepExt::generate(m, {r(m, 2)}));
  TannakianTriple x(m, one_by_one(r(m, 1)));
  TannakianTriple y(m, one_by_one(r(m, 1) * PerfElem::t(m)));
  auto f = *rank1_iso(x, y);
  auto g = pullback_extension(f, l);
  EXPECT_EQ(fiber_functor(g), fiber_functor(f));
  EXPECT_TRUE(g.is_compatible());
  EXPECT_EQ(arrow_from_fiber(x, y, fiber_functor(f)), f.a());
}

TEST(Triple, TrivializeLevelZero) {
  PrimeModulus m(5);
  PerfElem t = PerfElem::t(m);
  PerfMatrix psi = PerfMatrix::from_rows({{t, c(m, 1)}, {c(m, 0), t + c(m, 2)}}, c(m, 0));
  auto iso = trivialize(TannakianTriple(m, psi));
  ASSERT_TRUE(iso.has_value());
  EXPECT_EQ(iso->target().psi(), perf_identity(m, 2));
  EXPECT_FALSE(trivialize(TannakianTriple(m, one_by_one(r(m, 1)))).has_value());
}

TEST(FrobeniusRep, ConvertAndLevelUp) {
  PrimeModulus m(2);
  RatMatrix lam(1, 1, RatFunc(Poly::variable(m)));
  FrobeniusRep r1(1, lam);
  EXPECT_EQ(convert_level_rep(r1).psi()(0, 0), r(m, 1));
  FrobeniusRep r2 = level_up(r1);
  EXPECT_EQ(r2.level(), 2);
  EXPECT_EQ(r2.lambda()(0, 0), RatFunc(Poly::monomial(m, 1, 2)));
  EXPECT_EQ(convert_level_rep(r2).psi()(0, 0), r(m, 1));
}

TEST(FrobeniusRep, RoundTrip) {
  Rng rng(73);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 20; ++i) {
      int lvl = i % 3;
      FrobeniusRep rep(lvl, random_rat_matrix(rng, m, 2, 2));
      TannakianTriple x = convert_level_rep(rep);
      EXPECT_EQ(to_level_rep(x, lvl), rep);
      EXPECT_EQ(convert_level_rep(level_up(rep)), x);
    }
  }
}

TEST(FrobeniusRep, Errors) {
  PrimeModulus m(2);
  RatMatrix lam(1, 1, RatFunc(Poly::variable(m)));
  EXPECT_THROW(FrobeniusRep(9, lam), LevelCapExceeded);
  EXPECT_THROW(FrobeniusRep(1, RatMatrix(1, 1, RatFunc(m))), DomainError);
  EXPECT_THROW(to_level_rep(TannakianTriple(m, one_by_one(r(m, 2))), 1), DomainError);
}

}  // namespace
}  // namespace perfclose
