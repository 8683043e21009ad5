#include <gtest/gtest.h>

#include "perfclose/errors.hpp"
#include "perfclose/extension.hpp"
#include "perfclose/random_corpus.hpp"

namespace perfclose {
namespace {

PerfElem r(PrimeModulus m, int k) { return PerfElem::root_of_t(m, k); }
PerfElem c(PrimeModulus m, std::int64_t v) { return PerfElem::constant(m, v); }

Exp ipow(Exp b, int e) {
  Exp out = 1;
  while (e-- > 0) out *= b;
  return out;
}

// Over F_p(t) every finitely generated purely inseparable extension is
// K^(1/p^e), e the largest generator level.
int top_level(const std::vector<PerfElem>& gens) {
  int e = 0;
  for (const PerfElem& g : gens) e = std::max(e, g.level());
  return e;
}

TEST(InsepExt, EmptyGeneratorsGiveBase) {
  PrimeModulus m(2);
  InsepExt k = InsepExt::generate(m, {});
  EXPECT_EQ(k.degree(), 1);
  ASSERT_EQ(k.basis().size(), 1u);
  EXPECT_TRUE(k.basis()[0].is_one());
  EXPECT_FALSE(k.member(r(m, 1)));
}

TEST(InsepExt, SquareRootOfT) {
  PrimeModulus m(2);
  InsepExt l = InsepExt::generate(m, {r(m, 1)});
  EXPECT_EQ(l.degree(), 2);
  ASSERT_EQ(l.basis().size(), 2u);
  EXPECT_TRUE(l.member(c(m, 1)));
  EXPECT_TRUE(l.member(r(m, 1)));
  EXPECT_FALSE(l.member(r(m, 2)));
  EXPECT_FALSE(l.spans(r(m, 2)));
}

TEST(InsepExt, SumOfRootsGeneratesQuarterRoot) {
  PrimeModulus m(2);
  InsepExt a = InsepExt::generate(m, {r(m, 1) + r(m, 2)});
  InsepExt b = InsepExt::generate(m, {r(m, 2)});
  EXPECT_EQ(a.degree(), 4);
  EXPECT_TRUE(a.equals(b));
}

TEST(InsepExt, Includes) {
  PrimeModulus m(2);
  InsepExt l1 = InsepExt::generate(m, {r(m, 1)});
  InsepExt l2 = InsepExt::generate(m, {r(m, 2)});
  EXPECT_TRUE(l2.includes(l1));
  EXPECT_FALSE(l1.includes(l2));
  EXPECT_TRUE(l1.includes(l1));
}

TEST(InsepExt, CompositumAndIntersection) {
  PrimeModulus m(2);
  PerfElem t1 = PerfElem::t(m) + c(m, 1);
  InsepExt a = InsepExt::generate(m, {r(m, 1)});
  InsepExt b = InsepExt::generate(m, {t1.pth_root()});
  EXPECT_TRUE(compositum(a, b).equals(a));
  InsepExt q = InsepExt::generate(m, {r(m, 2)});
  EXPECT_TRUE(intersection(q, a).equals(a));
  EXPECT_TRUE(intersection(a, InsepExt::base(m)).is_base());
}

TEST(InsepExt, DegreeOfRootTower) {
  for (std::uint32_t p : {2u, 3u}) {
    PrimeModulus m(p);
    for (int n = 0; n <= (p == 2 ? 3 : 2); ++n) EXPECT_EQ(InsepExt::generate(m, {r(m, n)}).degree(), ipow(p, n));
  }
}

TEST(InsepExt, LevelCap) {
  PrimeModulus m(2);
  EXPECT_THROW(InsepExt::generate(m, {r(m, 3)}, 2), LevelCapExceeded);
}

TEST(InsepExt, PrimeFieldBaseCollapses) {
  PrimeModulus m(3);
  InsepExt k = InsepExt::generate(m, {c(m, 2)}, kDefaultLevelCap, BaseField::kPrimeField);
  EXPECT_TRUE(k.is_base());
}

TEST(InsepExt, RandomAgainstLevelOracle) {
  Rng rng(51);
  for (std::uint32_t p : {2u, 3u}) {
    PrimeModulus m(p);
    int max_level = p == 2 ? 3 : 2;
    for (int i = 0; i < 25; ++i) {
      std::vector<PerfElem> gens;
      for (int k = 0; k < 2; ++k) gens.push_back(random_elem(rng, m, 0, max_level, 2, false));
      InsepExt l = InsepExt::generate(m, gens);
      int e = top_level(gens);
      EXPECT_EQ(l.degree(), ipow(p, e));
      for (const PerfElem& g : gens) EXPECT_TRUE(l.member(g));
      for (int k = 0; k < 4; ++k) {
        PerfElem x = random_elem(rng, m, 0, max_level, 2, false);
        bool expect = x.level() <= e;
        EXPECT_EQ(l.member(x), expect) << x.to_string();
        EXPECT_EQ(l.spans(x), expect) << x.to_string();
      }
      EXPECT_TRUE(InsepExt::generate(m, l.basis()).equals(l));
    }
  }
}

TEST(InsepExt, InclusionIsPartialOrder) {
  Rng rng(52);
  PrimeModulus m(2);
  std::vector<InsepExt> fam;
  for (int i = 0; i < 6; ++i) fam.push_back(InsepExt::generate(m, {random_elem(rng, m, 0, 2, 2, false)}));
  for (const auto& a : fam) {
    EXPECT_TRUE(a.includes(a));
    for (const auto& b : fam) {
      if (a.includes(b) && b.includes(a)) {
        EXPECT_TRUE(a.equals(b));
      }
      if (a.includes(b)) {
        EXPECT_EQ(a.degree() % b.degree(), 0);
      }
      for (const auto& c3 : fam)
        if (a.includes(b) && b.includes(c3)) {
          EXPECT_TRUE(a.includes(c3));
        }
    }
  }
}

}  // namespace
}  // namespace perfclose
