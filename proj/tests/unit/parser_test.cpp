#include <gtest/gtest.h>

#include "perfclose/errors.hpp"
#include "perfclose/parser.hpp"
#include "perfclose/random_corpus.hpp"

namespace perfclose {
namespace {

ParseContext ctx(std::uint32_t p, int cap = kDefaultLevelCap) { return ParseContext{PrimeModulus(p), cap, {}}; }

TEST(Parser, RootPlusT) {
  PerfElem x = parse_element("rt(t,1)+t", ctx(2));
  PrimeModulus m(2);
  EXPECT_EQ(x.level(), 1);
  EXPECT_EQ(x.value(), RatFunc(Poly::from_terms(m, {{1, 1}, {2, 1}})));
}

TEST(Parser, RootSquaredNormalizes) {
  PerfElem x = parse_element("rt(t,1)*rt(t,1)", ctx(2));
  EXPECT_EQ(x, PerfElem::t(PrimeModulus(2)));
  EXPECT_EQ(x.to_string(), "t");
}

TEST(Parser, IntegersReduceModP) {
  EXPECT_EQ(parse_element("7", ctx(5)), PerfElem::constant(PrimeModulus(5), 2));
  EXPECT_EQ(parse_element("0-1", ctx(3)), PerfElem::constant(PrimeModulus(3), 2));
  EXPECT_THROW(parse_element("-1", ctx(3)), ParseError);
}

TEST(Parser, NegativeExponent) {
  PrimeModulus m(3);
  EXPECT_EQ(parse_element("t^-2 * t^2", ctx(3)), PerfElem::constant(m, 1));
}

TEST(Parser, NestedRoots) {
  EXPECT_EQ(parse_element("rt(rt(t,1),1)", ctx(2)), PerfElem::root_of_t(PrimeModulus(2), 2));
}

TEST(Parser, Errors) {
  try {
    parse_element("1 +* t", ctx(2));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 4);
  }
  try {
    parse_matrix("[[1, 0],\n [t, )]]", ctx(2));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 6);
  }
  EXPECT_THROW(parse_element("t/0", ctx(2)), DivisionByZero);
  EXPECT_THROW(parse_element("rt(t,3)", ctx(2, 2)), LevelCapExceeded);
  EXPECT_THROW(parse_element("x", ctx(2)), ParseError);
  EXPECT_THROW(parse_element("t t", ctx(2)), ParseError);
  EXPECT_THROW(parse_matrix("[[1, 0],[1]]", ctx(2)), ParseError);
}

TEST(Parser, Names) {
  PrimeModulus m(2);
  ParseContext c = ctx(2);
  c.names = [m](std::string_view n) -> std::optional<PerfElem> {
    if (n == "u") return PerfElem::root_of_t(m, 1);
    return std::nullopt;
  };
  EXPECT_EQ(parse_element("u*u", c), PerfElem::t(m));
  EXPECT_TRUE(is_valid_name("L_2"));
  EXPECT_FALSE(is_valid_name("t"));
  EXPECT_FALSE(is_valid_name("rt"));
  EXPECT_FALSE(is_valid_name("2x"));
}

TEST(Parser, Matrix) {
  PerfMatrix a = parse_matrix("[[rt(t,1), 0],[1, t]]", ctx(2));
  ASSERT_EQ(a.rows(), 2u);
  ASSERT_EQ(a.cols(), 2u);
  EXPECT_EQ(a(0, 0), PerfElem::root_of_t(PrimeModulus(2), 1));
  EXPECT_EQ(matrix_string(a), "[[rt(t,1), 0],[1, t]]");
}

TEST(Parser, PrintingIsAFixedPoint) {
  Rng rng(81);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PrimeModulus m(p);
    for (int i = 0; i < 200; ++i) {
      PerfElem x = random_elem(rng, m, 0, 3, 4, false);
      std::string s = x.to_string();
      PerfElem y = parse_element(s, ctx(p));
      EXPECT_EQ(y, x) << s;
      EXPECT_EQ(y.to_string(), s);
    }
  }
}

}  // namespace
}  // namespace perfclose
