#include "doctest.h"
#include "geolrc/error.hpp"
#include "geolrc/exprs.hpp"

using namespace geolrc;

TEST_CASE("parse and evaluate rational expressions") {
  auto F = make_field(2, 6);
  auto e = RatExpr::parse("x + 1/x^2", F);
  for (Elem x = 1; x < F->order(); ++x) {
    ElemBindings b{};
    b[0] = x;
    CHECK(eval(e, b) == F->add(x, F->inv(F->mul(x, x))));
  }
  ElemBindings zero{};
  zero[0] = 0;
  CHECK_FALSE(eval(e, zero).has_value());
  CHECK_THROWS_AS(eval(e, ElemBindings{}), EvalError);
}

TEST_CASE("juxtaposition and literals") {
  auto F = make_field(2, 4);
  auto e = RatExpr::parse("a^3 x y + a z^2", F);
  ElemBindings b{};
  b[0] = 2;
  b[1] = 5;
  b[2] = 7;
  const Elem a = F->generator_literal();
  const Elem want = F->add(F->mul(F->pow(a, 3), F->mul(2, 5)), F->mul(a, F->mul(7, 7)));
  CHECK(eval(e, b) == want);
}

TEST_CASE("expression parse errors carry a position") {
  auto F = make_field(3, 1);
  try {
    RatExpr::parse("x + (y", F);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(RatExpr::parse("x + q", F), ParseError);
}

TEST_CASE("polynomial expansion agrees with evaluation") {
  auto F = make_field(5, 1);
  auto e = RatExpr::parse("(x + 2 y)^3 - (x - z)^2 (y + 1) / 2", F);
  Poly P = to_polynomial(e);
  CHECK(P.degree() == 3);
  CHECK_FALSE(P.is_homogeneous());
  for (Elem x = 0; x < 5; ++x)
    for (Elem y = 0; y < 5; ++y)
      for (Elem z = 0; z < 5; ++z) {
        ElemBindings b{};
        b[0] = x;
        b[1] = y;
        b[2] = z;
        CHECK(P.eval({x, y, z, 0, 0, 0}) == *eval(e, b));
      }
  CHECK_THROWS_AS(to_polynomial(RatExpr::parse("1/x", F)), EvalError);
  CHECK(to_polynomial(RatExpr::parse("x^2 y + y^3 + z^3", F)).is_homogeneous());
}

TEST_CASE("substitution composes maps") {
  auto F = make_field(2, 3);
  auto f = RatExpr::parse("u^2 + v", F);
  std::array<std::optional<RatExpr>, kNumVars> subs{};
  subs[4] = RatExpr::parse("x + 1", F);
  subs[5] = RatExpr::parse("x y", F);
  auto g = substitute(f, subs);
  for (Elem x = 0; x < 8; ++x)
    for (Elem y = 0; y < 8; ++y) {
      ElemBindings b{};
      b[0] = x;
      b[1] = y;
      CHECK(eval(g, b) == F->add(F->mul(F->add(x, 1), F->add(x, 1)), F->mul(x, y)));
    }
}
