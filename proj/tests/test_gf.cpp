#include "doctest.h"
#include "geolrc/error.hpp"
#include "geolrc/gf.hpp"

using namespace geolrc;

namespace {

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}};

}  // namespace

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (auto [p, m] : kSmallFields) {
    auto F = make_field(p, m);
    const Field& f = *F;
    const Elem q = f.order();
    CAPTURE(f.name());
    for (Elem a = 0; a < q; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      CHECK(f.add(a, f.neg(a)) == 0);
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        CHECK(f.mul(a, b) == f.mul_poly(a, b));
        for (Elem c = 0; c < q; ++c) {
          CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
          CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
    // Frobenius is additive and x^q = x.
    for (Elem a = 0; a < q; ++a) {
      CHECK(f.pow(a, q) == a);
      for (Elem b = 0; b < q; ++b) CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
    }
  }
}

TEST_CASE("primitive element has order q-1 and log inverts exp") {
  for (auto [p, m] : kSmallFields) {
    auto F = make_field(p, m);
    const Elem g = F->primitive();
    Elem x = 1;
    for (std::uint32_t e = 1; e < F->order() - 1; ++e) {
      x = F->mul(x, g);
      CHECK(x != 1);
    }
    for (Elem a = 1; a < F->order(); ++a) CHECK(F->exp(F->log(a)) == a);
  }
}

TEST_CASE("default moduli") {
  CHECK(default_modulus(2, 4) == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  CHECK(default_modulus(2, 5) == std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1});
  CHECK(default_modulus(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
  for (std::uint32_t m = 2; m <= 8; ++m) CHECK(is_irreducible(2, default_modulus(2, m)));
  CHECK(is_irreducible(3, default_modulus(3, 2)));
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));
  CHECK(parse_modulus(2, "x^4+x+1") == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  CHECK_THROWS_AS(make_field(2, 2, {1, 0, 1}), FieldError);
  CHECK_THROWS_AS(make_field(4, 1), FieldError);
}

TEST_CASE("literals round-trip and match powers of a") {
  auto F = make_field(2, 6);
  for (Elem x = 0; x < F->order(); ++x) CHECK(F->parse_literal(F->format(x)) == x);
  const Elem a = F->generator_literal();
  CHECK(F->parse_literal("a^26") == F->pow(a, 26));
  CHECK(F->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 1});
  CHECK(F->parse_literal("a^6") == F->parse_literal("a+1"));
  auto F7 = make_field(7, 1);
  CHECK(F7->parse_literal("-1") == 6);
  CHECK(F7->parse_literal("10") == 3);
  auto F9 = make_field(3, 2);
  CHECK(F9->parse_literal(F9->format(F9->parse_literal("2a+1"))) == F9->parse_literal("2a+1"));
}

TEST_CASE("literal parse errors carry a position") {
  auto F = make_field(2, 4);
  try {
    F->parse_literal("a^2+$");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(F->parse_literal(""), ParseError);
}

TEST_CASE("division by zero and field mismatch") {
  auto F = make_field(2, 4);
  CHECK_THROWS_AS(F->inv(0), DivisionByZero);
  CHECK_THROWS_AS(F->pow(0, -1), DivisionByZero);
  CHECK(F->pow(0, 0) == 1);
  FieldElement x(F, 3), y(make_field(2, 3), 3);
  CHECK_THROWS_AS(x + y, FieldMismatch);
  CHECK((x * x.inv()).value() == 1);
  CHECK_THROWS_AS(FieldElement(F, 0).inv(), DivisionByZero);
}

TEST_CASE("roots of unity and n-th roots") {
  auto F4 = make_field(2, 2);
  const Elem a = F4->generator_literal();
  CHECK(F4->roots_of_unity(3) == std::vector<Elem>{1, a, F4->mul(a, a)});
  auto F16 = make_field(2, 4);
  for (Elem x = 1; x < 16; ++x) {
    auto r = F16->nth_roots(x, 3);
    CHECK((r.size() == 0 || r.size() == 3));
    CHECK(F16->is_nth_power(x, 3) == !r.empty());
    for (Elem z : r) CHECK(F16->pow(z, 3) == x);
  }
  CHECK(F16->nth_roots(0, 3) == std::vector<Elem>{0});
  CHECK_THROWS_AS(F16->roots_of_unity(4), FieldError);
}
