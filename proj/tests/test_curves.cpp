#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "geolrc/config.hpp"
#include "geolrc/curves.hpp"
#include "geolrc/error.hpp"

using namespace geolrc;

namespace {

// Brute-force affine count plus the point at infinity.
std::size_t count_points(const Field& f, const std::array<Elem, 5>& a) {
  std::size_t n = 1;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y) {
      Elem lhs = f.add(f.mul(y, y), f.add(f.mul(a[0], f.mul(x, y)), f.mul(a[2], y)));
      Elem x2 = f.mul(x, x);
      Elem rhs = f.add(f.mul(x2, x), f.add(f.mul(a[1], x2), f.add(f.mul(a[3], x), a[4])));
      if (lhs == rhs) ++n;
    }
  return n;
}

}  // namespace

TEST_CASE("point counts and the Hasse interval for every curve over small fields") {
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    auto F = make_field(p, m);
    const Elem q = F->order();
    std::size_t curves = 0;
    for (Elem a1 = 0; a1 < q; ++a1)
      for (Elem a2 = 0; a2 < q; ++a2)
        for (Elem a3 = 0; a3 < q; ++a3)
          for (Elem a4 = 0; a4 < q; ++a4)
            for (Elem a6 = 0; a6 < q; ++a6) {
              if (weierstrass_discriminant(*F, a1, a2, a3, a4, a6) == 0) {
                CHECK_THROWS_AS(WeierstrassCurve::make(F, a1, a2, a3, a4, a6), ConstructionError);
                continue;
              }
              auto E = WeierstrassCurve::make(F, a1, a2, a3, a4, a6);
              const auto pts = ec_points(E);
              CHECK(pts.size() == count_points(*F, {a1, a2, a3, a4, a6}));
              CHECK(in_hasse_interval(q, pts.size()));
              ++curves;
            }
    CHECK(curves > 0);
  }
}

TEST_CASE("Hasse interval for the example curves") {
  for (const auto& id : builtin_config_ids()) {
    Config cfg = builtin_config(id);
    for (const char* key : {"curve", "target", "curve1", "curve2"}) {
      if (!cfg.has(key)) continue;
      std::istringstream in(cfg.get(key).text);
      std::array<Elem, 5> a{};
      for (auto& c : a) {
        std::string tok;
        in >> tok;
        c = cfg.field->parse_literal(tok);
      }
      auto E = WeierstrassCurve::make(cfg.field, a[0], a[1], a[2], a[3], a[4]);
      CAPTURE(id);
      CHECK(in_hasse_interval(cfg.field->order(), ec_points(E).size()));
    }
  }
}

TEST_CASE("example curve orders") {
  auto F64 = make_field(2, 6);
  CHECK(ec_points(WeierstrassCurve::make(F64, 0, 0, 1, 0, 0)).size() == 81);
  auto F32 = make_field(2, 5);
  CHECK(ec_points(WeierstrassCurve::make(F32, 1, 0, 0, 1, 0)).size() == 44);
}

TEST_CASE("group law: identity, inverses, commutativity, associativity") {
  auto F = make_field(2, 5);
  auto E = WeierstrassCurve::make(F, 1, 0, 0, 1, 0);
  const auto pts = ec_points(E);
  const EcPoint O = EcPoint::infinity();
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (const auto& P : pts) {
    CHECK(ec_add(E, P, O) == P);
    CHECK(ec_add(E, P, ec_neg(E, P)) == O);
    CHECK(ec_mul(E, P, static_cast<std::int64_t>(pts.size())) == O);
  }
  for (int i = 0; i < 2000; ++i) {
    const auto &P = pts[pick(rng)], &Q = pts[pick(rng)], &R = pts[pick(rng)];
    CHECK(ec_add(E, P, Q) == ec_add(E, Q, P));
    CHECK(ec_add(E, ec_add(E, P, Q), R) == ec_add(E, P, ec_add(E, Q, R)));
  }
  CHECK_THROWS_AS(ec_add(E, EcPoint::affine(0, 1), O), ConstructionError);
}

TEST_CASE("subgroups and cosets partition the group") {
  auto F = make_field(2, 6);
  auto E = WeierstrassCurve::make(F, 0, 0, 1, 0, 0);
  const auto pts = ec_points(E);
  auto G = select_subgroup(E, pts, 3, PointSelector::parse(*F, "x=0"));
  CHECK(G.order() == 3);
  auto cs = cosets(E, pts, G);
  CHECK(cs.size() == 27);
  std::size_t total = 0, trivial = 0;
  for (const auto& c : cs) {
    total += c.members.size();
    trivial += c.trivial;
  }
  CHECK(total == 81);
  CHECK(trivial == 1);
  CHECK_THROWS_AS(select_subgroup(E, pts, 3, std::nullopt), ConstructionError);
}

TEST_CASE("isogeny verification for the order-3 quotient") {
  auto F = make_field(2, 6);
  auto E = WeierstrassCurve::make(F, 0, 0, 1, 0, 0);
  auto Et = WeierstrassCurve::make(F, 0, 0, 1, 0, 1);
  const auto pts = ec_points(E);
  auto G = select_subgroup(E, pts, 3, PointSelector::parse(*F, "x=0"));
  auto v = verify_isogeny(E, Et, RatExpr::parse("x + 1/x^2", F), RatExpr::parse("y + 1/x^3", F), G);
  CHECK(v.ok);
  auto bad = verify_isogeny(E, Et, RatExpr::parse("x", F), RatExpr::parse("y", F), G);
  CHECK_FALSE(bad.ok);
}

TEST_CASE("plane curves and surfaces") {
  auto F4 = make_field(2, 2);
  CHECK(projective_space(*F4, 2).size() == 21);
  CHECK(projective_space(*F4, 3).size() == 85);
  auto conic = RatExpr::parse("x y + z^2", F4);
  CHECK(enumerate_plane_curve(conic).size() == 5);
  CHECK_THROWS_AS(enumerate_plane_curve(RatExpr::parse("x y + z", F4)), ConstructionError);
}
