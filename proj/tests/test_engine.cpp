#include <algorithm>
#include <map>
#include <random>

#include "doctest.h"
#include "geolrc/analysis.hpp"
#include "geolrc/covers.hpp"
#include "geolrc/error.hpp"
#include "helpers.hpp"

using namespace geolrc;
using testing::build_builtin;

namespace {

// Pole-order basis of L(t O): 1, u, v, u^2, u v, u^3, u^2 v, ...
std::string pole_monomial(std::size_t j, char u, char v) {
  if (j == 0) return "1";
  const std::size_t k = j + 1;
  if (k % 2 == 0) return std::string(1, u) + "^" + std::to_string(k / 2);
  return std::string(1, u) + "^" + std::to_string((k - 3) / 2) + " " + v;
}

std::map<std::string, EcPoint> label_points(const Field& f, const std::array<Elem, 5>& a) {
  std::map<std::string, EcPoint> out;
  for (Elem x = 0; x < f.order(); ++x)
    for (Elem y = 0; y < f.order(); ++y) {
      Elem lhs = f.add(f.mul(y, y), f.add(f.mul(a[0], f.mul(x, y)), f.mul(a[2], y)));
      Elem x2 = f.mul(x, x);
      Elem rhs = f.add(f.mul(x2, x), f.add(f.mul(a[1], x2), f.add(f.mul(a[3], x), a[4])));
      if (lhs == rhs) out[format_point(f, EcPoint::affine(x, y))] = EcPoint::affine(x, y);
    }
  return out;
}

// Entry (i t + j, P) = e_i(P) f_j(phi(P)) by plain evaluation of the
// composed expressions.
void check_quotient_generator(const std::string& id, int t, const std::array<Elem, 5>& curve,
                              const std::vector<std::string>& e, const std::string& mu, const std::string& mv) {
  LinearCode code = build_builtin(id, t);
  const Field& f = *code.field;
  auto F = code.field;
  auto pts = label_points(f, curve);
  std::array<std::optional<RatExpr>, kNumVars> subs{};
  subs[4] = RatExpr::parse(mu, F);
  subs[5] = RatExpr::parse(mv, F);
  REQUIRE(code.generator.rows == e.size() * static_cast<std::size_t>(t));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int j = 0; j < t; ++j) {
      auto fj = substitute(RatExpr::parse(pole_monomial(static_cast<std::size_t>(j), 'u', 'v'), F), subs);
      auto g = RatExpr::parse(e[i], F) * fj;
      for (std::size_t c = 0; c < code.n; ++c) {
        const EcPoint P = pts.at(code.column_labels[c]);
        ElemBindings b{};
        b[0] = P.x;
        b[1] = P.y;
        auto want = eval(g, b);
        REQUIRE(want.has_value());
        CHECK(code.generator.at(i * static_cast<std::size_t>(t) + static_cast<std::size_t>(j), c) == *want);
      }
    }
}

}  // namespace

TEST_CASE("generator entries match direct evaluation (order-3 quotient)") {
  check_quotient_generator("ex3.1", 21, {0, 0, 1, 0, 0}, {"1", "x"}, "x + 1/x^2", "y + 1/x^3");
  check_quotient_generator("ex3.1", 1, {0, 0, 1, 0, 0}, {"1", "x"}, "x + 1/x^2", "y + 1/x^3");
}

TEST_CASE("generator entries match direct evaluation (order-4 quotient)") {
  check_quotient_generator("ex3.2", 7, {1, 0, 0, 1, 0}, {"1", "x", "y"}, "(x^2 + x + 1)^2 / (x (x + 1)^2)",
                           "(x^2 + x + 1)^2 / (x^2 (x + 1)^2) y + (x^2 + x + 1) / (x (x + 1)^3)");
}

TEST_CASE("check_recovery_matrix") {
  auto F7 = make_field(7, 1);
  const Elem a = 2, b = 3, na = F7->neg(a), nb = F7->neg(b);
  auto M = Matrix::from_rows({{1, a, b}, {1, a, nb}, {1, na, b}, {1, na, nb}});
  CHECK(check_recovery_matrix(*F7, M).pass);
  auto V = Matrix::from_rows({{1, 1, 1}, {1, 2, 4}, {1, 3, 2}, {1, 4, 2}});
  CHECK(check_recovery_matrix(*F7, V).pass);
  auto S = Matrix::from_rows({{1, 1}, {1, 1}, {1, 2}});
  auto bad = check_recovery_matrix(*F7, S);
  CHECK_FALSE(bad.pass);
  CHECK(bad.singular == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(check_recovery_matrix(*F7, Matrix(3, 3)), Error);
}

TEST_CASE("naive e-basis fails on exactly two cosets") {
  LinearCode code = build_builtin("ex3.3-naive");
  std::size_t failing = 0, trivial_failing = 0;
  for (const auto& d : code.diagnostics)
    if (d.verdict != "pass") {
      ++failing;
      trivial_failing += d.trivial;
    }
  CHECK(failing == 2);
  CHECK(trivial_failing == 1);
  CHECK_FALSE(verify_locality(code).pass);
}

TEST_CASE("local recovery is exact on every codeword of the F4 surface code") {
  LinearCode code = build_builtin("ex7.1");
  REQUIRE(code.k == 6);
  std::size_t words = 0;
  testing::for_each_codeword(code, [&](const std::vector<Elem>& c) {
    ++words;
    for (std::size_t i = 0; i < code.n; ++i) {
      Word w(c.begin(), c.end());
      w[i] = std::nullopt;
      REQUIRE(local_recover(code, w) == c[i]);
    }
  });
  CHECK(words == 4096);
}

TEST_CASE("erasure edge cases") {
  LinearCode code = build_builtin("ex7.1");
  const auto& set = code.partitions[0].sets[0].columns;
  for (std::size_t i = 0; i < code.n; ++i) {
    Word w(code.n, Elem{0});
    w[i] = std::nullopt;
    CHECK(local_recover(code, w) == 0);
  }
  Word two(code.n, Elem{0});
  two[set[0]] = std::nullopt;
  two[set[1]] = std::nullopt;
  CHECK_THROWS_AS(local_recover(code, two), ConstructionError);
  CHECK_THROWS_AS(recover_erasures(code, two), ConstructionError);
  // One erasure per helper set is repaired set by set.
  std::vector<Elem> c = encode(code, {1, 2, 3, 0, 1, 2});
  Word spread(c.begin(), c.end());
  for (const auto& hs : code.partitions[0].sets) spread[hs.columns[1]] = std::nullopt;
  CHECK(recover_erasures(code, spread) == c);
  // A non-codeword is rejected after filling.
  Word broken(c.begin(), c.end());
  broken[set[0]] = std::nullopt;
  broken[code.partitions[0].sets[1].columns[0]] = c[code.partitions[0].sets[1].columns[0]] ^ 1;
  CHECK_THROWS_AS(recover_erasures(code, broken), ConstructionError);
}

TEST_CASE("rank equals r t for the curve examples") {
  for (const char* id : {"ex3.1", "ex3.2", "ex3.4", "ex4.1", "ex4.2", "ex4.3", "ex4.4", "ex4.5-alt", "ex4.6",
                         "ex4.7", "ex5.1", "ex5.2", "ex5.3", "ex5.4"}) {
    Config cfg = builtin_config(id);
    LinearCode code = build_from_config(cfg);
    CAPTURE(id);
    CHECK(code.k == code.locality() * static_cast<std::size_t>(cfg.get_int("t")));
    CHECK(code.kernel_dim() == 0);
  }
}

TEST_CASE("every column lies in exactly one helper set per partition") {
  for (const char* id : {"ex3.1", "ex4.1", "ex5.3", "ex6.1", "ex7.2"}) {
    LinearCode code = build_builtin(id);
    CAPTURE(id);
    for (const auto& p : code.partitions) {
      std::vector<int> seen(code.n, 0);
      for (const auto& hs : p.sets) {
        CHECK(hs.columns.size() == p.r + 1);
        for (auto c : hs.columns) ++seen[c];
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    }
  }
}

TEST_CASE("permuting fiber members leaves the parameters unchanged") {
  for (const char* id : {"ex7.1", "ex4.1"}) {
    LinearCode code = build_builtin(id, std::string(id) == "ex4.1" ? std::optional<int>(1) : std::nullopt);
    std::vector<std::size_t> perm(code.n);
    for (std::size_t i = 0; i < code.n; ++i) perm[i] = i;
    std::mt19937 rng(11);
    LinearCode moved = code;
    for (auto& hs : moved.partitions[0].sets) {
      std::vector<std::size_t> cols = hs.columns, shuffled = hs.columns;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      for (std::size_t i = 0; i < cols.size(); ++i) perm[cols[i]] = shuffled[i];
      std::vector<std::size_t> order(cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i)
        order[i] = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), perm[cols[i]]) - cols.begin());
      if (hs.e.rows) hs.e = hs.e.select_rows(order);
    }
    moved.generator = code.generator.select_columns(perm);
    for (std::size_t i = 0; i < code.n; ++i) moved.column_labels[i] = code.column_labels[perm[i]];
    finalize_code(moved);
    const auto a = make_report(code), b = make_report(moved);
    CAPTURE(id);
    CHECK(a.n == b.n);
    CHECK(a.k == b.k);
    CHECK(a.distance_used() == b.distance_used());
    CHECK(a.locality_pass == b.locality_pass);
  }
}

TEST_CASE("availability code: two partitions agree") {
  LinearCode code = build_builtin("ex6.1");
  REQUIRE(code.partitions.size() == 2);
  CHECK(code.n == 81);
  CHECK(code.k == 28);
  CHECK(code.designed_distance() == 6);
  std::mt19937 rng(5);
  std::uniform_int_distribution<Elem> sym(0, code.field->order() - 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Elem> msg(code.k);
    for (auto& m : msg) m = sym(rng);
    const auto c = encode(code, msg);
    for (std::size_t i = 0; i < code.n; ++i) {
      Word w(c.begin(), c.end());
      w[i] = std::nullopt;
      const Elem via1 = recover_with_choice(code, w, i, 0), via2 = recover_with_choice(code, w, i, 1);
      CHECK(via1 == c[i]);
      CHECK(via2 == c[i]);
    }
  }
}

TEST_CASE("availability code: second partition repairs a doubly erased coset") {
  LinearCode code = build_builtin("ex6.1");
  const auto c = encode(code, std::vector<Elem>(code.k, 1));
  const auto& g1 = code.partitions[0].sets[1].columns;
  Word w(c.begin(), c.end());
  w[g1[0]] = std::nullopt;
  w[g1[1]] = std::nullopt;
  CHECK_THROWS_AS(local_recover(code, w, 0), ConstructionError);
  CHECK(recover_erasures(code, w, 1) == c);
  CHECK(recover_erasures(code, w, 0) == c);

  // Erase a whole G1 coset together with the G2 cosets of its members.
  Word dead(c.begin(), c.end());
  std::vector<std::size_t> set_of(code.n);
  for (std::size_t s = 0; s < code.partitions[1].sets.size(); ++s)
    for (auto col : code.partitions[1].sets[s].columns) set_of[col] = s;
  for (auto col : g1)
    for (auto other : code.partitions[1].sets[set_of[col]].columns) dead[other] = std::nullopt;
  CHECK_THROWS_AS(recover_erasures(code, dead, 1), ConstructionError);
}

TEST_CASE("availability code: equal subgroups are rejected") {
  Config cfg = builtin_config("ex6.1");
  cfg.set("kernel2", "x=1");
  CHECK_THROWS_AS(build_from_config(cfg), ConstructionError);
}

TEST_CASE("nonpositive designed distance needs force") {
  Config cfg = builtin_config("ex3.1");
  cfg.set("t", "26");
  CHECK_THROWS_AS(build_from_config(cfg), ConstructionError);
  CHECK(build_from_config(cfg, true).designed_distance() < 1);
}
