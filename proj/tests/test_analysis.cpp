#include <random>

#include "doctest.h"
#include "geolrc/analysis.hpp"
#include "geolrc/error.hpp"
#include "helpers.hpp"

using namespace geolrc;
using testing::build_builtin;

namespace {

double log2_binomial_sum(std::size_t n, long w) {
  double total = 0, term = 1;
  for (long i = 0; i <= w; ++i) {
    total += term;
    term = term * static_cast<double>(n - static_cast<std::size_t>(i)) / static_cast<double>(i + 1);
  }
  return std::log2(total);
}

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, std::mt19937& rng) {
  std::uniform_int_distribution<Elem> d(0, f.order() - 1);
  Matrix m(r, c);
  for (auto& x : m.a) x = d(rng);
  return m;
}

}  // namespace

TEST_CASE("rank basics") {
  auto F = make_field(3, 1);
  Matrix I(3, 3);
  for (std::size_t i = 0; i < 3; ++i) I.at(i, i) = 1;
  CHECK(rank(*F, I) == 3);
  CHECK(rank(*F, Matrix(4, 5)) == 0);
  CHECK_THROWS_AS(Matrix::from_rows({{1, 2}, {1}}), Error);
}

TEST_CASE("rank plus nullity and inverse on random matrices") {
  std::mt19937 rng(3);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {5, 1}, {2, 4}, {3, 2}}) {
    auto F = make_field(p, m);
    for (int trial = 0; trial < 30; ++trial) {
      Matrix A = random_matrix(*F, 1 + trial % 6, 1 + (trial * 7) % 8, rng);
      const Matrix N = nullspace(*F, A);
      CHECK(rank(*F, A) + N.rows == A.cols);
      if (N.rows) {
        Matrix prod = multiply(*F, A, N.transpose());
        CHECK(std::all_of(prod.a.begin(), prod.a.end(), [](Elem x) { return x == 0; }));
      }
      if (A.rows == A.cols) {
        auto inv = inverse(*F, A);
        CHECK(inv.has_value() == (determinant(*F, A) != 0));
      }
    }
  }
}

TEST_CASE("parity checks: G H^T = 0 and rank G + rank H = n") {
  for (const auto& [name, code] : testing::small_codes()) {
    const Field& f = *code.field;
    const Matrix H = parity_check(code);
    CAPTURE(name);
    CHECK(rank(f, code.generator) + rank(f, H) == code.n);
    const Matrix prod = multiply(f, code.generator, H.transpose());
    CHECK(std::all_of(prod.a.begin(), prod.a.end(), [](Elem x) { return x == 0; }));
  }
  LinearCode c71 = build_builtin("ex7.1");
  CHECK(parity_check(c71).rows == 3);
  CHECK(parity_check(c71).cols == 9);
  CHECK(c71.raw_rows() == 9);
}

TEST_CASE("parity check of a repetition code and of the full space") {
  auto F = make_field(3, 1);
  Matrix rep = Matrix::from_rows({{1, 1, 1}});
  Matrix H = parity_check(*F, rep);
  CHECK(H.rows == 2);
  CHECK(multiply(*F, rep, H.transpose()) == Matrix(1, 2));
  Matrix I(2, 2);
  I.at(0, 0) = I.at(1, 1) = 1;
  CHECK(parity_check(*F, I).rows == 0);
}

TEST_CASE("oracle equivalence of the two distance algorithms for q^k <= 2^20") {
  std::size_t compared = 0;
  for (const auto& [name, code] : testing::small_codes()) {
    const Field& f = *code.field;
    const long d = min_distance_exhaustive(f, code.basis).distance;
    CAPTURE(name);
    CHECK(d >= 1);
    // The support search grows like C(n, d); keep it affordable.
    if (log2_binomial_sum(code.n, d) > 22) continue;
    const Matrix H = parity_check(code);
    auto exact = min_distance_low_weight(f, H, static_cast<int>(d));
    CHECK(exact.exact);
    CHECK(exact.value == d);
    if (d > 1) {
      auto below = min_distance_low_weight(f, H, static_cast<int>(d - 1));
      CHECK_FALSE(below.exact);
      CHECK(below.value == d);
    }
    ++compared;
  }
  CHECK(compared >= 5);
}

TEST_CASE("oracle equivalence on random codes") {
  std::mt19937 rng(17);
  for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {7, 1}, {2, 3}, {3, 2}}) {
    auto F = make_field(p, m);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 6 + static_cast<std::size_t>(trial % 7), k = 1 + static_cast<std::size_t>(trial % 4);
      RrefResult R = rref(*F, random_matrix(*F, k, n, rng));
      if (R.m.rows == 0) continue;
      const long d = min_distance_exhaustive(*F, R.m).distance;
      auto lw = min_distance_low_weight(*F, parity_check(*F, R.m), static_cast<int>(d));
      CHECK(lw.exact);
      CHECK(lw.value == d);
    }
  }
}

TEST_CASE("designed distance is sound on every small code") {
  for (const auto& [name, code] : testing::small_codes()) {
    const long d = min_distance_exhaustive(*code.field, code.basis).distance;
    CAPTURE(name);
    CHECK(d >= code.designed_distance());
    const long r = static_cast<long>(code.locality());
    CHECK(singleton_gap(static_cast<long>(code.n), static_cast<long>(code.k), d, r) >= 0);
  }
}

TEST_CASE("exhaustive search: examples and errors") {
  LinearCode c71 = build_builtin("ex7.1");
  CHECK(min_distance_exhaustive(*c71.field, c71.basis).distance == 2);
  CHECK_THROWS_AS(min_distance_exhaustive(*c71.field, c71.basis, 100), Error);
  CHECK_THROWS_AS(min_distance_exhaustive(*c71.field, Matrix(0, 9)), Error);
}

TEST_CASE("Singleton bound") {
  CHECK(singleton_bound(18, 11, 2) == 3);
  CHECK(singleton_gap(18, 11, 3, 2) == 0);
  CHECK(singleton_gap(42, 20, 10, 2) == 4);
  for (long n = 5; n < 30; ++n)
    for (long k = 1; k < n; ++k) CHECK(singleton_bound(n, k, k) == n - k + 1);
}

TEST_CASE("report: designed-only policy and locality") {
  LinearCode c = build_builtin("ex3.2");
  DistancePolicy designed_only{1, 0};
  auto rep = make_report(c, designed_only);
  CHECK(rep.method == "designed");
  CHECK(rep.n == 40);
  CHECK(rep.k == 21);
  CHECK(rep.d_designed == 9);
  CHECK(rep.singleton_gap == 5);
  CHECK(rep.locality_pass);
  CHECK(rep.to_text().find("locality_verdict: pass") != std::string::npos);
  auto v = verify_locality(build_builtin("ex3.1"));
  CHECK(v.pass);
  CHECK(v.sets_checked == 26);
}
