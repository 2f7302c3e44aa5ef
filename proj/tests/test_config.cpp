#include "doctest.h"
#include "geolrc/codeio.hpp"
#include "geolrc/error.hpp"
#include "geolrc/reproduce.hpp"
#include "helpers.hpp"

using namespace geolrc;

namespace {

int error_line(const std::string& text) {
  try {
    Config cfg = parse_config(text);
    build_from_config(cfg);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

const char* kSurface = R"([field]
p = 2
m = 2

[surface]
f = x^3 + y^3 + z^3
m = 2
)";

}  // namespace

TEST_CASE("config errors report line numbers") {
  CHECK(error_line(std::string(kSurface) + "colour = red\n") == 8);
  CHECK(error_line("[field]\np = 4\n[surface]\nf = x^3\nm = 2\n") == 2);
  CHECK(error_line("[field]\np = 2\nm = 2\n[surface]\nf = x^3 + (y\nm = 2\n") == 5);
  CHECK(error_line("[field]\np = 2\nm = 2\n[nonsense]\n") == 4);
  CHECK(error_line("[field]\np = 2\nm = 2\nno equals sign\n") == 4);
  CHECK(error_line("[field]\np = 2\nm = 2\n[surface]\nf = x^3 + y^3 + z^3\n") > 0);
  CHECK(error_line("[field]\np = 2\nm = 2\n[surface]\nf = x^3\nm = 2\n[kummer]\n") == 7);
}

TEST_CASE("t = 0 is a validation error") {
  Config cfg = builtin_config("ex3.2");
  cfg.set("t", "0");
  CHECK_THROWS_AS(build_from_config(cfg), ConfigError);
}

TEST_CASE("every family is documented and every built-in parses") {
  CHECK(families().size() == 10);
  for (const auto& id : builtin_config_ids()) {
    Config cfg = builtin_config(id);
    CAPTURE(id);
    bool known = false;
    for (const auto& fam : families()) known = known || fam.tag == cfg.family;
    CHECK(known);
  }
  CHECK_FALSE(builtin_config_text("ex9.9").has_value());
}

TEST_CASE("code files round-trip exactly") {
  for (const char* id : {"ex7.1", "ex3.1", "ex6.1", "ex4.1", "ex5.3", "ex3.3-naive"}) {
    LinearCode code = testing::build_builtin(id);
    const std::string text = code_to_string(code);
    LinearCode back = code_from_string(text);
    CAPTURE(id);
    CHECK(code_to_string(back) == text);
    CHECK(back.generator == code.generator);
    CHECK(back.basis == code.basis);
    CHECK(back.k == code.k);
    CHECK(back.delta == code.delta);
    CHECK(back.partitions.size() == code.partitions.size());
    const DistancePolicy policy{1 << 16, 3};
    const auto a = make_report(code, policy), b = make_report(back, policy);
    CHECK(a.n == b.n);
    CHECK(a.k == b.k);
    CHECK(a.r == b.r);
    CHECK(a.d_designed == b.d_designed);
    CHECK(a.d_exact == b.d_exact);
    CHECK(a.d_lower == b.d_lower);
    CHECK(a.method == b.method);
    CHECK(a.singleton_gap == b.singleton_gap);
    CHECK(a.locality_pass == b.locality_pass);
  }
}

TEST_CASE("malformed code files are rejected with a line number") {
  const std::string good = code_to_string(testing::build_builtin("ex7.1"));
  auto line_of = [](const std::string& text) {
    try {
      code_from_string(text);
    } catch (const ConfigError& e) {
      return e.line();
    }
    return -1;
  };
  std::string bad_header = good;
  bad_header[0] = 'x';
  CHECK(line_of(bad_header) == 1);
  std::string bad_k = "4 2 2 9 5" + good.substr(good.find(" 2 29"));
  CHECK(line_of(bad_k) > 0);
  std::string bad_symbol = good;
  bad_symbol.replace(bad_symbol.find("family surface\n") + 15, 1, "zz");
  CHECK(line_of(bad_symbol) == 4);
}

TEST_CASE("reproduce: statuses and determinism") {
  const auto a = reproduce("ex7.1");
  REQUIRE(a.size() == 1);
  CHECK(a[0].status == std::string(kPass));
  const auto doc = reproduce("ex5.1-table2");
  REQUIRE(doc.size() == 1);
  CHECK(doc[0].status == std::string(kDocumented));
  CHECK(doc[0].computed.find("text") != std::string::npos);
  CHECK(format_rows(reproduce("table2")) == format_rows(reproduce("table2")));
  CHECK_THROWS_AS(reproduce("ex0.0"), ConfigError);
}

TEST_CASE("reproduce: a failing expectation is reported as FAIL") {
  std::string text = *builtin_config_text("ex7.1");
  text.replace(text.find("n = 9"), 5, "n = 10");
  const auto row = check_config(parse_config(text, "tampered"), "tampered");
  CHECK(row.status == std::string(kFail));
  CHECK(reproduce_exit_code({row}) == 3);
  CHECK(reproduce_exit_code({}) == 0);
}
