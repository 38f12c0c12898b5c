#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "orlicz/error.hpp"
#include "orlicz/harness.hpp"

using namespace orlicz;
using nlohmann::json;

namespace {

std::string config_error_field(const json& j) {
  try {
    parse_config(j);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("spec strings") {
  const auto parts = split_spec("sum:k=power:a=0.5", "kernel", {"k"});
  CHECK(parts.name == "sum");
  CHECK(parts.params.at("k") == "power:a=0.5");
  CHECK(parse_number("2.5e-1", "x") == 0.25);
  CHECK_THROWS_AS(parse_number("2.5x", "x"), ConfigError);
  CHECK(parse_nfunction("power:p=3,c=2")(1.0) == 2.0);
  CHECK(parse_profile("indicator:a=1,b=2", "u")(1.5) == 1.0);
  CHECK(parse_profile("power_weight:alpha=1", "u")(2.0) == doctest::Approx(4.0));
  CHECK(parse_kernel("hilbert")(1.0, 3.0) == doctest::Approx(0.25));
  CHECK(parse_kernel("sum:k=exp:c=2")(0.5, 0.5) == doctest::Approx(std::exp(-2.0)));
  CHECK(parse_kernel("power-radial:lambda=1")(3.0, 4.0) == doctest::Approx(0.2));
  CHECK(parse_kernel("homogeneous:profile=indicator:a=0,b=1")(2.0, 1.0) == doctest::Approx(0.5));
  const auto g = parse_gauge("gauge(phi=power:p=2,u=power_weight:alpha=1)");
  CHECK(g.phi(3.0) == 9.0);
  CHECK(g.u.cumulative(2.0) == doctest::Approx(4.0));
  try {
    parse_kernel("nope", "kernel");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "kernel");
  }
}

TEST_CASE("function files round trip") {
  const GridFunction f({0.5, 1.0, 3.0}, {2.0, 0.125});
  const std::string path = "orlicz_test_function.txt";
  {
    std::ofstream out(path);
    write_function(out, f);
  }
  const auto g = read_function_file(path);
  std::remove(path.c_str());
  REQUIRE(g.size() == 2);
  CHECK(g.edge(0) == 0.5);
  CHECK(g.value(1) == 0.125);
  CHECK_THROWS_AS(read_function_file("does/not/exist.txt"), IoError);
}

TEST_CASE("family is a fixed sequence and prefix-closed") {
  const Window w{};
  const auto big = make_family(FamilySpec{51, 1}, w, 512);
  const auto small = make_family(FamilySpec{20, 1}, w, 512);
  REQUIRE(big.size() == 51);
  REQUIRE(small.size() == 20);
  CHECK(big[0].name.rfind("indicator:", 0) == 0);
  CHECK(big[12].name.rfind("power:", 0) == 0);
  CHECK(big[21].name.rfind("exp:", 0) == 0);
  CHECK(big[27].name.rfind("randomstep", 0) == 0);
  for (std::size_t i = 0; i < small.size(); ++i) {
    CHECK(small[i].name == big[i].name);
    CHECK(small[i].f.integral() == big[i].f.integral());
  }
  const auto other = make_family(FamilySpec{51, 2}, w, 512);
  CHECK(other[40].f.integral() != big[40].f.integral());
  CHECK_THROWS_AS(make_family(FamilySpec{0, 1}, w), ConfigError);
}

TEST_CASE("config validation names the field") {
  CHECK(config_error_field({{"family", {{"size", 0}}}}) == "family.size");
  CHECK(config_error_field({{"colour", 1}}) == "colour");
  CHECK(config_error_field({{"inequality", "sideways"}}) == "inequality");
  CHECK(config_error_field({{"phi1", "power:p=1"}}) == "phi1");
  CHECK(config_error_field({{"inequality", "power"}, {"p", 2}}) == "q");
  CHECK(config_error_field({{"window", {5, 1}}}) == "window");
  CHECK(config_error_field({{"check", "maybe"}}) == "check");
  const auto c = parse_config({{"lambda", 0.75}, {"inequality", "power"}, {"p", 2}, {"q", 4}});
  CHECK(c.kernel == "power-radial:lambda=0.75");
  const auto back = parse_config(config_json(c));
  CHECK(back.kernel == c.kernel);
  CHECK(*back.q == 4.0);
}

TEST_CASE("nested windows and trends") {
  const auto ws = nested_around(Window{1e-6, 1e6}, 3);
  REQUIRE(ws.size() == 3);
  CHECK(ws[0].lo == doctest::Approx(std::pow(10.0, -1.5)));
  CHECK(ws[1].hi == doctest::Approx(1e3));
  CHECK(ws[2].lo == 1e-6);
  CHECK(trend_of({1.0, 1.2, 1.25}) == Trend::Stable);
  CHECK(trend_of({1.0, 2.0, 4.0}) == Trend::Growing);
  CHECK(trend_of({1.0, 1.5, 2.0}) == Trend::Inconclusive);
}

TEST_CASE("Hardy averaging on the family stays below p'") {
  ExperimentConfig c;
  c.inequality = Inequality::RearrangedInput;
  c.kernel = "hardy-averaging";
  c.grid_n = 1024;
  const auto r = empirical_best_constant(c);
  CHECK(r.c_hat <= 2.0 * (1.0 + 1e-9));
  CHECK(r.c_hat >= 1.8);
  REQUIRE(r.check.has_value());
  CHECK(r.check->id == "hardy-avg");
  CHECK(r.windows.size() == 3);
  CHECK(r.windows.back().members.size() == 51);
}

TEST_CASE("reports are identical across thread counts") {
  ExperimentConfig c;
  c.inequality = Inequality::OperatorGauge;
  c.kernel = "hilbert";
  c.family.size = 30;
  c.grid_n = 512;
  c.kernel_grid_n = 256;
  c.check = "none";
  set_thread_count(1);
  const auto a = empirical_best_constant(c);
  set_thread_count(3);
  const auto b = empirical_best_constant(c);
  set_thread_count(0);
  CHECK(to_csv(a) == to_csv(b));
  auto ja = to_json(a), jb = to_json(b);
  ja.erase("runtime");
  jb.erase("runtime");
  CHECK(ja.dump() == jb.dump());
  CHECK(to_csv(a).rfind("window,member,ratio,numerator,denominator\n", 0) == 0);
}

TEST_CASE("report JSON writes infinities as strings") {
  ConditionReport r;
  r.id = "x";
  r.c_star = kInf;
  r.values_per_window = {1.0 / 3.0, kInf};
  const auto j = to_json(r);
  CHECK(j["c_star"] == "inf");
  CHECK(j["values_per_window"][1] == "inf");
  CHECK(j["values_per_window"][0].get<double>() == 0.333333333333);
}

TEST_CASE("condition requests") {
  const auto r = run_check({{"id", "hardy-avg"}, {"phi1", "power:p=2"}, {"u1", "one"}});
  CHECK(r.verdict == Verdict::Holds);
  try {
    run_check({{"id", "teleport"}});
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "id");
  }
}

TEST_CASE("O'Neil comparison") {
  const Profile k(Exponential{1.0, 1.0}, "exp:c=1");
  const SpecContext ctx{};
  const auto f = parse_function("indicator:a=0,b=1", "f", ctx);
  const double xs[] = {1e-2, 1.0, 1e2};
  const auto rows = oneil_compare(k, f, xs);
  REQUIRE(rows.size() == 3);
  // int_0^1 e^{-sqrt y} dy = 2 - 4/e
  CHECK(std::abs(rows[1].oneil - (2.0 - 4.0 / std::exp(1.0))) < 1e-4);
  for (const auto& r : rows) CHECK(r.lhs <= r.oneil);
  const auto j = oneil_json({{"k", "exp:c=1"}, {"xs", {1.0}}, {"convention", "exact"}});
  CHECK(j["rows"].size() == 1);
}
