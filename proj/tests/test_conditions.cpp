#include <doctest.h>

#include <cmath>
#include <vector>

#include "orlicz/conditions.hpp"
#include "orlicz/error.hpp"
#include "orlicz/specs.hpp"

using namespace orlicz;

namespace {

const double kPi = std::acos(-1.0);

Weight one() { return Weight(Profile::constant(1.0)); }

}  // namespace

TEST_CASE("nested verdicts") {
  CHECK(nested_verdict({1.0, 1.0, 1.05}) == Verdict::Holds);
  CHECK(nested_verdict({1.0, 2.0, 4.5}) == Verdict::Fails);
  CHECK(nested_verdict({1.0, kInf, 2.0}) == Verdict::Fails);
  CHECK(nested_verdict({1.0, 1.5, 1.3 * 1.5}) == Verdict::Inconclusive);
  CHECK(std::string(to_string(Verdict::Holds)) == "holds");
}

TEST_CASE("largest admissible constant") {
  // c^2 <= 9
  CHECK(largest_admissible([](double c) { return c * c; }, 9.0) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(largest_admissible([](double) { return kInf; }, 1.0) == 0.0);
  CHECK(largest_admissible([](double) { return 0.0; }, 1.0) == 1e8);
}

TEST_CASE("generalized Hardy operator preconditions") {
  CHECK_FALSE(check_gho(Kernel2::of(KernelFamily::hardy_indicator())).has_value());
  const auto v = check_gho(Kernel2::of(KernelFamily::hilbert()));
  REQUIRE(v.has_value());
  CHECK_FALSE(v->what.empty());
  CHECK_THROWS_AS(bk_check(Kernel2::of(KernelFamily::hilbert()), NFunction::power(2.0),
                           NFunction::power(2.0), Fn::constant(1.0), Fn::constant(1.0),
                           Fn::constant(1.0), Fn::constant(1.0)),
                  DomainError);
}

TEST_CASE("indicator kernel with w = 1/x") {
  // Both conditions reduce to 1/sqrt 2 at every point, so c* = sqrt 2.
  const auto r = bk_check(Kernel2::of(KernelFamily::hardy_indicator()), NFunction::power(2.0),
                          NFunction::power(2.0), Fn::constant(1.0), Fn::constant(1.0),
                          Fn::constant(1.0), Fn::power(-1.0));
  CHECK(r.verdict == Verdict::Holds);
  CHECK(std::abs(r.c_star - std::sqrt(2.0)) < 1e-6);
  REQUIRE(r.parts.size() == 2);
  const auto& a = r.parts[0].point_values;
  const auto& b = r.parts[1].point_values;
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) REQUIRE(std::abs(a[i] - b[i]) <= 1e-10 * std::abs(a[i]));
  // Without the weight the inner integral of the second condition diverges.
  const auto w1 = bk_check(Kernel2::of(KernelFamily::hardy_indicator()), NFunction::power(2.0),
                           NFunction::power(2.0), Fn::constant(1.0), Fn::constant(1.0),
                           Fn::constant(1.0), Fn::constant(1.0));
  CHECK(w1.verdict == Verdict::Fails);
}

TEST_CASE("Hardy averaging conditions") {
  const auto r = hardy_avg_check(NFunction::power(2.0), one());
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.c_star == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
  const auto half = hardy_avg_check(NFunction::power(2.0), Weight(Profile::power_weight(0.5)));
  CHECK(half.verdict == Verdict::Holds);
  CHECK(half.c_star == doctest::Approx(1.0 / std::sqrt(4.5)).epsilon(1e-9));
  CHECK(hardy_avg_check(NFunction::power(2.0), Weight(Profile::power_weight(1.0))).verdict ==
        Verdict::Fails);
  const auto box = hardy_avg_check(NFunction::power(2.0), Weight(Profile::indicator(0.0, 1.0)));
  CHECK_FALSE(box.validated);
  CHECK_FALSE(box.warnings.empty());
  const auto p3 = hardy_avg_check(NFunction::power(3.0), one());
  CHECK(p3.verdict == Verdict::Fails);
  CHECK(p3.extras.at("lambda_exponent_mismatch") == doctest::Approx(3.0).epsilon(1e-6));
  CHECK_THROWS_AS(hardy_avg_check(NFunction::from_density([](double t) { return std::expm1(t); }), one()),
                  DomainError);
}

TEST_CASE("radial power kernel") {
  const Profile k(PowerLaw{1.0, -0.75}, "power:a=0.75");
  const auto ok = radial_check(k, 2.0, 4.0);
  CHECK(ok.verdict == Verdict::Holds);
  CHECK(ok.extras.at("exponent_a") == 0.0);
  CHECK(ok.extras.at("exponent_b") == 0.0);
  const auto bad = radial_check(k, 2.0, 3.0);
  CHECK(bad.verdict == Verdict::Fails);
  for (const auto& part : bad.parts)
    for (double g : part.growth) CHECK(g >= 1.5);
  CHECK_THROWS(radial_check(k, 1.0, 2.0));
}

TEST_CASE("mixed-norm integral of the power-radial kernel grows") {
  const auto r = kantorovic_mixed_norm(KernelFamily::power_radial(0.75), 2.0, 4.0);
  REQUIRE(r.values_per_window.size() == 3);
  CHECK(r.values_per_window[1] >= 2.0 * r.values_per_window[0]);
  CHECK(r.values_per_window[2] >= 2.0 * r.values_per_window[1]);
  CHECK(r.verdict == Verdict::Fails);
  // A bounded box has mixed norm 1 on a window containing it.
  const auto box = kantorovic_mixed_norm(KernelFamily::box(), 2.0, 4.0);
  CHECK(box.values_per_window.back() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("homogeneous kernels") {
  const auto h = hlp_check(KernelFamily::hilbert(), 2.0);
  REQUIRE(h.value.has_value());
  CHECK(std::abs(*h.value - kPi) < 1e-2);
  CHECK(*hlp_check(KernelFamily::hardy_averaging(), 2.0).value == doctest::Approx(2.0).epsilon(1e-3));
  CHECK_THROWS(hlp_check(KernelFamily::hardy_indicator(), 2.0));
  const GaugeSpec g4{NFunction::power(4.0), one()};
  const auto d = homogeneous_check(KernelFamily::hilbert(), g4, g4, DilationMode::PowerClosedForm);
  REQUIRE(d.value.has_value());
  CHECK(std::abs(*d.value / (kPi / std::sin(kPi / 4.0)) - 1.0) < 0.03);
}

TEST_CASE("dilation function") {
  // ||f(t .)||_p = t^{-1/p} ||f||_p.
  const GaugeSpec g4{NFunction::power(4.0), one()};
  for (double t : {0.1, 1.0, 10.0})
    CHECK(dilation_function(g4, g4, t, DilationMode::PowerClosedForm) ==
          doctest::Approx(std::pow(t, -0.25)).epsilon(1e-12));
  const Window w{};
  const SpecContext ctx{w, 1024};
  const std::vector<GridFunction> fam = {parse_function("indicator:a=0.01,b=1", "f", ctx),
                                         parse_function("exp:c=1", "f", ctx)};
  const double e = dilation_function(g4, g4, 10.0, DilationMode::Empirical, fam);
  CHECK(e <= std::pow(10.0, -0.25) * (1.0 + 1e-9));
  CHECK(e >= 0.99 * std::pow(10.0, -0.25));
}

TEST_CASE("power case for the exponential sum kernel") {
  const Profile e(Exponential{1.0, 1.0}, "exp:c=1");
  const auto r = power_case_check(e, 2.0, 2.0, one(), one());
  CHECK(r.verdict == Verdict::Holds);
  CHECK(r.c_star > 0.0);
  CHECK_THROWS(power_case_check(e, 3.0, 2.0, one(), one()));
  CHECK_THROWS(power_case_check(Profile::indicator(1.0, 2.0), 2.0, 2.0, one(), one()));
}

TEST_CASE("conditions through the iterated rearrangement") {
  const auto r = rearranged_check(KernelFamily::sum(Profile(Exponential{1.0, 1.0}, "exp:c=1")),
                                  NFunction::power(2.0), NFunction::power(2.0), one(), one());
  CHECK(r.extras.at("l_equals_k") == 1.0);
  CHECK(r.verdict == Verdict::Holds);
}
