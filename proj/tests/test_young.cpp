#include <doctest.h>

#include <cmath>
#include <vector>

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

// Psi for Phi = t^p: int_0^t (s/p)^{1/(p-1)} ds.
double power_conjugate(double p, double t) {
  const double q = p / (p - 1.0);
  return (p - 1.0) / p * std::pow(t, q) * std::pow(p, -1.0 / (p - 1.0));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("power N-function values and inverse") {
  const auto phi = NFunction::power(3.0, 2.0);
  CHECK(phi(2.0) == doctest::Approx(16.0));
  CHECK(phi.density(2.0) == doctest::Approx(24.0));
  for (double y : {1e-6, 0.3, 1.0, 7.0, 1e9})
    CHECK(rel(phi(phi.inverse(y)), y) < 1e-13);
  CHECK(phi.describe() == "power:p=3,c=2");
}

TEST_CASE("complementary of a power matches the closed form") {
  for (double p : {1.5, 2.0, 3.0, 5.0}) {
    const auto psi = NFunction::power(p).complementary();
    for (double t : {1e-4, 0.5, 2.0, 30.0}) CHECK(rel(psi(t), power_conjugate(p, t)) < 1e-12);
  }
  // t^2 is paired with t^2/4; t^3 at 2 gives 4 sqrt(2/27).
  CHECK(NFunction::power(2.0).complementary()(3.0) == doctest::Approx(2.25));
  CHECK(NFunction::power(3.0).complementary()(2.0) == doctest::Approx(4.0 * std::sqrt(2.0 / 27.0)));
}

TEST_CASE("sampled density reproduces e^t - t - 1") {
  const auto phi = NFunction::from_density([](double t) { return std::expm1(t); });
  for (double t : {1e-3, 0.1, 1.0, 5.0, 20.0}) {
    const double exact = std::expm1(t) - t;
    // log-log interpolation between 128 knots per decade
    CHECK(rel(phi(t), exact) < 1e-3);
    CHECK(rel(phi.inverse(exact), t) < 1e-4);
  }
  CHECK_FALSE(phi.is_power());
}

TEST_CASE("sampled density rejects bad knots") {
  CHECK_THROWS(NFunction::sampled({1.0, 1.0}, {1.0, 2.0}));
  CHECK_THROWS(NFunction::sampled({1.0, 2.0}, {2.0, 1.0}));
}

TEST_CASE("Young inequality and double complement") {
  const auto s = log_points(1e-4, 1e4, 64);
  std::vector<NFunction> phis = {NFunction::power(2.0), NFunction::power(3.0),
                                 NFunction::from_density([](double t) { return std::expm1(t); })};
  for (const auto& phi : phis) {
    const ComplementaryPair pair(phi);
    const auto rep = young_check(pair, s, s);
    CHECK(rep.pairs == 64u * 64u);
    CHECK(rep.max_violation <= 1e-12);
    const auto back = pair.psi.complementary();
    for (double t : s) {
      if (!phi.is_power() && t > 50.0) break;  // e^t overflows the comparison scale
      CHECK(rel(back(t), phi(t)) < 1e-9);
    }
  }
}

TEST_CASE("delta2 separates powers from exponentials") {
  const auto grid = default_young_grid();
  const auto p = check_delta2(NFunction::power(2.5), grid);
  CHECK(p.pass);
  CHECK(p.sup_ratio == doctest::Approx(std::pow(2.0, 2.5)));
  const auto e = check_delta2(NFunction::from_density([](double t) { return std::expm1(t); }), grid);
  CHECK_FALSE(e.pass);
}

TEST_CASE("convexity of Phi1 after the inverse of Phi2") {
  const auto grid = default_young_grid();
  CHECK(check_convex_composition(NFunction::power(4.0), NFunction::power(2.0), grid).pass);
  CHECK(check_convex_composition(NFunction::power(2.0), NFunction::power(2.0), grid).pass);
  CHECK_FALSE(check_convex_composition(NFunction::power(2.0), NFunction::power(4.0), grid).pass);
}

TEST_CASE("normalized takes the value one at one") {
  const auto phi = NFunction::power(2.0, 5.0).normalized();
  CHECK(phi(1.0) == doctest::Approx(1.0));
  CHECK(phi(3.0) == doctest::Approx(9.0));
}
