#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "orlicz/function_space.hpp"

using namespace orlicz;

namespace {

// Random step function on random log-spaced edges, with repeated levels and zeros.
GridFunction random_grid(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 60;
  std::vector<double> e(n + 1);
  for (auto& x : e) x = log_uniform(rng, 1e-4, 1e4);
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  if (e.size() < 2) e.push_back(e.back() * 2.0);
  std::vector<double> v(e.size() - 1);
  for (auto& x : v) x = (rng() % 4 == 0) ? 0.0 : std::floor(uniform01(rng) * 8.0) / 4.0;
  return GridFunction(e, v);
}

// f*(t) = inf{lambda >= 0 : |{f > lambda}| <= t} by brute force over the levels.
double oracle_star(const GridFunction& f, double t) {
  std::set<double> levels(f.values().begin(), f.values().end());
  levels.insert(0.0);
  for (double lam : levels) {  // ascending: the first admissible level is the infimum
    double mu = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (f.value(i) > lam) mu += f.width(i);
    if (mu <= t) return lam;
  }
  return 0.0;
}

}  // namespace

TEST_CASE("grid function basics") {
  const GridFunction f({1.0, 2.0, 4.0}, {3.0, 1.0});
  CHECK(f.integral() == 5.0);
  CHECK(f(1.5) == 3.0);
  CHECK(f(4.0) == 0.0);
  CHECK(f(0.5) == 0.0);
  CHECK(f.integral_to(1.5) == doctest::Approx(1.5));
  CHECK(f.integral_to(3.0) == doctest::Approx(4.0));
  CHECK(f.support_measure() == 3.0);
  CHECK(f.max_value() == 3.0);
  CHECK_THROWS(GridFunction({1.0, 0.5}, {1.0}));
  CHECK_THROWS(GridFunction({1.0, 2.0}, {-1.0}));
}

TEST_CASE("rearrangement agrees with distribution inversion") {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_grid(rng);
    const auto fs = rearrange(f);
    CHECK(fs.lo() == 0.0);
    for (std::size_t j = 0; j < fs.size(); ++j) {
      REQUIRE(fs.value(j) == oracle_star(f, fs.mid(j)));
      if (j > 0) REQUIRE(fs.value(j) <= fs.value(j - 1));
    }
    REQUIRE(fs.integral() == f.integral());
    for (double lam : f.values()) REQUIRE(distribution(fs, lam) == distribution(f, lam));
    REQUIRE(distribution(fs, 0.0) == distribution(f, 0.0));
  }
}

TEST_CASE("rearrangement keeps widths bit for bit") {
  const GridFunction f({0.1, 0.3, 0.7, 1.9}, {1.0, 5.0, 2.0});
  const auto fs = rearrange(f);
  REQUIRE(fs.size() == 3);
  CHECK(fs.width(0) == f.width(1));
  CHECK(fs.width(1) == f.width(2));
  CHECK(fs.width(2) == f.width(0));
  const auto twice = rearrange(fs);
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(twice.value(i) == fs.value(i));
}

TEST_CASE("distribution function table") {
  const GridFunction f({0.0, 1.0, 3.0, 4.0}, {2.0, 1.0, 2.0});
  const auto d = distribution_function(f);
  REQUIRE(d.thresholds.size() == 2);
  CHECK(d.thresholds[0] == 2.0);
  CHECK(d(1.5) == 2.0);
  CHECK(d(0.5) == 4.0);
  CHECK(d(2.0) == 0.0);
}

TEST_CASE("maximal average") {
  const GridFunction f({0.0, 1.0, 3.0}, {1.0, 4.0});  // f* = 4 on [0,2), 1 on [2,3)
  CHECK(maximal(f, 1.0) == doctest::Approx(4.0));
  CHECK(maximal(f, 2.5) == doctest::Approx(8.5 / 2.5));
  CHECK(maximal(f, 10.0) == doctest::Approx(0.9));
  const auto fs = rearrange(f);
  CHECK(maximal_of_rearranged(fs, 2.5) == doctest::Approx(8.5 / 2.5));
}

TEST_CASE("dilation scales mass by 1/t") {
  const GridFunction f({1.0, 2.0, 5.0}, {1.0, 3.0});
  for (double t : {0.25, 1.0, 8.0}) {
    const auto g = dilate(f, t);
    CHECK(g.integral() == doctest::Approx(f.integral() / t));
    CHECK(g(1.5 / t) == f(1.5));
  }
  const auto c = dilate_clipped(f, 0.1, Window{1.0, 20.0});
  CHECK(c.clipped_mass == doctest::Approx(3.0 * 30.0));
  CHECK(c.f.integral() == doctest::Approx(1.0 * 10.0));
}

TEST_CASE("resample and restrict preserve mass on the overlap") {
  const GridFunction f({1.0, 2.0, 4.0}, {3.0, 1.0});
  const auto r = resample(f, std::vector<double>{0.5, 1.5, 3.0, 5.0});
  CHECK(r.integral() == doctest::Approx(f.integral()));
  CHECK(r.value(0) == doctest::Approx(1.5));
  const auto c = restrict_to(f, Window{1.5, 3.0});
  CHECK(c.integral() == doctest::Approx(1.5 + 1.0));
}

TEST_CASE("weights and their cumulative") {
  const Weight one(Profile::constant(1.0));
  CHECK(one.cumulative(3.5) == doctest::Approx(3.5));
  CHECK(one.divergent());
  for (double alpha : {-0.5, 0.0, 2.0}) {
    const Weight u(Profile::power_weight(alpha));
    for (double x : {1e-3, 1.0, 42.0})
      CHECK(u.cumulative(x) == doctest::Approx(std::pow(x, alpha + 1.0)).epsilon(1e-12));
  }
  const Weight box(Profile::indicator(0.0, 2.0));
  CHECK_FALSE(box.divergent());
  CHECK(box.total() == doctest::Approx(2.0));
  CHECK(box.with_divergence(true).divergent());
  // u(1/y)/y^2 moves the mass of (0, 2) onto (1/2, inf).
  const Weight rb = box.reciprocal();
  CHECK(rb.mass(0.5, kInf) == doctest::Approx(2.0));
  CHECK(rb.value(0.25) == 0.0);
}
