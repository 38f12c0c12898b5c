#pragma once

// Luxemburg gauge rho_{Phi,u}(f) = inf{lambda > 0 : int Phi(f/lambda) u <= 1}
// and the two dual formulas built on it.

#include <functional>
#include <string>

#include "orlicz/function_space.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct GaugeSpec {
  NFunction phi;
  Weight u;
};

struct GaugeValue {
  double value = 0.0;              // +inf when the modular never drops to 1
  double modular_at_value = 0.0;
  int iterations = 0;
  std::string warning;

  bool infinite() const { return std::isinf(value); }
};

/// int Phi(f / lambda) u, summed exactly cell by cell.
double modular(const GridFunction& f, const GaugeSpec& spec, double lambda);

/// Root of a nonincreasing modular m(lambda) = 1: bracket by doubling or
/// halving inside [1e-30, 1e30], then geometric bisection to relative width 1e-9.
GaugeValue solve_gauge(const std::function<double(double)>& modular_of, double start = 1.0);

GaugeValue gauge_norm(const GridFunction& f, const GaugeSpec& spec);

/// rho_{Psi,u}(g/u) with Psi the complementary function of Phi.
GaugeValue dual_gauge(const GridFunction& g, const GaugeSpec& spec);

/// rho_{Psi2,u2}(x -> (int_0^x h) / U2(x)), integrated over (0, inf) with
/// power-law completion past the grid of h.
GaugeValue down_dual_gauge(const GridFunction& h, const NFunction& phi2, const Weight& u2);

}  // namespace orlicz
