#include "orlicz/gauge.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

constexpr double kLambdaMin = 1e-30;
constexpr double kLambdaMax = 1e30;
constexpr double kRelWidth = 1e-9;

std::vector<double> cell_masses(const GridFunction& f, const Weight& u) {
  std::vector<double> m(f.size(), 0.0);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.value(i) > 0.0) m[i] = u.mass(f.edge(i), f.edge(i) + f.width(i));
  return m;
}

double modular_with(const GridFunction& f, const std::vector<double>& masses,
                    const NFunction& phi, double lambda) {
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = f.value(i);
    if (v == 0.0 || masses[i] == 0.0) continue;
    s.add(phi(v / lambda) * masses[i]);
  }
  return s.value();
}

}  // namespace

double modular(const GridFunction& f, const GaugeSpec& spec, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("modular: lambda must be > 0");
  return modular_with(f, cell_masses(f, spec.u), spec.phi, lambda);
}

GaugeValue solve_gauge(const std::function<double(double)>& modular_of, double start) {
  GaugeValue g;
  auto above = [&](double lam) {
    const double m = modular_of(lam);
    return !(m <= 1.0);
  };
  double lam = std::clamp(start > 0.0 && std::isfinite(start) ? start : 1.0, kLambdaMin, kLambdaMax);
  double lo, hi;
  if (above(lam)) {
    lo = lam;
    hi = lam * 2.0;
    while (above(hi)) {
      lo = hi;
      hi *= 2.0;
      ++g.iterations;
      if (hi > kLambdaMax) {
        g.value = kInf;
        g.modular_at_value = modular_of(kLambdaMax);
        g.warning = "modular stays above 1 up to the bracket cap";
        return g;
      }
    }
  } else {
    hi = lam;
    lo = lam / 2.0;
    while (!above(lo)) {
      hi = lo;
      lo /= 2.0;
      ++g.iterations;
      if (lo < kLambdaMin) {
        // modular <= 1 all the way down: the function is null for the gauge.
        g.value = 0.0;
        return g;
      }
    }
  }
  while (hi / lo - 1.0 > kRelWidth) {
    const double mid = std::sqrt(lo * hi);
    if (above(mid))
      lo = mid;
    else
      hi = mid;
    ++g.iterations;
  }
  g.value = std::sqrt(lo * hi);
  g.modular_at_value = modular_of(g.value);
  return g;
}

GaugeValue gauge_norm(const GridFunction& f, const GaugeSpec& spec) {
  if (f.is_zero()) return GaugeValue{};
  const std::vector<double> masses = cell_masses(f, spec.u);
  bool any = false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.value(i) > 0.0 && masses[i] > 0.0) any = true;
  if (!any) return GaugeValue{};
  return solve_gauge(
      [&](double lam) { return modular_with(f, masses, spec.phi, lam); }, f.max_value());
}

GaugeValue dual_gauge(const GridFunction& g, const GaugeSpec& spec) {
  if (g.is_zero()) return GaugeValue{};
  std::vector<double> h(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.value(i) == 0.0) continue;
    const double ubar = spec.u.mass(g.edge(i), g.edge(i) + g.width(i)) / g.width(i);
    if (!(ubar > 0.0)) {
      GaugeValue inf;
      inf.value = kInf;
      inf.warning = "weight vanishes on a cell where g > 0";
      return inf;
    }
    h[i] = g.value(i) / ubar;
  }
  return gauge_norm(g.with_values(std::move(h)), GaugeSpec{spec.phi.complementary(), spec.u});
}

GaugeValue down_dual_gauge(const GridFunction& h, const NFunction& phi2, const Weight& u2) {
  if (h.is_zero()) return GaugeValue{};
  const NFunction psi2 = phi2.complementary();
  // Prefix integrals of h at its edges; between edges the prefix is linear.
  std::vector<double> prefix(h.size() + 1, 0.0);
  {
    CompensatedSum s;
    for (std::size_t i = 0; i < h.size(); ++i) {
      s.add(h.value(i) * h.width(i));
      prefix[i + 1] = s.value();
    }
  }
  auto ratio = [&](double x) -> double {
    if (!(x > h.lo())) return 0.0;
    double p;
    if (x >= h.hi()) {
      p = prefix.back();
    } else {
      const std::size_t i = h.cell_of(x);
      p = prefix[i] + h.value(i) * (x - h.edge(i));
    }
    if (p == 0.0) return 0.0;
    return p / u2.cumulative(x);
  };
  std::vector<double> breaks(h.edges().begin(), h.edges().end());
  for (double b : u2.profile().breakpoints()) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  QuadOptions opt;
  // The fitted decades must lie where the ratio is a pure power: inside the
  // first cell of h near 0, past the support of h at infinity.
  opt.window = Window{h.lo() > 0.0 ? h.lo() : h.edge(1) / 100.0, h.hi() * 100.0};
  opt.breaks = breaks;
  auto mod = [&](double lam) {
    auto integrand = [&](double x) {
      const double r = ratio(x);
      if (r == 0.0) return 0.0;
      const double w = u2.value(x);
      return w == 0.0 ? 0.0 : psi2(r / lam) * w;
    };
    const QuadResult q = integrate(integrand, 0.0, kInf, opt);
    if (q.head_divergent || q.tail_divergent) return kInf;
    return q.value;
  };
  GaugeValue g = solve_gauge(mod, h.max_value());
  if (!u2.divergent())
    g.warning = "weight u2 has finite mass: the down-dual formula is unvalidated here";
  return g;
}

}  // namespace orlicz
