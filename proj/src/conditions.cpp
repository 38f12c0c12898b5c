#include "orlicz/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

constexpr double kCMin = 1e-8;
constexpr double kCMax = 1e8;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// Largest c with c^gamma * j <= rhs, clamped like the bisection.
double power_admissible(double j, double rhs, double gamma) {
  if (std::isnan(j) || std::isinf(j)) return 0.0;
  if (j <= 0.0) return kCMax;
  const double c = std::pow(rhs / j, 1.0 / gamma);
  return std::clamp(c, kCMin, kCMax);
}

double inv_or_inf(double c) { return c > 0.0 ? 1.0 / c : kInf; }

QuadOptions quad(const Window& w, int cpd, const std::vector<double>& breaks) {
  QuadOptions o;
  o.window = w;
  o.cells_per_decade = cpd;
  o.breaks = breaks;
  return o;
}

// int over (a, b) with divergent completions mapped to +inf.
template <class F>
double integral_or_inf(F&& h, double a, double b, const Window& w, int cpd,
                       const std::vector<double>& breaks) {
  const QuadResult r = integrate(h, a, b, quad(w, cpd, breaks));
  if (r.head_divergent || r.tail_divergent || std::isnan(r.value)) return kInf;
  return r.value;
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

void finish_part(ConditionPart& part) {
  part.growth = step_growth(part.sup_per_window);
  part.verdict = nested_verdict(part.sup_per_window);
  part.c_star = part.c_per_window.empty()
                    ? 0.0
                    : *std::min_element(part.c_per_window.begin(), part.c_per_window.end());
}

void finish_report(ConditionReport& r) {
  bool all_hold = !r.parts.empty();
  bool any_fail = false;
  r.c_star = kCMax;
  for (auto& p : r.parts) {
    all_hold = all_hold && p.verdict == Verdict::Holds;
    any_fail = any_fail || p.verdict == Verdict::Fails;
    r.c_star = std::min(r.c_star, p.c_star);
  }
  r.verdict = any_fail ? Verdict::Fails : all_hold ? Verdict::Holds : Verdict::Inconclusive;
}

// Scan over windows x lambdas x xs; `cfn(i_window, lambda, x)` returns the
// largest admissible c for each part.
template <class C>
void run_lambda_scan(ConditionReport& r, const Scan& scan, std::size_t nparts, C&& cfn) {
  r.windows = scan.windows;
  r.lambdas = scan.lambdas;
  r.x_points = scan.x_points;
  r.parts.resize(nparts);
  const std::size_t nl = scan.lambdas.size();
  const std::size_t nx = scan.x_points;
  for (std::size_t wi = 0; wi < scan.windows.size(); ++wi) {
    const Window& w = scan.windows[wi];
    const auto xs = scan.xs(w);
    std::vector<std::vector<double>> cs(nparts, std::vector<double>(nl * nx));
    parallel_for(nl * nx, [&](std::size_t idx) {
      const double lambda = scan.lambdas[idx / nx];
      const double x = xs[idx % nx];
      const std::vector<double> c = cfn(w, lambda, x);
      for (std::size_t k = 0; k < nparts; ++k) cs[k][idx] = c[k];
    });
    for (std::size_t k = 0; k < nparts; ++k) {
      double cmin = kCMax;
      double smax = 0.0;
      for (double c : cs[k]) {
        cmin = std::min(cmin, c);
        const double s = inv_or_inf(c);
        smax = std::max(smax, s);
        r.parts[k].point_values.push_back(s);
      }
      r.parts[k].c_per_window.push_back(cmin);
      r.parts[k].sup_per_window.push_back(smax);
    }
  }
  for (auto& p : r.parts) finish_part(p);
  finish_report(r);
}

void require_convex(const NFunction& phi1, const NFunction& phi2) {
  const auto grid = default_young_grid();
  if (!check_convex_composition(phi1, phi2, grid).pass)
    throw DomainError("Phi1 o Phi2^-1 is not convex");
}

// phi^{-1} with the power form split off: phi^{-1}(s) = scale * s^{1/(p-1)}.
struct PowerInverse {
  bool power = false;
  double root = 1.0;   // 1/(p-1)
  double scale = 1.0;  // (a p)^{-1/(p-1)}
  double gamma = 2.0;  // p' = 1 + 1/(p-1)

  explicit PowerInverse(const NFunction& phi) {
    if (!phi.is_power()) return;
    power = true;
    const double p = phi.exponent();
    root = 1.0 / (p - 1.0);
    scale = std::pow(phi.coefficient() * p, -root);
    gamma = 1.0 + root;
  }
};

std::vector<double> kernel_breaks(const Kernel2& k, double x) {
  return k.y_breaks ? k.y_breaks(x) : std::vector<double>{};
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Scan default_scan(int windows) {
  Scan s;
  s.lambdas = log_points(1e-4, 1e4, 33);
  s.windows = nested_windows(windows, 6.0);
  return s;
}

Verdict nested_verdict(const std::vector<double>& sup) {
  if (sup.empty()) return Verdict::Inconclusive;
  for (double s : sup)
    if (!std::isfinite(s)) return Verdict::Fails;
  if (sup.size() < 2) return Verdict::Inconclusive;
  const auto g = step_growth(sup);
  if (std::all_of(g.begin(), g.end(), [](double x) { return x >= 2.0; })) return Verdict::Fails;
  if (g.back() < 1.1) return Verdict::Holds;
  return Verdict::Inconclusive;
}

const ConditionPart* ConditionReport::part(const std::string& name) const {
  for (const auto& p : parts)
    if (p.name == name) return &p;
  return nullptr;
}

Fn Fn::of(const Profile& p) {
  auto sp = std::make_shared<const Profile>(p);
  return Fn{[sp](double y) { return sp->value(y); }, p.breakpoints()};
}

Fn Fn::constant(double c) {
  return Fn{[c](double) { return c; }, {}};
}

Fn Fn::power(double e) {
  return Fn{[e](double y) { return std::pow(y, e); }, {}};
}

Kernel2 Kernel2::of(const KernelFamily& f) {
  auto sp = std::make_shared<const KernelFamily>(f);
  return Kernel2{[sp](double x, double y) { return (*sp)(x, y); },
                 [sp](double x) { return sp->y_breaks(x); }, f.name()};
}

Kernel2 Kernel2::of(const KernelGrid& g) {
  if (g.family()) return of(*g.family());
  auto sp = std::make_shared<const KernelGrid>(g);
  auto lookup = [sp](double x, double y) {
    const auto xe = sp->x_edges();
    const auto ye = sp->y_edges();
    if (!(x >= xe.front() && x < xe.back() && y >= ye.front() && y < ye.back())) return 0.0;
    const auto i = static_cast<std::size_t>(std::upper_bound(xe.begin(), xe.end(), x) - xe.begin()) - 1;
    const auto j = static_cast<std::size_t>(std::upper_bound(ye.begin(), ye.end(), y) - ye.begin()) - 1;
    return sp->at(i, j);
  };
  auto breaks = [sp](double) {
    const auto ye = sp->y_edges();
    return std::vector<double>(ye.begin(), ye.end());
  };
  return Kernel2{lookup, breaks, "grid"};
}

std::optional<SampleViolation> check_gho(const Kernel2& k, std::size_t samples,
                                         std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  constexpr double tol = 1e-9;
  for (std::size_t n = 0; n < samples; ++n) {
    double a[3] = {log_uniform(rng, lo, hi), log_uniform(rng, lo, hi), log_uniform(rng, lo, hi)};
    std::sort(a, a + 3);
    const double y = a[0], z = a[1], x = a[2];
    if (!(y < z && z < x)) continue;
    const double kxy = k(x, y), kxz = k(x, z), kzy = k(z, y);
    const double scale = std::max({kxy, kxz, kzy, 1e-300});
    if (kxy > kxz + kzy + tol * scale)
      return SampleViolation{x, y, z, fmt("growth condition fails at x=%.6g y=%.6g", x, y) +
                                          fmt(" z=%.6g", z)};
    if (kzy > kxy + tol * scale)
      return SampleViolation{x, y, z, fmt("not nondecreasing in x at (%.6g, %.6g)", z, y) +
                                          fmt(" vs x=%.6g", x)};
    if (kxz > kxy + tol * scale)
      return SampleViolation{x, y, z, fmt("not nonincreasing in y at x=%.6g: y=%.6g", x, y) +
                                          fmt(" z=%.6g", z)};
  }
  return std::nullopt;
}

double largest_admissible(const std::function<double(double)>& lhs, double rhs,
                          int iterations) {
  const double lo_v = lhs(kCMin);
  if (std::isinf(lo_v) || std::isnan(lo_v)) return 0.0;
  if (lo_v > rhs) return kCMin;
  if (lhs(kCMax) <= rhs) return kCMax;
  double a = std::log(kCMin);
  double b = std::log(kCMax);
  for (int i = 0; i < iterations; ++i) {
    const double m = 0.5 * (a + b);
    if (lhs(std::exp(m)) <= rhs)
      a = m;
    else
      b = m;
  }
  return std::exp(a);
}

ConditionReport bk_check(const Kernel2& k, const NFunction& phi1, const NFunction& phi2,
                         const Fn& t, const Fn& u, const Fn& v, const Fn& w,
                         const Scan& scan) {
  if (auto bad = check_gho(k)) throw DomainError("kernel is not a generalized Hardy kernel: " + bad->what);
  require_convex(phi1, phi2);

  ConditionReport r;
  r.id = "bk";
  const PowerInverse pinv(phi2);
  const auto tw_breaks = merged(t.breaks, w.breaks);
  const auto uv_breaks = merged(u.breaks, v.breaks);
  const int cpd = scan.cells_per_decade;

  auto outer = [&](double x_outer, double lambda, const Window& win, bool with_k) {
    auto h = [&](double y) {
      const double kk = with_k ? k(y, x_outer) : 1.0;
      const double tv = t(y);
      if (tv == 0.0) return 0.0;
      return phi1(lambda * w(y) * kk) * tv;
    };
    const double i = integral_or_inf(h, x_outer, kInf, win, cpd, tw_breaks);
    return std::isinf(i) ? kInf : phi2(phi1.inverse(i));
  };

  // c * int_0^x (K'/u) phi2^{-1}(c a K'/(lambda u v)); K' = K(x, .) or 1.
  auto inner = [&](double x, double lambda, double a, double c, const Window& win, bool with_k) {
    const auto br = merged(uv_breaks, with_k ? kernel_breaks(k, x) : std::vector<double>{});
    auto h = [&](double y) {
      const double kk = with_k ? k(x, y) : 1.0;
      if (kk == 0.0) return 0.0;
      const double uu = u(y);
      const double uv = uu * v(y);
      if (!(uv > 0.0)) return kInf;
      const double s = c * a * kk / (lambda * uv);
      const double g = pinv.power ? std::pow(s, pinv.root) : phi2.density_inverse(s);
      return kk / uu * g;
    };
    return c * integral_or_inf(h, 0.0, x, win, cpd, br);
  };

  auto largest = [&](double x, double lambda, double a, const Window& win, bool with_k) {
    if (std::isinf(a)) return 0.0;
    if (a == 0.0) return kCMax;
    if (pinv.power) return power_admissible(pinv.scale * inner(x, lambda, a, 1.0, win, with_k),
                                            lambda, pinv.gamma);
    return largest_admissible([&](double c) { return inner(x, lambda, a, c, win, with_k); }, lambda);
  };

  run_lambda_scan(r, scan, 2, [&](const Window& win, double lambda, double x) {
    const double alpha = outer(x, lambda, win, false);
    const double beta = outer(x, lambda, win, true);
    return std::vector<double>{largest(x, lambda, alpha, win, true),
                               largest(x, lambda, beta, win, false)};
  });
  r.parts[0].name = "A";
  r.parts[1].name = "B";
  return r;
}

ConditionReport hardy_avg_check(const NFunction& phi, const Weight& u, const Scan& scan) {
  const auto d2 = check_delta2(phi, default_young_grid());
  if (!d2.pass) throw DomainError("Phi fails the doubling condition");

  ConditionReport r;
  r.id = "hardy-avg";
  if (!u.divergent()) {
    r.validated = false;
    r.warnings.push_back("int u < inf: hypothesis not met, verdict unvalidated");
  }
  const Profile& up = u.profile();
  const auto br = up.breakpoints();
  const int cpd = scan.cells_per_decade;
  const PowerInverse pinv(phi);

  for (const auto& win : scan.windows) {
    for (double x : scan.xs(win)) {
      if (up.integral(0.0, x) == 0.0) {
        r.windows = scan.windows;
        r.lambdas = scan.lambdas;
        r.x_points = scan.x_points;
        r.verdict = Verdict::Fails;
        r.c_star = 0.0;
        r.warnings.push_back(fmt("U vanishes at x=%.6g: Phi(lambda/U) is infinite", x));
        return r;
      }
    }
  }

  auto U = [&](double y) { return up.integral(0.0, y); };

  // c phi(c a / lambda) U(x)
  auto lhs_a = [&](double x, double lambda, double a, double c) {
    return c * phi.density(c * a / lambda) * U(x);
  };
  // c int_0^x phi^{-1}((c b / lambda)(y / U)) (y u / U)
  auto lhs_b = [&](double x, double lambda, double b, double c, const Window& win) {
    auto h = [&](double y) {
      const double uy = U(y);
      if (!(uy > 0.0)) return 0.0;
      const double s = c * b / lambda * (y / uy);
      const double g = pinv.power ? std::pow(s, pinv.root) : phi.density_inverse(s);
      return g * (y * up.value(y) / uy);
    };
    return c * integral_or_inf(h, 0.0, x, win, cpd, br);
  };

  run_lambda_scan(r, scan, 2, [&](const Window& win, double lambda, double x) {
    auto ha = [&](double y) { return phi(lambda / U(y)) * up.value(y); };
    auto hb = [&](double y) { return phi(lambda / y) * up.value(y); };
    const double alpha = integral_or_inf(ha, x, kInf, win, cpd, br);
    const double beta = integral_or_inf(hb, x, kInf, win, cpd, br);
    double ca, cb;
    if (std::isinf(alpha)) {
      ca = 0.0;
    } else if (pinv.power) {
      const double p = phi.exponent();
      const double j = phi.coefficient() * p * std::pow(alpha / lambda, p - 1.0) * U(x);
      ca = power_admissible(j, lambda, p);
    } else {
      ca = largest_admissible([&](double c) { return lhs_a(x, lambda, alpha, c); }, lambda);
    }
    if (std::isinf(beta)) {
      cb = 0.0;
    } else if (pinv.power) {
      cb = power_admissible(pinv.scale * lhs_b(x, lambda, beta, 1.0, win), lambda, pinv.gamma);
    } else {
      cb = largest_admissible([&](double c) { return lhs_b(x, lambda, beta, c, win); }, lambda);
    }
    return std::vector<double>{ca, cb};
  });
  r.parts[0].name = "A";
  r.parts[1].name = "B";

  // Power of lambda by which condition A's two sides differ, at c = 1, x = 1.
  const Window& win = scan.windows.back();
  auto a_side = [&](double lambda) {
    auto ha = [&](double y) { return phi(lambda / U(y)) * up.value(y); };
    const double alpha = integral_or_inf(ha, 1.0, kInf, win, cpd, br);
    return lhs_a(1.0, lambda, alpha, 1.0);
  };
  const double l0 = 1e-2, l1 = 1e2;
  const double s0 = a_side(l0), s1 = a_side(l1);
  if (s0 > 0.0 && s1 > 0.0 && std::isfinite(s0) && std::isfinite(s1)) {
    const double mismatch = std::log(s1 / s0) / std::log(l1 / l0) - 1.0;
    r.extras["lambda_exponent_mismatch"] = mismatch;
    if (std::abs(mismatch) > 1e-6)
      r.warnings.push_back(fmt("condition A: left side scales as lambda^(1%+.6g), right side as lambda",
                               mismatch));
  }
  return r;
}

ConditionReport rearranged_check(const KernelFamily& k, const NFunction& phi1,
                                 const NFunction& phi2, const Weight& u1, const Weight& u2,
                                 const Scan& scan, std::size_t kernel_cells) {
  const KernelGrid kg = KernelGrid::sample(k, Window{}, kernel_cells);
  const KernelGrid l = iterated_rearrangement(kg);
  const bool same = std::equal(l.values().begin(), l.values().end(), kg.values().begin(),
                               kg.values().end());

  Kernel2 m;
  std::vector<std::string> notes;
  if (k.flags().sum && k.profile()) {
    auto prof = std::make_shared<const Profile>(*k.profile());
    m.k = [prof](double outer, double inner) { return sum_kernel_m(*prof, outer, inner); };
    m.name = "M(" + k.name() + ")";
  } else {
    auto ev = std::make_shared<const MEvaluator>(l);
    m.k = [ev](double outer, double inner) { return (*ev)(outer, inner); };
    m.name = "M(" + k.name() + ", grid)";
    notes.push_back("M evaluated from the sampled iterated rearrangement");
  }
  if (auto bad = check_gho(m)) throw DomainError("M fails the growth condition: " + bad->what);

  auto ut1 = std::make_shared<const Profile>(u1.profile().reciprocal());
  auto ut2 = std::make_shared<const Profile>(u2.profile().reciprocal());
  auto up2 = std::make_shared<const Profile>(u2.profile());
  const Fn t{[ut1](double y) { return ut1->value(y); }, ut1->breakpoints()};
  const Fn v{[ut2](double y) { return ut2->value(y); }, ut2->breakpoints()};
  const Fn uu{[ut2, up2](double y) {
                const double d = ut2->value(y);
                return d > 0.0 ? up2->integral(0.0, 1.0 / y) / d : kInf;
              },
              ut2->breakpoints()};

  ConditionReport r = bk_check(m, phi1, phi2, t, uu, v, Fn::constant(1.0), scan);
  r.id = "rearranged";
  r.extras["l_equals_k"] = same ? 1.0 : 0.0;
  for (auto& n : notes) r.warnings.push_back(n);
  if (!u1.divergent()) r.warnings.push_back("int u1 < inf");
  if (!u2.divergent()) r.warnings.push_back("int u2 < inf");
  return r;
}

ConditionReport power_case_check(const Profile& k, double p, double q, const Weight& u1,
                                 const Weight& u2, const Scan& scan) {
  if (!(p > 1.0)) throw DomainError("power case needs p > 1");
  if (p > q) throw DomainError("power case needs p <= q");
  if (!k.nonincreasing()) throw DomainError("sum-kernel profile must be nonincreasing");

  ConditionReport r;
  r.id = "power-case";
  r.windows = scan.windows;
  r.x_points = scan.x_points;
  if (!u1.divergent()) r.warnings.push_back("int u1 < inf");
  if (!u2.divergent()) r.warnings.push_back("int u2 < inf");

  const double pp = p / (p - 1.0);
  const Profile ut1 = u1.profile().reciprocal();
  const Profile ut2 = u2.profile().reciprocal();
  const Profile& up1 = u1.profile();
  const Profile& up2 = u2.profile();
  const auto br1 = ut1.breakpoints();
  const auto br2 = merged(ut2.breakpoints(), k.breakpoints());
  const int cpd = scan.cells_per_decade;
  auto m = [&](double outer, double inner) { return sum_kernel_m(k, outer, inner); };

  r.parts.resize(2);
  r.parts[0].name = "A";
  r.parts[1].name = "B";
  for (const auto& win : scan.windows) {
    const auto xs = scan.xs(win);
    std::vector<double> sa(xs.size()), sb(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
      const double x = xs[i];
      // int_x^inf u1~ = U1(1/x)
      const double alpha = std::pow(up1.integral(0.0, 1.0 / x), p / q);
      auto ha = [&](double y) {
        const double d = up2.integral(0.0, 1.0 / y);
        return std::pow(m(x, y) / d, pp) * ut2.value(y);
      };
      auto hb = [&](double y) { return std::pow(up2.integral(0.0, 1.0 / y), -pp) * ut2.value(y); };
      auto hbeta = [&](double y) { return std::pow(m(y, x), q) * ut1.value(y); };
      const double beta = std::pow(integral_or_inf(hbeta, x, kInf, win, cpd, br1), p / q);
      auto side = [&](double coef, auto&& h) {
        if (coef == 0.0) return 0.0;
        if (std::isinf(coef)) return kInf;
        return std::pow(coef, pp - 1.0) * integral_or_inf(h, 0.0, x, win, cpd, br2);
      };
      sa[i] = side(alpha, ha);
      sb[i] = side(beta, hb);
    });
    auto fold = [&](ConditionPart& part, const std::vector<double>& s) {
      double smax = 0.0;
      for (double v : s) {
        smax = std::max(smax, std::isnan(v) ? kInf : v);
        part.point_values.push_back(v);
      }
      part.sup_per_window.push_back(smax);
      part.c_per_window.push_back(std::isinf(smax) ? 0.0
                                  : smax > 0.0     ? std::pow(smax, -1.0 / pp)
                                                   : kCMax);
    };
    fold(r.parts[0], sa);
    fold(r.parts[1], sb);
  }
  for (auto& part : r.parts) finish_part(part);
  finish_report(r);
  return r;
}

ConditionReport radial_check(const Profile& k, double p, double q, const Scan& scan) {
  if (!(p > 1.0) || !(q > 1.0)) throw DomainError("radial check needs p, q > 1");
  ConditionReport r;
  r.id = "radial";
  r.windows = scan.windows;
  r.x_points = scan.x_points;
  if (!k.nonincreasing()) r.warnings.push_back("k is not nonincreasing");
  if (!std::isfinite(doubling_constant(k))) r.warnings.push_back("k has no finite doubling constant");

  const double pp = p / (p - 1.0);
  const auto br = k.breakpoints();
  const int cpd = scan.cells_per_decade;

  if (const PowerLaw* pl = k.as_power_law(); pl && pl->lo == 0.0 && std::isinf(pl->hi)) {
    const double lambda = -pl->exponent;
    r.extras["lambda"] = lambda;
    r.extras["exponent_a"] = 1.0 + pp * (1.0 / q - lambda);
    r.extras["exponent_b"] = 1.0 + q * (1.0 / pp - lambda);
    const double lo = std::max(1.0 / pp, 1.0 / q);
    if (!(lambda > lo && lambda < 1.0))
      r.warnings.push_back(fmt("lambda=%.6g outside the admissible strip (%.6g, 1)", lambda, lo));
  }

  r.parts.resize(2);
  r.parts[0].name = "A";
  r.parts[1].name = "B";
  for (const auto& win : scan.windows) {
    const auto xs = scan.xs(win);
    std::vector<double> sa(xs.size()), sb(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) {
      const double x = xs[i];
      const double iq = k.moment(x, kInf, q, 0.0);
      const double ip = k.moment(x, kInf, pp, 0.0);
      auto finite_or = [&](double v, double e, auto&& h) {
        if (std::isnan(v)) v = integral_or_inf(h, x, kInf, win, cpd, br);
        return std::isinf(v) ? kInf : x * std::pow(v, e);
      };
      sa[i] = finite_or(iq, pp / q, [&](double y) { return std::pow(k.value(y), q); });
      sb[i] = finite_or(ip, q / pp, [&](double y) { return std::pow(k.value(y), pp); });
    });
    auto fold = [&](ConditionPart& part, const std::vector<double>& s, double root) {
      double smax = 0.0;
      for (double v : s) {
        smax = std::max(smax, v);
        part.point_values.push_back(v);
      }
      part.sup_per_window.push_back(smax);
      part.c_per_window.push_back(std::isinf(smax) ? 0.0
                                  : smax > 0.0     ? std::pow(smax, -1.0 / root)
                                                   : kCMax);
    };
    fold(r.parts[0], sa, pp);
    fold(r.parts[1], sb, q);
  }
  for (auto& part : r.parts) finish_part(part);
  finish_report(r);
  return r;
}

ConditionReport kantorovic_mixed_norm(const KernelFamily& k, double p, double q,
                                      const Scan& scan) {
  if (!(p > 1.0) || !(q > 0.0)) throw DomainError("mixed norm needs p > 1, q > 0");
  ConditionReport r;
  r.id = "kantorovic";
  r.windows = scan.windows;
  const double pp = p / (p - 1.0);
  const int cpd = scan.cells_per_decade;
  const std::vector<double> xbreaks = {1.0};
  for (const auto& win : scan.windows) {
    const QuadOptions ox = quad(win, cpd, xbreaks);
    auto outer = [&](double x) {
      const auto br = k.y_breaks(x);
      const QuadOptions oy = quad(win, cpd, br);
      auto inner = [&](double y) { return std::pow(k(x, y), pp); };
      return std::pow(integrate(inner, win.lo, win.hi, oy).value, q / pp);
    };
    r.values_per_window.push_back(integrate(outer, win.lo, win.hi, ox).value);
  }
  ConditionPart part;
  part.name = "mixed-norm";
  part.sup_per_window = r.values_per_window;
  part.growth = step_growth(part.sup_per_window);
  part.verdict = nested_verdict(part.sup_per_window);
  r.parts.push_back(part);
  r.value = r.values_per_window.back();
  r.verdict = part.verdict;
  return r;
}

namespace {

void require_homogeneous(const KernelFamily& k) {
  if (!k.flags().homogeneous) throw DomainError("kernel is not flagged homogeneous of degree -1");
  std::mt19937_64 rng(5);
  for (int n = 0; n < 100; ++n) {
    const double l = log_uniform(rng, 1e-2, 1e2);
    const double x = log_uniform(rng, 1e-2, 1e2);
    const double y = log_uniform(rng, 1e-2, 1e2);
    const double a = l * k(l * x, l * y);
    const double b = k(x, y);
    if (std::abs(a - b) > 1e-9 * std::max(std::abs(b), 1e-300) && std::abs(a - b) > 1e-300)
      throw DomainError(fmt("homogeneity fails at l=%.6g x=%.6g y=%.6g", l, x, y));
  }
}

// int_0^inf h with one value per window, verdict finite/divergent.
template <class F>
void integral_report(ConditionReport& r, F&& h, const Scan& scan, const std::vector<double>& br,
                     int cpd) {
  r.windows = scan.windows;
  bool divergent = false;
  for (const auto& win : scan.windows) {
    const QuadResult q = integrate(h, 0.0, kInf, quad(win, cpd, br));
    divergent = divergent || q.head_divergent || q.tail_divergent;
    r.values_per_window.push_back(q.head_divergent || q.tail_divergent ? kInf : q.value);
    r.tail_share = q.tail_share();
  }
  ConditionPart part;
  part.name = "integral";
  part.sup_per_window = r.values_per_window;
  part.growth = step_growth(part.sup_per_window);
  part.verdict = divergent ? Verdict::Fails : nested_verdict(part.sup_per_window);
  r.parts.push_back(part);
  r.value = r.values_per_window.back();
  r.verdict = part.verdict;
  if (r.tail_share > 0.1)
    r.warnings.push_back(fmt("tail estimates carry %.3g of the value", r.tail_share));
}

}  // namespace

ConditionReport hlp_check(const KernelFamily& k, double p, const Scan& scan) {
  if (!(p > 1.0)) throw DomainError("hlp check needs p > 1");
  require_homogeneous(k);
  ConditionReport r;
  r.id = "hlp";
  const double e = -1.0 / p;
  integral_report(r, [&](double y) { return k(1.0, y) * std::pow(y, e); }, scan,
                  k.y_breaks(1.0), scan.cells_per_decade);
  return r;
}

double dilation_function(const GaugeSpec& s1, const GaugeSpec& s2, double t, DilationMode mode,
                         const std::vector<GridFunction>& family) {
  if (!(t > 0.0)) throw DomainError("dilation needs t > 0");
  if (mode == DilationMode::PowerClosedForm) {
    if (!s1.phi.is_power() || !s2.phi.is_power() || s1.phi.exponent() != s2.phi.exponent() ||
        s1.phi.coefficient() != s2.phi.coefficient())
      throw DomainError("closed form needs Phi1 = Phi2 = t^p");
    if (s1.u.name() != s2.u.name()) throw DomainError("closed form needs u1 = u2");
    const double p = s1.phi.exponent();
    const Profile& u = s1.u.profile();
    const QuadResult gate =
        integrate([&](double y) { return u.value(y) / (1.0 + std::pow(y, p)); }, 0.0, kInf,
                  quad(Window{}, 8, u.breakpoints()));
    if (gate.head_divergent || gate.tail_divergent)
      throw DomainError("closed form needs int u / (1 + y^p) < inf");
    if (t == 1.0) return 1.0;
    double best = 0.0;
    for (double s : log_points(1e-6, 1e6, 2401)) {
      const double us = u.value(s);
      if (!(us > 0.0)) continue;
      best = std::max(best, u.value(s / t) / (t * us));
    }
    return std::pow(best, 1.0 / p);
  }
  if (family.empty()) throw DomainError("empty test family");
  std::vector<double> ratio(family.size(), 0.0);
  parallel_for(family.size(), [&](std::size_t i) {
    const double den = gauge_norm(family[i], s2).value;
    if (!(den > 0.0) || std::isinf(den)) return;
    const double num = gauge_norm(dilate(family[i], t), s1).value;
    if (std::isinf(num)) return;
    ratio[i] = num / den;
  });
  return *std::max_element(ratio.begin(), ratio.end());
}

ConditionReport homogeneous_check(const KernelFamily& k, const GaugeSpec& s1,
                                  const GaugeSpec& s2, DilationMode mode,
                                  const std::vector<GridFunction>& family, const Scan& scan) {
  require_homogeneous(k);
  ConditionReport r;
  r.id = "homogeneous";
  auto h = [&](double t) {
    const double kv = k(1.0, t);
    if (kv == 0.0) return 0.0;
    return kv * dilation_function(s1, s2, t, mode, family);
  };
  if (mode == DilationMode::Empirical) {
    // One dilation sweep per node: coarse quadrature on the widest window.
    Scan one = scan;
    one.windows = {scan.windows.back()};
    integral_report(r, h, one, k.y_breaks(1.0), 1);
    r.warnings.push_back("empirical dilation function is a lower bound");
  } else {
    integral_report(r, h, scan, k.y_breaks(1.0), scan.cells_per_decade);
  }
  return r;
}

}  // namespace orlicz
