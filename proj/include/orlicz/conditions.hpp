#pragma once

// Numerical verdicts for the boundedness conditions: scans of the displayed
// inequalities over (lambda, x), best admissible constants, and divergence
// diagnostics across nested windows.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/function_space.hpp"
#include "orlicz/gauge.hpp"
#include "orlicz/kernel.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Verdict { Holds, Fails, Inconclusive };
const char* to_string(Verdict v);

/// Scan grids.  Each window gets its own x grid; quadrature inside a window
/// truncates there and completes the ends by power-law estimates.
struct Scan {
  std::vector<double> lambdas;
  std::size_t x_points = 65;
  std::vector<Window> windows;
  int cells_per_decade = 8;

  std::vector<double> xs(const Window& w) const { return log_points(w.lo, w.hi, x_points); }
};

/// 33 lambdas on [1e-4, 1e4]; 65 x per window; windows 10^{+-1.5, 3, 6}.
Scan default_scan(int windows = 3);

/// Verdict of a sequence of suprema over nested windows: fails when any is
/// infinite or every step grows at least 2x, holds when the last step grows
/// less than 10%, inconclusive otherwise.
Verdict nested_verdict(const std::vector<double>& sup_per_window);

/// A function on (0, inf) together with the points where it jumps.
struct Fn {
  std::function<double(double)> f;
  std::vector<double> breaks;

  double operator()(double y) const { return f(y); }

  static Fn of(const Profile& p);
  static Fn of(const Weight& u) { return of(u.profile()); }
  static Fn constant(double c);
  static Fn power(double e);  // y^e
};

/// Two-variable kernel used by the scans.
struct Kernel2 {
  std::function<double(double, double)> k;
  std::function<std::vector<double>(double)> y_breaks;  // may be empty
  std::string name;

  double operator()(double x, double y) const { return k(x, y); }

  static Kernel2 of(const KernelFamily& f);
  /// The exact family when the grid carries one, else the cell values.
  static Kernel2 of(const KernelGrid& g);
};

struct ConditionPart {
  std::string name;
  std::vector<double> sup_per_window;  // sup of the normalized left side (= 1/c)
  std::vector<double> c_per_window;
  std::vector<double> growth;
  double c_star = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// 1/c at every scan point: window-major, then lambda, then x.
  std::vector<double> point_values;
};

struct ConditionReport {
  std::string id;
  std::vector<Window> windows;
  std::vector<double> lambdas;  // empty for lambda-free conditions
  std::size_t x_points = 0;
  std::vector<ConditionPart> parts;
  double c_star = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  /// Integral-type checks: the value on each window and the last one.
  std::vector<double> values_per_window;
  std::optional<double> value;
  double tail_share = 0.0;
  bool validated = true;  // false when a hypothesis behind the condition is not met
  std::map<std::string, double> extras;
  std::vector<std::string> warnings;

  const ConditionPart* part(const std::string& name) const;
};

/// Thrown when a precondition fails on a sample.
struct SampleViolation {
  double x = 0.0, y = 0.0, z = 0.0;
  std::string what;
};

/// Monotonicity (nondecreasing in x, nonincreasing in y) and the growth
/// condition K(x,y) <= K(x,z) + K(z,y), y < z < x, on random samples.
std::optional<SampleViolation> check_gho(const Kernel2& k, std::size_t samples = 4000,
                                         std::uint64_t seed = 11,
                                         double lo = 1e-3, double hi = 1e3);

/// Largest c in [1e-8, 1e8] with lhs(c) <= rhs for a left side nondecreasing
/// in c, by bisection on log c.  Returns 0 when lhs(1e-8) is infinite.
double largest_admissible(const std::function<double(double)>& lhs, double rhs,
                          int iterations = 60);

/// Generalized Hardy operators: both conditions, with
/// alpha = Phi2 o Phi1^{-1}(int_x^inf Phi1(lambda w) t) and
/// beta  = Phi2 o Phi1^{-1}(int_x^inf Phi1(lambda w K(y, x)) t).
ConditionReport bk_check(const Kernel2& k, const NFunction& phi1, const NFunction& phi2,
                         const Fn& t, const Fn& u, const Fn& v, const Fn& w,
                         const Scan& scan = default_scan());

/// Hardy averaging operator on nonincreasing functions, conditions as printed.
ConditionReport hardy_avg_check(const NFunction& phi, const Weight& u,
                                const Scan& scan = default_scan());

/// Iterated rearrangement L, its kernel M, and the generalized Hardy
/// conditions for H with t = u1~, u = U2(1/y) / u2~, v = u2~, w = 1.
ConditionReport rearranged_check(const KernelFamily& k, const NFunction& phi1,
                                 const NFunction& phi2, const Weight& u1, const Weight& u2,
                                 const Scan& scan = default_scan(),
                                 std::size_t kernel_cells = kDefaultKernelCells);

/// Sum kernel k(x + y) with Phi1 = t^q, Phi2 = t^p; lambda-free.
ConditionReport power_case_check(const Profile& k, double p, double q, const Weight& u1,
                                 const Weight& u2, const Scan& scan = default_scan());

/// Radial kernel k(sqrt(x^2 + y^2)), L^p -> L^q.
ConditionReport radial_check(const Profile& k, double p, double q,
                             const Scan& scan = default_scan());

/// int (int K(x,y)^{p'} dy)^{q/p'} dx, truncated to each window.
ConditionReport kantorovic_mixed_norm(const KernelFamily& k, double p, double q,
                                      const Scan& scan = default_scan());

/// int_0^inf K(1, y) y^{-1/p} dy for a kernel homogeneous of degree -1.
ConditionReport hlp_check(const KernelFamily& k, double p, const Scan& scan = default_scan());

enum class DilationMode { Empirical, PowerClosedForm };

/// h(t): the norm of f -> f(t .) from rho_{Phi2,u2} to rho_{Phi1,u1}.
/// Empirical mode is the sup over the family (a lower bound); the closed form
/// needs Phi1 = Phi2 = t^p and u1 = u2.
double dilation_function(const GaugeSpec& s1, const GaugeSpec& s2, double t, DilationMode mode,
                         const std::vector<GridFunction>& family = {});

/// int K(1, t) h(t) dt.
ConditionReport homogeneous_check(const KernelFamily& k, const GaugeSpec& s1,
                                  const GaugeSpec& s2, DilationMode mode,
                                  const std::vector<GridFunction>& family = {},
                                  const Scan& scan = default_scan());

}  // namespace orlicz
