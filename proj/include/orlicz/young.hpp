#pragma once

// N-functions Phi(t) = int_0^t phi, given in closed power form or as a
// monotone density sampled on a log grid.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace orlicz {

class NFunction {
 public:
  /// Phi(t) = coef * t^p, p > 1.
  static NFunction power(double p, double coef = 1.0);

  /// Density knots (t_i, phi_i): t strictly increasing and positive, phi
  /// nondecreasing and positive.  Between knots phi is interpolated as a
  /// piecewise power law (linear in log-log); beyond the ends the outermost
  /// cells are extrapolated.
  static NFunction sampled(std::vector<double> t, std::vector<double> phi);

  /// Samples `density` at n log-uniform points of [lo, hi]; points where the
  /// density is not finite and positive are dropped.
  static NFunction from_density(const std::function<double(double)>& density,
                                double lo = 1e-8, double hi = 1e8,
                                std::size_t n = 2048);

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double density(double t) const;
  /// Phi^{-1}(y).
  double inverse(double y) const;
  /// phi^{-1}(y), the right-continuous generalized inverse on flat runs.
  double density_inverse(double y) const;

  /// Psi(t) = int_0^t phi^{-1}.  Throws DegenerateInput for flat density runs.
  NFunction complementary() const;

  /// Phi / Phi(1), so that the result takes the value 1 at 1.
  NFunction normalized() const;

  bool is_power() const { return kind_ == Kind::Power; }
  double exponent() const { return p_; }       // power form only
  double coefficient() const { return c_; }    // power form only

  /// Density knots of the sampled form (empty for the power form).
  std::span<const double> knots_t() const;
  std::span<const double> knots_phi() const;

  /// Short description, e.g. "power:p=2" or "sampled:knots=2048".
  std::string describe() const;

 private:
  struct Table;
  enum class Kind { Power, Sampled };

  Kind kind_ = Kind::Power;
  double p_ = 2.0;
  double c_ = 1.0;
  std::shared_ptr<const Table> table_;
};

struct ComplementaryPair {
  NFunction phi;
  NFunction psi;

  explicit ComplementaryPair(NFunction f)
      : phi(std::move(f)), psi(phi.complementary()) {}
};

struct YoungReport {
  double max_violation = 0.0;       // max of (s t - Phi(s) - Psi(t)) / max(Phi(s), Psi(t), 1)
  double max_equality_defect = 0.0; // max |s phi(s) - Phi(s) - Psi(phi(s))| / (s phi(s))
  std::size_t pairs = 0;
};

YoungReport young_check(const ComplementaryPair& pair, std::span<const double> s,
                        std::span<const double> t);

struct Delta2Report {
  double sup_ratio = 0.0;                // sup of Phi(2t)/Phi(t) over the grid
  std::vector<double> decade_sup;        // per-decade suprema, ascending t
  bool finite = true;
  bool stable_top = true;                // top three decades within 10%
  bool pass = false;
};

/// Requires the grid to span at least 8 decades.
Delta2Report check_delta2(const NFunction& phi, std::span<const double> t_grid);

struct ConvexityReport {
  double min_slope_step = 0.0;  // most negative relative slope decrease seen
  bool pass = false;
};

/// Convexity of s -> Phi1(Phi2^{-1}(s)) on the grid (ascending, positive).
ConvexityReport check_convex_composition(const NFunction& phi1, const NFunction& phi2,
                                         std::span<const double> s_grid);

/// Default grid for the two checks above: 257 log points on [1e-8, 1e8].
std::vector<double> default_young_grid();

}  // namespace orlicz
