#pragma once

// Two-variable kernels on a cell grid, the operators built from them, and the
// iterated rearrangement L with its derived kernel M.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/function_space.hpp"
#include "orlicz/profile.hpp"

namespace orlicz {

inline constexpr std::size_t kDefaultKernelCells = 1024;

struct KernelFlags {
  bool nonincreasing_x = false;
  bool nonincreasing_y = false;
  bool homogeneous = false;  // of degree -1
  bool sum = false;
  bool radial = false;
};

enum class KernelTag {
  HardyAveraging,  // chi_(0,x)(y) / x
  HardyIndicator,  // chi_(0,x)(y)
  Sum,             // k(x + y)
  Radial,          // k(sqrt(x^2 + y^2))
  PowerRadial,     // (x^2 + y^2)^(-lambda/2)
  Hilbert,         // 1 / (x + y)
  Homogeneous,     // x^-1 P(y / x)
  Box,             // chi_(0,1)(x) chi_(0,1)(y)
  Custom,
};

/// Exact callable form of a kernel.
class KernelFamily {
 public:
  static KernelFamily hardy_averaging();
  static KernelFamily hardy_indicator();
  static KernelFamily sum(Profile k);
  static KernelFamily radial(Profile k);
  static KernelFamily power_radial(double lambda);
  static KernelFamily hilbert();
  static KernelFamily homogeneous(Profile p);
  static KernelFamily box();
  static KernelFamily custom(std::function<double(double, double)> f, std::string name,
                             KernelFlags flags = {});

  double operator()(double x, double y) const;

  /// Value representing the y-cell [y0, y1] at x: the exact cell average for
  /// kernels that jump in y (indicators, homogeneous profiles), the midpoint
  /// value otherwise.
  double cell_value(double x, double y0, double y1) const;

  /// int_{y0}^{y1} K(x, y) dy by 5-point Gauss-Legendre, split at jumps.
  double cell_integral(double x, double y0, double y1) const;

  /// Points where y -> K(x, y) jumps.
  std::vector<double> y_breaks(double x) const;

  KernelTag tag() const { return tag_; }
  KernelFlags flags() const { return flags_; }
  /// Profile k of sum/radial kernels, P of homogeneous ones.
  const Profile* profile() const { return profile_ ? profile_.get() : nullptr; }
  double lambda() const { return lambda_; }
  bool symmetric() const;
  const std::string& name() const { return name_; }

 private:
  KernelTag tag_ = KernelTag::Custom;
  KernelFlags flags_;
  std::shared_ptr<const Profile> profile_;
  double lambda_ = 0.0;
  std::function<double(double, double)> fn_;
  std::string name_;
};

class KernelGrid {
 public:
  KernelGrid(std::vector<double> x_edges, std::vector<double> x_widths,
             std::vector<double> y_edges, std::vector<double> y_widths,
             std::vector<double> values, KernelFlags flags = {},
             std::optional<KernelFamily> family = std::nullopt);

  /// Samples the family at x-cell midpoints against each y-cell.
  static KernelGrid sample(const KernelFamily& k, const std::vector<double>& x_edges,
                           const std::vector<double>& y_edges);
  static KernelGrid sample(const KernelFamily& k, const Window& w = Window{},
                           std::size_t cells = kDefaultKernelCells);

  std::size_t nx() const { return xw_.size(); }
  std::size_t ny() const { return yw_.size(); }
  std::span<const double> x_edges() const { return xe_; }
  std::span<const double> y_edges() const { return ye_; }
  std::span<const double> x_widths() const { return xw_; }
  std::span<const double> y_widths() const { return yw_; }
  double x_mid(std::size_t i) const { return 0.5 * (xe_[i] + xe_[i + 1]); }
  double y_mid(std::size_t j) const { return 0.5 * (ye_[j] + ye_[j + 1]); }

  double at(std::size_t i, std::size_t j) const { return v_[i * ny() + j]; }
  std::span<const double> row(std::size_t i) const { return {v_.data() + i * ny(), ny()}; }
  std::span<const double> values() const { return v_; }

  const KernelFlags& flags() const { return flags_; }
  const KernelFamily* family() const { return family_ ? &*family_ : nullptr; }

 private:
  std::vector<double> xe_, xw_, ye_, yw_, v_;
  KernelFlags flags_;
  std::optional<KernelFamily> family_;
};

struct FlagCheck {
  bool ok = true;
  std::size_t monotone_violations = 0;
  double homogeneity_defect = 0.0;  // max |l K(lx, ly) - K(x, y)| / K(x, y)
  std::string detail;
};

/// Verifies the flags a grid carries: monotonicity along 32 random rows and
/// columns, homogeneity on 100 random (l, x, y) through the exact callable.
FlagCheck verify_flags(const KernelGrid& k, std::uint64_t seed = 7);

/// sup of k(t/2) / k(t) over a log grid where k(t) > 0.
double doubling_constant(const Profile& k, const Window& w = Window{});

/// (T_K f)(x) on the x-cell midpoints; f is resampled onto the y-grid when
/// the grids differ.
GridFunction apply(const KernelGrid& k, const GridFunction& f);
/// (T'_K g)(y) on the y-cell midpoints.
GridFunction apply_adjoint(const KernelGrid& k, const GridFunction& g);

enum class CellRule { Midpoint, Gauss };
/// (T_K f)(x) at an arbitrary point through the exact callable.
double apply_at(const KernelFamily& k, const GridFunction& f, double x,
                CellRule rule = CellRule::Midpoint);

/// Exact rearrangement of each row in y.
std::vector<GridFunction> rearrange_rows(const KernelGrid& k);

/// L = (K^{*2})^{*1}: rows rearranged in y, then columns in x, each laid out
/// on the grid from 0 with the original widths.  Exact when the sorted widths
/// line up with that grid (uniform grids, kernels already monotone); otherwise
/// each cell takes the supremum it covers, a bimonotone majorant of the exact L.
KernelGrid iterated_rearrangement(const KernelGrid& k);

/// Evaluates M(a, b) = int_0^{1/b} L(1/a, z) dz from a rearranged kernel by
/// row prefix sums, interpolating linearly in log t between rows.
class MEvaluator {
 public:
  explicit MEvaluator(const KernelGrid& l);
  double operator()(double outer, double inner) const;
  /// Whether (outer, inner) needs rows or columns beyond the grid of L.
  bool extrapolated(double outer, double inner) const;

 private:
  double row_integral(std::size_t i, double z) const;
  std::vector<double> tau_;     // row midpoints of L
  std::vector<double> s_;       // s-edges of L
  std::vector<double> prefix_;  // (nx) x (ny + 1)
  std::vector<double> vals_;    // L row-major
  std::vector<double> last_;    // last value of each row
  std::size_t ny_ = 0;
};

struct MKernel {
  KernelGrid m;
  double extrapolated_fraction = 0.0;
};

/// M on a log grid over the window, first index outer, second inner.
MKernel m_kernel(const KernelGrid& l, const Window& w = Window{},
                 std::size_t cells = kDefaultKernelCells);

/// M for a sum kernel k(x + y), where L = K: int_{1/a}^{1/a + 1/b} k.
double sum_kernel_m(const Profile& k, double outer, double inner);

/// (Hg)(y) = int_0^y M(y, x) g(x) dx on the outer midpoints.
GridFunction h_operator(const KernelGrid& m, const GridFunction& g);

/// (Sg)(x) = int_0^x (T'_K g)(y) dy on the y-cell midpoints.
GridFunction s_operator(const KernelGrid& k, const GridFunction& g);

/// x -> x^{-1} int_0^x f on the cell midpoints of f.
GridFunction hardy_average(const GridFunction& f);

/// K = K+ - K- cellwise for signed samples.
std::pair<KernelGrid, KernelGrid> split_signed(const std::vector<double>& x_edges,
                                               const std::vector<double>& y_edges,
                                               const std::vector<double>& values);

}  // namespace orlicz
