#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace orlicz {

/// Nonnegative piecewise-constant function: value[i] on [edge[i], edge[i+1]),
/// zero outside [edge[0], edge[n]].  Cell widths are stored alongside the
/// edges so that layouts produced by rearrangement keep the original widths
/// bit for bit.
class GridFunction {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  GridFunction() = default;
  GridFunction(std::vector<double> edges, std::vector<double> values);
  GridFunction(std::vector<double> edges, std::vector<double> widths,
               std::vector<double> values);

  static GridFunction zero(std::vector<double> edges);
  static GridFunction constant(std::vector<double> edges, double c);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  std::span<const double> edges() const { return edges_; }
  std::span<const double> widths() const { return widths_; }
  std::span<const double> values() const { return values_; }

  double edge(std::size_t i) const { return edges_[i]; }
  double width(std::size_t i) const { return widths_[i]; }
  double value(std::size_t i) const { return values_[i]; }
  double mid(std::size_t i) const { return 0.5 * (edges_[i] + edges_[i + 1]); }
  double lo() const { return edges_.front(); }
  double hi() const { return edges_.back(); }

  /// Cell containing x, or npos outside [lo, hi).
  std::size_t cell_of(double x) const;
  double operator()(double x) const;

  /// Sum of value * width; depends only on the multiset of cells.
  double integral() const;
  /// int_0^x f, linear inside a cell.
  double integral_to(double x) const;
  /// Length of the support {f > 0}.
  double support_measure() const;
  double max_value() const;
  bool is_zero() const;

  GridFunction scaled(double c) const;
  GridFunction with_values(std::vector<double> values) const;

 private:
  std::vector<double> edges_;
  std::vector<double> widths_;
  std::vector<double> values_;
};

}  // namespace orlicz
