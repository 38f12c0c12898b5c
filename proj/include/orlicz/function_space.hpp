#pragma once

// Operations on piecewise-constant functions: distribution, rearrangement,
// maximal averages, dilation; weights with exact cumulative integrals.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/grid_function.hpp"
#include "orlicz/numeric.hpp"
#include "orlicz/profile.hpp"

namespace orlicz {

inline constexpr std::size_t kDefaultCells = 4096;

/// Log-uniform edges over the window with the default resolution.
std::vector<double> default_edges(const Window& w = Window{}, std::size_t cells = kDefaultCells);

/// mu_f(lambda) = |{f > lambda}|.
double distribution(const GridFunction& f, double lambda);

struct DistributionFunction {
  std::vector<double> thresholds;  // distinct values, descending
  std::vector<double> measures;    // measures[k] = mu_f(thresholds[k])
  double total = 0.0;              // measure of the whole grid (mu below every threshold)

  double operator()(double lambda) const;
};

DistributionFunction distribution_function(const GridFunction& f);

/// f*: cells sorted by value (descending, stable) and laid out from 0.
GridFunction rearrange(const GridFunction& f);

/// f**(t) = t^{-1} int_0^t f*.
double maximal(const GridFunction& f, double t);
std::vector<double> maximal(const GridFunction& f, std::span<const double> ts);
/// Same, for a function that is already its own rearrangement.
double maximal_of_rearranged(const GridFunction& fstar, double t);

/// x -> f(t x).
GridFunction dilate(const GridFunction& f, double t);

struct Dilation {
  GridFunction f;
  double clipped_mass = 0.0;  // integral of the part falling outside the window
};
Dilation dilate_clipped(const GridFunction& f, double t, const Window& w);

/// Cell averages of f on new edges (mass preserving on the overlap).
GridFunction resample(const GridFunction& f, std::span<const double> edges);

/// f restricted to the window [lo, hi] with cells cut at the window ends.
GridFunction restrict_to(const GridFunction& f, const Window& w);

struct DivergenceReport {
  std::vector<double> right_masses;  // int over [1e-6, 10^k], k = 2..6
  std::vector<double> left_masses;   // int over [10^-k, 1e6], k = 2..6
  bool right = false;
  bool left = false;
  bool divergent() const { return right || left; }
};

/// Weight u with U(x) = int_0^x u available exactly through its profile.
class Weight {
 public:
  explicit Weight(Profile u, std::vector<double> edges = default_edges());
  static Weight from_grid(const GridFunction& g, std::string name = "grid");

  const Profile& profile() const { return profile_; }
  const GridFunction& grid() const { return grid_; }
  const std::string& name() const { return profile_.name(); }

  double value(double y) const { return profile_.value(y); }
  double mass(double a, double b) const { return profile_.integral(a, b); }
  /// U(x).
  double cumulative(double x) const;
  /// U at the grid edges.
  std::span<const double> cumulative_table() const { return cumulative_; }
  double tail(double x) const { return profile_.integral(x, kInf); }
  double total() const { return profile_.integral(0.0, kInf); }

  /// "int u = inf": the explicit override if set, else the nested-window heuristic.
  bool divergent() const;
  DivergenceReport divergence() const;
  Weight with_divergence(std::optional<bool> flag) const;

  /// u~(y) = u(1/y) / y^2 on the reciprocal grid.
  Weight reciprocal() const;

 private:
  Profile profile_;
  GridFunction grid_;
  std::vector<double> cumulative_;
  std::optional<bool> override_;
};

inline Weight reciprocal_transform(const Weight& u) { return u.reciprocal(); }

}  // namespace orlicz
