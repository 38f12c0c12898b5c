#pragma once

// One-variable functions on (0, inf) with exact integrals: the families used
// for test functions, weights and kernel profiles.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "orlicz/grid_function.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

/// coef * y^exponent on [lo, hi); lo may be 0 and hi infinite.
struct PowerLaw {
  double coef = 1.0;
  double exponent = 0.0;
  double lo = 0.0;
  double hi = kInf;
};

/// coef * exp(-rate * y); rate 0 gives a constant.
struct Exponential {
  double coef = 1.0;
  double rate = 1.0;
};

class Profile;

/// y -> base(1/y) / y^2.
struct ReciprocalOf {
  std::shared_ptr<const Profile> base;
};

class Profile {
 public:
  Profile() : Profile(Exponential{0.0, 0.0}, "zero") {}
  Profile(PowerLaw p, std::string name);
  Profile(Exponential e, std::string name);
  Profile(GridFunction f, std::string name);
  Profile(ReciprocalOf r, std::string name);

  static Profile indicator(double a, double b);
  static Profile constant(double c);
  /// (alpha + 1) y^alpha on (0, inf).
  static Profile power_weight(double alpha);

  double value(double y) const;
  double operator()(double y) const { return value(y); }

  /// int_a^b value(y)^r y^m dy for 0 <= a < b <= inf; +inf when divergent.
  double moment(double a, double b, double r = 1.0, double m = 0.0) const;
  double integral(double a, double b) const { return moment(a, b, 1.0, 0.0); }

  /// Points in (0, inf) where the profile jumps (indicator ends, cell edges).
  std::vector<double> breakpoints() const;

  /// Nonincreasing on its support, checked exactly for the closed forms.
  bool nonincreasing() const;

  /// y -> value(1/y) / y^2, mass preserving under y -> 1/y.
  Profile reciprocal() const;

  /// Cell averages on the given edges.
  GridFunction sample(const std::vector<double>& edges) const;

  const std::string& name() const { return name_; }
  bool is_power_law() const { return std::holds_alternative<PowerLaw>(v_); }
  const PowerLaw* as_power_law() const { return std::get_if<PowerLaw>(&v_); }
  const Exponential* as_exponential() const { return std::get_if<Exponential>(&v_); }
  const GridFunction* as_grid() const { return std::get_if<GridFunction>(&v_); }

 private:
  std::variant<PowerLaw, Exponential, GridFunction, ReciprocalOf> v_;
  std::string name_;
};

/// int_a^b y^e dy, 0 <= a < b <= inf (inf when divergent).
double power_integral(double a, double b, double e);

}  // namespace orlicz
