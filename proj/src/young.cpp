#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "orlicz/error.hpp"
#include "orlicz/numeric.hpp"

namespace orlicz {

// Piecewise power-law density.  Cell i spans [t[i], t[i+1]] with exponent
// a[i]; cum[i] = Phi(t[i]) exactly for the interpolant.
struct NFunction::Table {
  std::vector<double> t, phi, a, cum;
  double a_head = 1.0;
  double a_tail = 1.0;

  // Integral of the power law phi_i (s/t_i)^a over [t_i, t_i e^L].
  static double piece(double ti, double phii, double a, double L) {
    return phii * ti * std::expm1((a + 1.0) * L) / (a + 1.0);
  }

  // Index of the cell whose left knot is <= x in `knots` (n-1 for the tail).
  static std::size_t locate(const std::vector<double>& knots, double x) {
    auto it = std::upper_bound(knots.begin(), knots.end(), x);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
  }

  double exponent_at(std::size_t i) const {
    return i + 1 < t.size() ? a[i] : a_tail;
  }
};

NFunction NFunction::power(double p, double coef) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw DomainError("power N-function needs p > 1");
  if (!(coef > 0.0) || !std::isfinite(coef))
    throw DomainError("power N-function needs a positive coefficient");
  NFunction f;
  f.kind_ = Kind::Power;
  f.p_ = p;
  f.c_ = coef;
  return f;
}

NFunction NFunction::sampled(std::vector<double> t, std::vector<double> phi) {
  const std::size_t n = t.size();
  if (n < 2 || phi.size() != n)
    throw DomainError("sampled density needs at least two (t, phi) knots");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t[i] > 0.0) || !std::isfinite(t[i]))
      throw DomainError("density knots must be positive and finite");
    if (!(phi[i] > 0.0) || !std::isfinite(phi[i]))
      throw DomainError("density values must be positive and finite");
    if (i > 0 && !(t[i] > t[i - 1]))
      throw DomainError("density knots must be strictly increasing");
    if (i > 0 && phi[i] < phi[i - 1])
      throw DomainError("density must be nondecreasing");
  }
  auto tab = std::make_shared<Table>();
  tab->a.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    tab->a[i] = std::log(phi[i + 1] / phi[i]) / std::log(t[i + 1] / t[i]);
  tab->a_head = tab->a.front();
  tab->a_tail = tab->a.back();
  if (!(tab->a_head > 0.0))
    throw DomainError("density must vanish at 0: first cell is flat");
  if (!(tab->a_tail > 0.0))
    throw DomainError("density must grow without bound: last cell is flat");
  tab->cum.resize(n);
  tab->cum[0] = phi[0] * t[0] / (tab->a_head + 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i)
    tab->cum[i + 1] = tab->cum[i] + Table::piece(t[i], phi[i], tab->a[i],
                                                 std::log(t[i + 1] / t[i]));
  tab->t = std::move(t);
  tab->phi = std::move(phi);

  NFunction f;
  f.kind_ = Kind::Sampled;
  f.table_ = std::move(tab);
  return f;
}

NFunction NFunction::from_density(const std::function<double(double)>& density,
                                  double lo, double hi, std::size_t n) {
  std::vector<double> t, phi;
  for (double x : log_points(lo, hi, n)) {
    const double v = density(x);
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    if (!phi.empty() && v < phi.back()) continue;
    t.push_back(x);
    phi.push_back(v);
  }
  return sampled(std::move(t), std::move(phi));
}

double NFunction::value(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return kInf;
  if (kind_ == Kind::Power) return c_ * std::pow(x, p_);
  const Table& T = *table_;
  if (x < T.t[0])
    return T.cum[0] * std::exp((T.a_head + 1.0) * std::log(x / T.t[0]));
  const std::size_t i = Table::locate(T.t, x);
  return T.cum[i] + Table::piece(T.t[i], T.phi[i], T.exponent_at(i), std::log(x / T.t[i]));
}

double NFunction::density(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return kInf;
  if (kind_ == Kind::Power) return c_ * p_ * std::pow(x, p_ - 1.0);
  const Table& T = *table_;
  if (x < T.t[0]) return T.phi[0] * std::pow(x / T.t[0], T.a_head);
  const std::size_t i = Table::locate(T.t, x);
  return T.phi[i] * std::pow(x / T.t[i], T.exponent_at(i));
}

double NFunction::inverse(double y) const {
  if (!(y > 0.0)) return 0.0;
  if (std::isinf(y)) return kInf;
  if (kind_ == Kind::Power) return std::pow(y / c_, 1.0 / p_);
  const Table& T = *table_;
  if (y < T.cum[0]) return T.t[0] * std::pow(y / T.cum[0], 1.0 / (T.a_head + 1.0));
  const std::size_t i = Table::locate(T.cum, y);
  const double a = T.exponent_at(i);
  const double s = std::log1p((y - T.cum[i]) * (a + 1.0) / (T.phi[i] * T.t[i])) / (a + 1.0);
  return T.t[i] * std::exp(s);
}

double NFunction::density_inverse(double y) const {
  if (!(y > 0.0)) return 0.0;
  if (std::isinf(y)) return kInf;
  if (kind_ == Kind::Power) return std::pow(y / (c_ * p_), 1.0 / (p_ - 1.0));
  const Table& T = *table_;
  if (y < T.phi[0]) return T.t[0] * std::pow(y / T.phi[0], 1.0 / T.a_head);
  const std::size_t i = Table::locate(T.phi, y);
  return T.t[i] * std::pow(y / T.phi[i], 1.0 / T.exponent_at(i));
}

NFunction NFunction::complementary() const {
  if (kind_ == Kind::Power) {
    const double q = p_ / (p_ - 1.0);
    return power(q, std::pow(c_ * p_, -1.0 / (p_ - 1.0)) / q);
  }
  const Table& T = *table_;
  for (std::size_t i = 0; i + 1 < T.phi.size(); ++i)
    if (!(T.phi[i + 1] > T.phi[i]))
      throw DegenerateInput("density has a flat run near t = " + std::to_string(T.t[i]) +
                            "; its inverse is not a function");
  return sampled(T.phi, T.t);
}

NFunction NFunction::normalized() const {
  const double at1 = value(1.0);
  if (kind_ == Kind::Power) return power(p_, c_ / at1);
  std::vector<double> phi = table_->phi;
  for (double& v : phi) v /= at1;
  return sampled(table_->t, std::move(phi));
}

std::span<const double> NFunction::knots_t() const {
  if (!table_) return {};
  return table_->t;
}

std::span<const double> NFunction::knots_phi() const {
  if (!table_) return {};
  return table_->phi;
}

std::string NFunction::describe() const {
  char buf[96];
  if (kind_ == Kind::Power) {
    if (c_ == 1.0)
      std::snprintf(buf, sizeof buf, "power:p=%.12g", p_);
    else
      std::snprintf(buf, sizeof buf, "power:p=%.12g,c=%.12g", p_, c_);
  } else {
    std::snprintf(buf, sizeof buf, "sampled:knots=%zu", table_->t.size());
  }
  return buf;
}

YoungReport young_check(const ComplementaryPair& pair, std::span<const double> s,
                        std::span<const double> t) {
  YoungReport r;
  for (double a : s) {
    const double fa = pair.phi(a);
    for (double b : t) {
      const double gb = pair.psi(b);
      const double scale = std::max({fa, gb, 1.0});
      if (std::isinf(scale)) {
        ++r.pairs;
        continue;
      }
      r.max_violation = std::max(r.max_violation, (a * b - fa - gb) / scale);
      ++r.pairs;
    }
    const double d = pair.phi.density(a);
    const double sd = a * d;
    if (std::isfinite(sd) && sd > 0.0) {
      const double defect = std::abs(sd - fa - pair.psi(d)) / sd;
      r.max_equality_defect = std::max(r.max_equality_defect, defect);
    }
  }
  return r;
}

Delta2Report check_delta2(const NFunction& phi, std::span<const double> t_grid) {
  if (t_grid.size() < 2 || !(t_grid.front() > 0.0) ||
      std::log10(t_grid.back() / t_grid.front()) < 8.0 - 1e-9)
    throw DomainError("check_delta2: the grid must span at least 8 decades");
  Delta2Report r;
  int decade = 0;
  bool first = true;
  for (double t : t_grid) {
    const double ratio = phi(2.0 * t) / phi(t);
    if (!std::isfinite(ratio)) r.finite = false;
    const int d = static_cast<int>(std::floor(std::log10(t) + 1e-12));
    if (first || d != decade) {
      r.decade_sup.push_back(ratio);
      decade = d;
      first = false;
    } else if (!(ratio <= r.decade_sup.back())) {
      r.decade_sup.back() = ratio;
    }
    if (!(ratio <= r.sup_ratio)) r.sup_ratio = ratio;
  }
  const std::size_t n = r.decade_sup.size();
  const std::size_t k0 = n >= 3 ? n - 3 : 0;
  double lo = kInf, hi = 0.0;
  for (std::size_t k = k0; k < n; ++k) {
    lo = std::min(lo, r.decade_sup[k]);
    hi = std::max(hi, r.decade_sup[k]);
  }
  r.stable_top = std::isfinite(hi) && hi <= 1.1 * lo;
  r.pass = r.finite && r.stable_top;
  return r;
}

ConvexityReport check_convex_composition(const NFunction& phi1, const NFunction& phi2,
                                         std::span<const double> s_grid) {
  ConvexityReport r;
  std::vector<double> g;
  std::vector<double> s;
  for (double x : s_grid) {
    const double v = phi1(phi2.inverse(x));
    if (!std::isfinite(v)) break;
    s.push_back(x);
    g.push_back(v);
  }
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double m = (g[i + 1] - g[i]) / (s[i + 1] - s[i]);
    if (have_prev) {
      const double scale = std::max(std::abs(m), std::abs(prev));
      if (scale > 0.0) r.min_slope_step = std::min(r.min_slope_step, (m - prev) / scale);
    }
    prev = m;
    have_prev = true;
  }
  r.pass = r.min_slope_step >= -1e-10;
  return r;
}

std::vector<double> default_young_grid() { return log_points(1e-8, 1e8, 257); }

}  // namespace orlicz
