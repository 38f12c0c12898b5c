#include "orlicz/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orlicz/error.hpp"

namespace orlicz {

// ---------------------------------------------------------------- GridFunction

namespace {

void check_values(const std::vector<double>& values) {
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("grid function values must be finite and nonnegative");
}

}  // namespace

GridFunction::GridFunction(std::vector<double> edges, std::vector<double> values)
    : edges_(std::move(edges)), values_(std::move(values)) {
  if (edges_.size() < 2 || values_.size() + 1 != edges_.size())
    throw DomainError("grid function needs n + 1 edges for n values");
  widths_.resize(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(edges_[i] >= 0.0) || !(edges_[i + 1] > edges_[i]) || !std::isfinite(edges_[i + 1]))
      throw DomainError("grid edges must be nonnegative, finite and strictly increasing");
    widths_[i] = edges_[i + 1] - edges_[i];
  }
  check_values(values_);
}

GridFunction::GridFunction(std::vector<double> edges, std::vector<double> widths,
                           std::vector<double> values)
    : edges_(std::move(edges)), widths_(std::move(widths)), values_(std::move(values)) {
  if (edges_.size() < 2 || values_.size() + 1 != edges_.size() || widths_.size() != values_.size())
    throw DomainError("grid function needs n + 1 edges, n widths and n values");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!(edges_[i] >= 0.0) || !(edges_[i + 1] > edges_[i]) || !(widths_[i] > 0.0))
      throw DomainError("grid edges must be nonnegative and strictly increasing");
  check_values(values_);
}

GridFunction GridFunction::zero(std::vector<double> edges) {
  const std::size_t n = edges.size() < 2 ? 0 : edges.size() - 1;
  return GridFunction(std::move(edges), std::vector<double>(n, 0.0));
}

GridFunction GridFunction::constant(std::vector<double> edges, double c) {
  const std::size_t n = edges.size() < 2 ? 0 : edges.size() - 1;
  return GridFunction(std::move(edges), std::vector<double>(n, c));
}

std::size_t GridFunction::cell_of(double x) const {
  if (values_.empty() || !(x >= edges_.front()) || !(x < edges_.back())) return npos;
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

double GridFunction::operator()(double x) const {
  const std::size_t i = cell_of(x);
  return i == npos ? 0.0 : values_[i];
}

double GridFunction::integral() const {
  std::vector<double> terms(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) terms[i] = values_[i] * widths_[i];
  return order_free_sum(std::move(terms));
}

double GridFunction::integral_to(double x) const {
  if (values_.empty() || !(x > edges_.front())) return 0.0;
  CompensatedSum s;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (edges_[i + 1] <= x) {
      s.add(values_[i] * widths_[i]);
    } else {
      s.add(values_[i] * (x - edges_[i]));
      break;
    }
  }
  return s.value();
}

double GridFunction::support_measure() const {
  std::vector<double> w;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0.0) w.push_back(widths_[i]);
  return order_free_sum(std::move(w));
}

double GridFunction::max_value() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, v);
  return m;
}

bool GridFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

GridFunction GridFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return GridFunction(edges_, widths_, std::move(v));
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
  return GridFunction(edges_, widths_, std::move(values));
}

// ------------------------------------------------------------------ operations

std::vector<double> default_edges(const Window& w, std::size_t cells) {
  return log_edges(w.lo, w.hi, cells);
}

double distribution(const GridFunction& f, double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("distribution: lambda must be >= 0");
  std::vector<double> w;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.value(i) > lambda) w.push_back(f.width(i));
  return order_free_sum(std::move(w));
}

double DistributionFunction::operator()(double lambda) const {
  // thresholds descend; the first one <= lambda gives mu(lambda).
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), lambda,
                             [](double t, double l) { return t > l; });
  if (it == thresholds.end()) return total;
  return measures[static_cast<std::size_t>(it - thresholds.begin())];
}

DistributionFunction distribution_function(const GridFunction& f) {
  DistributionFunction d;
  std::vector<double> vals(f.values().begin(), f.values().end());
  std::sort(vals.begin(), vals.end(), std::greater<>());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  d.thresholds = vals;
  d.measures.reserve(vals.size());
  for (double t : vals) d.measures.push_back(distribution(f, t));
  std::vector<double> all(f.widths().begin(), f.widths().end());
  d.total = order_free_sum(std::move(all));
  return d;
}

GridFunction rearrange(const GridFunction& f) {
  const std::size_t n = f.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return f.value(a) > f.value(b); });
  std::vector<double> edges(n + 1), widths(n), values(n);
  edges[0] = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    widths[k] = f.width(idx[k]);
    values[k] = f.value(idx[k]);
    edges[k + 1] = edges[k] + widths[k];
  }
  return GridFunction(std::move(edges), std::move(widths), std::move(values));
}

double maximal_of_rearranged(const GridFunction& fstar, double t) {
  if (!(t > 0.0)) throw DomainError("maximal: t must be > 0");
  return fstar.integral_to(t) / t;
}

double maximal(const GridFunction& f, double t) {
  if (!(t > 0.0)) throw DomainError("maximal: t must be > 0");
  return maximal_of_rearranged(rearrange(f), t);
}

std::vector<double> maximal(const GridFunction& f, std::span<const double> ts) {
  const GridFunction fs = rearrange(f);
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(maximal_of_rearranged(fs, t));
  return out;
}

GridFunction dilate(const GridFunction& f, double t) {
  if (!(t > 0.0)) throw DomainError("dilate: t must be > 0");
  std::vector<double> e(f.edges().begin(), f.edges().end());
  std::vector<double> w(f.widths().begin(), f.widths().end());
  for (double& x : e) x /= t;
  for (double& x : w) x /= t;
  return GridFunction(std::move(e), std::move(w),
                      std::vector<double>(f.values().begin(), f.values().end()));
}

GridFunction restrict_to(const GridFunction& f, const Window& win) {
  std::vector<double> e, v;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double a = std::max(f.edge(i), win.lo);
    const double b = std::min(f.edge(i + 1), win.hi);
    if (!(b > a)) continue;
    if (e.empty()) e.push_back(a);
    v.push_back(f.value(i));
    e.push_back(b);
  }
  if (v.empty()) return GridFunction::zero({win.lo, win.hi});
  return GridFunction(std::move(e), std::move(v));
}

Dilation dilate_clipped(const GridFunction& f, double t, const Window& w) {
  const GridFunction d = dilate(f, t);
  Dilation out{restrict_to(d, w), 0.0};
  out.clipped_mass = std::max(0.0, d.integral() - out.f.integral());
  return out;
}

GridFunction resample(const GridFunction& f, std::span<const double> edges) {
  if (edges.size() < 2) throw DomainError("resample needs at least one target cell");
  const std::size_t m = edges.size() - 1;
  std::vector<double> v(m, 0.0);
  std::size_t j = 0;
  const std::size_t n = f.size();
  for (std::size_t k = 0; k < m; ++k) {
    const double a = edges[k], b = edges[k + 1];
    while (j < n && f.edge(j + 1) <= a) ++j;
    CompensatedSum s;
    for (std::size_t i = j; i < n && f.edge(i) < b; ++i) {
      const double lo = std::max(a, f.edge(i)), hi = std::min(b, f.edge(i + 1));
      if (hi > lo && f.value(i) != 0.0) s.add(f.value(i) * (hi - lo));
    }
    v[k] = s.value() / (b - a);
  }
  return GridFunction(std::vector<double>(edges.begin(), edges.end()), std::move(v));
}

// ---------------------------------------------------------------------- Weight

Weight::Weight(Profile u, std::vector<double> edges)
    : profile_(std::move(u)), grid_(profile_.sample(edges)) {
  cumulative_.resize(edges.size());
  cumulative_[0] = profile_.integral(0.0, edges[0]);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    cumulative_[i + 1] = cumulative_[i] + grid_.value(i) * grid_.width(i);
}

Weight Weight::from_grid(const GridFunction& g, std::string name) {
  std::vector<double> e(g.edges().begin(), g.edges().end());
  return Weight(Profile(g, std::move(name)), std::move(e));
}

double Weight::cumulative(double x) const {
  if (!(x > 0.0)) return 0.0;
  return profile_.integral(0.0, x);
}

DivergenceReport Weight::divergence() const {
  DivergenceReport r;
  for (int k = 2; k <= 6; ++k) {
    r.right_masses.push_back(mass(1e-6, std::pow(10.0, k)));
    r.left_masses.push_back(mass(std::pow(10.0, -k), 1e6));
  }
  auto grows = [](const std::vector<double>& m) {
    for (std::size_t i = 0; i + 1 < m.size(); ++i)
      if (!(m[i] > 0.0) || !(m[i + 1] >= 2.0 * m[i])) return false;
    return true;
  };
  r.right = grows(r.right_masses);
  r.left = grows(r.left_masses);
  return r;
}

bool Weight::divergent() const {
  if (override_) return *override_;
  if (std::isinf(total())) return true;
  return divergence().divergent();
}

Weight Weight::with_divergence(std::optional<bool> flag) const {
  Weight w(*this);
  w.override_ = flag;
  return w;
}

Weight Weight::reciprocal() const {
  const auto e = grid_.edges();
  if (!(e.front() > 0.0)) throw DomainError("reciprocal weight needs a grid away from 0");
  std::vector<double> r(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) r[k] = 1.0 / e[e.size() - 1 - k];
  return Weight(profile_.reciprocal(), std::move(r));
}

}  // namespace orlicz
