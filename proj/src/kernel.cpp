#include "orlicz/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "orlicz/error.hpp"

namespace orlicz {

// --------------------------------------------------------------- KernelFamily

namespace {

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

KernelFamily KernelFamily::hardy_averaging() {
  KernelFamily k;
  k.tag_ = KernelTag::HardyAveraging;
  k.flags_.nonincreasing_y = true;
  k.flags_.homogeneous = true;
  k.fn_ = [](double x, double y) { return (y > 0.0 && y < x) ? 1.0 / x : 0.0; };
  k.name_ = "hardy-averaging";
  return k;
}

KernelFamily KernelFamily::hardy_indicator() {
  KernelFamily k;
  k.tag_ = KernelTag::HardyIndicator;
  k.flags_.nonincreasing_y = true;
  k.fn_ = [](double x, double y) { return (y > 0.0 && y < x) ? 1.0 : 0.0; };
  k.name_ = "hardy-indicator";
  return k;
}

KernelFamily KernelFamily::sum(Profile prof) {
  KernelFamily k;
  k.tag_ = KernelTag::Sum;
  const bool mono = prof.nonincreasing();
  k.flags_.nonincreasing_x = mono;
  k.flags_.nonincreasing_y = mono;
  k.flags_.sum = true;
  k.profile_ = std::make_shared<const Profile>(std::move(prof));
  auto p = k.profile_;
  k.fn_ = [p](double x, double y) { return p->value(x + y); };
  k.name_ = "sum:k=" + p->name();
  return k;
}

KernelFamily KernelFamily::radial(Profile prof) {
  KernelFamily k;
  k.tag_ = KernelTag::Radial;
  const bool mono = prof.nonincreasing();
  k.flags_.nonincreasing_x = mono;
  k.flags_.nonincreasing_y = mono;
  k.flags_.radial = true;
  k.profile_ = std::make_shared<const Profile>(std::move(prof));
  auto p = k.profile_;
  k.fn_ = [p](double x, double y) { return p->value(std::hypot(x, y)); };
  k.name_ = "radial:k=" + p->name();
  return k;
}

KernelFamily KernelFamily::power_radial(double lambda) {
  if (!(lambda > 0.0)) throw DomainError("power-radial kernel needs lambda > 0");
  KernelFamily k;
  k.tag_ = KernelTag::PowerRadial;
  k.flags_.nonincreasing_x = true;
  k.flags_.nonincreasing_y = true;
  k.flags_.radial = true;
  k.flags_.homogeneous = lambda == 1.0;
  k.lambda_ = lambda;
  k.profile_ = std::make_shared<const Profile>(
      PowerLaw{1.0, -lambda, 0.0, kInf}, "power:a=" + num(lambda));
  k.fn_ = [lambda](double x, double y) { return std::pow(x * x + y * y, -0.5 * lambda); };
  k.name_ = "power-radial:lambda=" + num(lambda);
  return k;
}

KernelFamily KernelFamily::hilbert() {
  KernelFamily k;
  k.tag_ = KernelTag::Hilbert;
  k.flags_.nonincreasing_x = true;
  k.flags_.nonincreasing_y = true;
  k.flags_.homogeneous = true;
  k.flags_.sum = true;
  k.profile_ = std::make_shared<const Profile>(PowerLaw{1.0, -1.0, 0.0, kInf}, "power:a=1");
  k.fn_ = [](double x, double y) { return 1.0 / (x + y); };
  k.name_ = "hilbert";
  return k;
}

KernelFamily KernelFamily::homogeneous(Profile prof) {
  KernelFamily k;
  k.tag_ = KernelTag::Homogeneous;
  k.flags_.homogeneous = true;
  k.flags_.nonincreasing_y = prof.nonincreasing();
  k.profile_ = std::make_shared<const Profile>(std::move(prof));
  auto p = k.profile_;
  k.fn_ = [p](double x, double y) { return x > 0.0 ? p->value(y / x) / x : 0.0; };
  k.name_ = "homogeneous:profile=" + p->name();
  return k;
}

KernelFamily KernelFamily::box() {
  KernelFamily k;
  k.tag_ = KernelTag::Box;
  k.flags_.nonincreasing_x = true;
  k.flags_.nonincreasing_y = true;
  k.fn_ = [](double x, double y) {
    return (x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) ? 1.0 : 0.0;
  };
  k.name_ = "box";
  return k;
}

KernelFamily KernelFamily::custom(std::function<double(double, double)> f, std::string name,
                                  KernelFlags flags) {
  KernelFamily k;
  k.tag_ = KernelTag::Custom;
  k.flags_ = flags;
  k.fn_ = std::move(f);
  k.name_ = std::move(name);
  return k;
}

double KernelFamily::operator()(double x, double y) const { return fn_(x, y); }

bool KernelFamily::symmetric() const {
  switch (tag_) {
    case KernelTag::Sum:
    case KernelTag::Radial:
    case KernelTag::PowerRadial:
    case KernelTag::Hilbert:
    case KernelTag::Box:
      return true;
    default:
      return false;
  }
}

double KernelFamily::cell_value(double x, double y0, double y1) const {
  const double w = y1 - y0;
  switch (tag_) {
    case KernelTag::HardyIndicator:
      return clamp01((x - y0) / w);
    case KernelTag::HardyAveraging:
      return x > 0.0 ? clamp01((x - y0) / w) / x : 0.0;
    case KernelTag::Homogeneous:
      return x > 0.0 ? profile_->integral(y0 / x, y1 / x) / w : 0.0;
    case KernelTag::Box:
      return (x > 0.0 && x < 1.0) ? clamp01((1.0 - y0) / w) : 0.0;
    default:
      return fn_(x, 0.5 * (y0 + y1));
  }
}

std::vector<double> KernelFamily::y_breaks(double x) const {
  std::vector<double> b;
  switch (tag_) {
    case KernelTag::HardyIndicator:
    case KernelTag::HardyAveraging:
      b.push_back(x);
      break;
    case KernelTag::Homogeneous:
      for (double t : profile_->breakpoints()) b.push_back(t * x);
      break;
    case KernelTag::Box:
      b.push_back(1.0);
      break;
    case KernelTag::Sum:
      for (double t : profile_->breakpoints())
        if (t > x) b.push_back(t - x);
      break;
    case KernelTag::Radial:
      for (double t : profile_->breakpoints())
        if (t > x) b.push_back(std::sqrt(t * t - x * x));
      break;
    default:
      break;
  }
  return b;
}

double KernelFamily::cell_integral(double x, double y0, double y1) const {
  std::vector<double> pts{y0};
  for (double b : y_breaks(x))
    if (b > y0 && b < y1) pts.push_back(b);
  pts.push_back(y1);
  std::sort(pts.begin(), pts.end());
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double half = 0.5 * (pts[i + 1] - pts[i]);
    const double mid = 0.5 * (pts[i + 1] + pts[i]);
    for (std::size_t k = 0; k < detail::kGaussNodes.size(); ++k)
      s.add(detail::kGaussWeights[k] * half * fn_(x, mid + half * detail::kGaussNodes[k]));
  }
  return s.value();
}

// ----------------------------------------------------------------- KernelGrid

namespace {

std::vector<double> diffs(const std::vector<double>& e) {
  std::vector<double> w(e.size() - 1);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) w[i] = e[i + 1] - e[i];
  return w;
}

std::vector<double> layout_from_zero(std::span<const double> widths) {
  std::vector<double> e(widths.size() + 1, 0.0);
  for (std::size_t i = 0; i < widths.size(); ++i) e[i + 1] = e[i] + widths[i];
  return e;
}

bool same_edges(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

KernelGrid::KernelGrid(std::vector<double> x_edges, std::vector<double> x_widths,
                       std::vector<double> y_edges, std::vector<double> y_widths,
                       std::vector<double> values, KernelFlags flags,
                       std::optional<KernelFamily> family)
    : xe_(std::move(x_edges)), xw_(std::move(x_widths)), ye_(std::move(y_edges)),
      yw_(std::move(y_widths)), v_(std::move(values)), flags_(flags), family_(std::move(family)) {
  if (xe_.size() < 2 || ye_.size() < 2 || xw_.size() + 1 != xe_.size() ||
      yw_.size() + 1 != ye_.size() || v_.size() != xw_.size() * yw_.size())
    throw DomainError("kernel grid dimensions do not match");
  for (double v : v_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DomainError("kernel samples must be finite and nonnegative");
}

KernelGrid KernelGrid::sample(const KernelFamily& k, const std::vector<double>& x_edges,
                              const std::vector<double>& y_edges) {
  const std::size_t nx = x_edges.size() - 1, ny = y_edges.size() - 1;
  std::vector<double> v(nx * ny);
  parallel_for(nx, [&](std::size_t i) {
    const double x = 0.5 * (x_edges[i] + x_edges[i + 1]);
    for (std::size_t j = 0; j < ny; ++j) v[i * ny + j] = k.cell_value(x, y_edges[j], y_edges[j + 1]);
  });
  for (double s : v)
    if (!std::isfinite(s)) throw DomainError("kernel " + k.name() + " is not finite at a cell midpoint");
  return KernelGrid(x_edges, diffs(x_edges), y_edges, diffs(y_edges), std::move(v), k.flags(), k);
}

KernelGrid KernelGrid::sample(const KernelFamily& k, const Window& w, std::size_t cells) {
  const std::vector<double> e = log_edges(w.lo, w.hi, cells);
  return sample(k, e, e);
}

FlagCheck verify_flags(const KernelGrid& k, std::uint64_t seed) {
  FlagCheck r;
  std::mt19937_64 rng(seed);
  const KernelFlags& f = k.flags();
  auto pick = [&](std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)));
  };
  for (int trial = 0; trial < 32; ++trial) {
    if (f.nonincreasing_y) {
      const std::size_t i = pick(k.nx());
      for (std::size_t j = 0; j + 1 < k.ny(); ++j)
        if (k.at(i, j + 1) > k.at(i, j) * (1.0 + 1e-12)) ++r.monotone_violations;
    }
    if (f.nonincreasing_x) {
      const std::size_t j = pick(k.ny());
      for (std::size_t i = 0; i + 1 < k.nx(); ++i)
        if (k.at(i + 1, j) > k.at(i, j) * (1.0 + 1e-12)) ++r.monotone_violations;
    }
  }
  if (r.monotone_violations > 0) {
    r.ok = false;
    r.detail = std::to_string(r.monotone_violations) + " monotonicity violations";
  }
  if (f.homogeneous) {
    const KernelFamily* fam = k.family();
    if (!fam) {
      r.ok = false;
      r.detail += (r.detail.empty() ? "" : "; ") + std::string("homogeneity needs the exact callable");
    } else {
      for (int trial = 0; trial < 100; ++trial) {
        const double l = log_uniform(rng, 1e-2, 1e2);
        const double x = log_uniform(rng, 1e-3, 1e3);
        const double y = log_uniform(rng, 1e-3, 1e3);
        const double base = (*fam)(x, y);
        const double scaled = l * (*fam)(l * x, l * y);
        const double d = base > 0.0 ? std::abs(scaled - base) / base : (scaled == 0.0 ? 0.0 : kInf);
        r.homogeneity_defect = std::max(r.homogeneity_defect, d);
      }
      if (!(r.homogeneity_defect <= 1e-6)) {
        r.ok = false;
        r.detail += (r.detail.empty() ? "" : "; ") + std::string("not homogeneous of degree -1");
      }
    }
  }
  return r;
}

double doubling_constant(const Profile& k, const Window& w) {
  double c = 0.0;
  for (double t : log_points(w.lo, w.hi, 1025)) {
    const double d = k.value(t);
    if (d > 0.0) c = std::max(c, k.value(0.5 * t) / d);
  }
  return c;
}

// ------------------------------------------------------------------ operators

GridFunction apply(const KernelGrid& k, const GridFunction& f) {
  const GridFunction fy = same_edges(f.edges(), k.y_edges()) ? f : resample(f, k.y_edges());
  const std::size_t nx = k.nx(), ny = k.ny();
  std::vector<double> fw(ny);
  for (std::size_t j = 0; j < ny; ++j) fw[j] = fy.value(j) * k.y_widths()[j];
  std::vector<double> out(nx, 0.0);
  parallel_for(nx, [&](std::size_t i) {
    const auto r = k.row(i);
    CompensatedSum s;
    for (std::size_t j = 0; j < ny; ++j)
      if (fw[j] != 0.0 && r[j] != 0.0) s.add(r[j] * fw[j]);
    out[i] = std::max(0.0, s.value());
  });
  return GridFunction(std::vector<double>(k.x_edges().begin(), k.x_edges().end()),
                      std::vector<double>(k.x_widths().begin(), k.x_widths().end()), std::move(out));
}

GridFunction apply_adjoint(const KernelGrid& k, const GridFunction& g) {
  const GridFunction gx = same_edges(g.edges(), k.x_edges()) ? g : resample(g, k.x_edges());
  const std::size_t nx = k.nx(), ny = k.ny();
  std::vector<double> gw(nx);
  for (std::size_t i = 0; i < nx; ++i) gw[i] = gx.value(i) * k.x_widths()[i];
  std::vector<double> out(ny, 0.0);
  parallel_for(ny, [&](std::size_t j) {
    CompensatedSum s;
    for (std::size_t i = 0; i < nx; ++i) {
      const double kv = k.at(i, j);
      if (gw[i] != 0.0 && kv != 0.0) s.add(kv * gw[i]);
    }
    out[j] = std::max(0.0, s.value());
  });
  return GridFunction(std::vector<double>(k.y_edges().begin(), k.y_edges().end()),
                      std::vector<double>(k.y_widths().begin(), k.y_widths().end()), std::move(out));
}

double apply_at(const KernelFamily& k, const GridFunction& f, double x, CellRule rule) {
  CompensatedSum s;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double v = f.value(j);
    if (v == 0.0) continue;
    const double y0 = f.edge(j), y1 = f.edge(j) + f.width(j);
    if (rule == CellRule::Midpoint)
      s.add(v * f.width(j) * k.cell_value(x, y0, y1));
    else
      s.add(v * k.cell_integral(x, y0, y1));
  }
  return s.value();
}

std::vector<GridFunction> rearrange_rows(const KernelGrid& k) {
  std::vector<GridFunction> rows;
  rows.reserve(k.nx());
  const std::vector<double> ye(k.y_edges().begin(), k.y_edges().end());
  const std::vector<double> yw(k.y_widths().begin(), k.y_widths().end());
  for (std::size_t i = 0; i < k.nx(); ++i) {
    const auto r = k.row(i);
    rows.push_back(rearrange(GridFunction(ye, yw, std::vector<double>(r.begin(), r.end()))));
  }
  return rows;
}

namespace {

// Sorts (value, width) pairs by value, descending and stable, and lays the
// result out on the partition of [0, sum) given by `target` widths.  When the
// sorted widths do not line up with the target, each target cell takes the
// largest sorted value it meets: the result dominates the exact rearrangement
// and stays monotone without any arithmetic on the values.
void rearrange_onto(std::span<const double> vals, std::span<const double> widths,
                    std::span<const double> target, std::span<const double> target_edges,
                    std::vector<std::size_t>& idx, double* out) {
  const std::size_t n = vals.size();
  idx.resize(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
  bool aligned = true;
  for (std::size_t k = 0; k < n && aligned; ++k) aligned = widths[idx[k]] == target[k];
  if (aligned) {
    for (std::size_t k = 0; k < n; ++k) out[k] = vals[idx[k]];
    return;
  }
  std::size_t m = 0;
  double r1 = widths[idx[0]];  // right end of sorted cell m
  for (std::size_t k = 0; k < n; ++k) {
    // Sorted cells ending at the target edge, up to rounding, do not reach into it.
    const double s0 = target_edges[k] + 1e-12 * target[k];
    while (m < n && r1 <= s0) {
      ++m;
      if (m < n) r1 += widths[idx[m]];
    }
    out[k] = m < n ? vals[idx[m]] : 0.0;
  }
}

}  // namespace

KernelGrid iterated_rearrangement(const KernelGrid& k) {
  const std::size_t nx = k.nx(), ny = k.ny();
  const std::vector<double> te = layout_from_zero(k.x_widths());
  const std::vector<double> se = layout_from_zero(k.y_widths());
  std::vector<double> pass1(nx * ny);
  parallel_for(nx, [&](std::size_t i) {
    std::vector<std::size_t> idx;
    rearrange_onto(k.row(i), k.y_widths(), k.y_widths(), se, idx, pass1.data() + i * ny);
  });
  std::vector<double> out(nx * ny);
  parallel_for(ny, [&](std::size_t j) {
    std::vector<double> col(nx), res(nx);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < nx; ++i) col[i] = pass1[i * ny + j];
    rearrange_onto(col, k.x_widths(), k.x_widths(), te, idx, res.data());
    for (std::size_t i = 0; i < nx; ++i) out[i * ny + j] = res[i];
  });
  KernelFlags flags;
  flags.nonincreasing_x = true;
  flags.nonincreasing_y = true;
  return KernelGrid(te, std::vector<double>(k.x_widths().begin(), k.x_widths().end()), se,
                    std::vector<double>(k.y_widths().begin(), k.y_widths().end()), std::move(out), flags);
}

// ------------------------------------------------------------------- M kernel

MEvaluator::MEvaluator(const KernelGrid& l)
    : s_(l.y_edges().begin(), l.y_edges().end()),
      vals_(l.values().begin(), l.values().end()),
      ny_(l.ny()) {
  const std::size_t nx = l.nx();
  tau_.resize(nx);
  last_.resize(nx);
  prefix_.resize(nx * (ny_ + 1));
  for (std::size_t i = 0; i < nx; ++i) {
    tau_[i] = l.x_mid(i);
    CompensatedSum s;
    double* p = prefix_.data() + i * (ny_ + 1);
    p[0] = 0.0;
    const auto r = l.row(i);
    for (std::size_t j = 0; j < ny_; ++j) {
      s.add(r[j] * l.y_widths()[j]);
      p[j + 1] = s.value();
    }
    last_[i] = r[ny_ - 1];
  }
}

double MEvaluator::row_integral(std::size_t i, double z) const {
  if (!(z > s_.front())) return 0.0;
  const double* p = prefix_.data() + i * (ny_ + 1);
  if (z >= s_.back()) return p[ny_] + last_[i] * (z - s_.back());
  auto it = std::upper_bound(s_.begin(), s_.end(), z);
  const std::size_t j = static_cast<std::size_t>(it - s_.begin()) - 1;
  return p[j] + vals_[i * ny_ + j] * (z - s_[j]);
}

double MEvaluator::operator()(double outer, double inner) const {
  if (!(outer > 0.0) || !(inner > 0.0)) return 0.0;
  const double t = 1.0 / outer, z = 1.0 / inner;
  if (t <= tau_.front()) return row_integral(0, z);
  if (t >= tau_.back()) return row_integral(tau_.size() - 1, z);
  auto it = std::upper_bound(tau_.begin(), tau_.end(), t);
  const std::size_t i = static_cast<std::size_t>(it - tau_.begin()) - 1;
  const double th = std::log(t / tau_[i]) / std::log(tau_[i + 1] / tau_[i]);
  return (1.0 - th) * row_integral(i, z) + th * row_integral(i + 1, z);
}

bool MEvaluator::extrapolated(double outer, double inner) const {
  const double t = 1.0 / outer, z = 1.0 / inner;
  return t < tau_.front() || t > tau_.back() || z > s_.back();
}

MKernel m_kernel(const KernelGrid& l, const Window& w, std::size_t cells) {
  const MEvaluator ev(l);
  const std::vector<double> e = log_edges(w.lo, w.hi, cells);
  const std::size_t n = cells;
  std::vector<double> v(n * n);
  std::vector<std::size_t> extra(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const double a = 0.5 * (e[i] + e[i + 1]);
    for (std::size_t j = 0; j < n; ++j) {
      const double b = 0.5 * (e[j] + e[j + 1]);
      v[i * n + j] = ev(a, b);
      if (ev.extrapolated(a, b)) ++extra[i];
    }
  });
  KernelFlags flags;
  flags.nonincreasing_y = true;
  MKernel out{KernelGrid(e, diffs(e), e, diffs(e), std::move(v), flags), 0.0};
  out.extrapolated_fraction =
      static_cast<double>(std::accumulate(extra.begin(), extra.end(), std::size_t{0})) /
      static_cast<double>(n * n);
  return out;
}

double sum_kernel_m(const Profile& k, double outer, double inner) {
  const double a = 1.0 / outer;
  return k.integral(a, a + 1.0 / inner);
}

GridFunction h_operator(const KernelGrid& m, const GridFunction& g) {
  const GridFunction gy = same_edges(g.edges(), m.y_edges()) ? g : resample(g, m.y_edges());
  const std::size_t nx = m.nx(), ny = m.ny();
  std::vector<double> out(nx, 0.0);
  parallel_for(nx, [&](std::size_t i) {
    const double y = m.x_mid(i);
    CompensatedSum s;
    for (std::size_t j = 0; j < ny; ++j) {
      const double e0 = m.y_edges()[j];
      if (e0 >= y) break;
      const double len = std::min(m.y_widths()[j], y - e0);
      const double gv = gy.value(j);
      if (gv != 0.0) s.add(m.at(i, j) * gv * len);
    }
    out[i] = std::max(0.0, s.value());
  });
  return GridFunction(std::vector<double>(m.x_edges().begin(), m.x_edges().end()),
                      std::vector<double>(m.x_widths().begin(), m.x_widths().end()), std::move(out));
}

GridFunction s_operator(const KernelGrid& k, const GridFunction& g) {
  const GridFunction t = apply_adjoint(k, g);
  std::vector<double> out(t.size());
  CompensatedSum s;
  for (std::size_t j = 0; j < t.size(); ++j) {
    CompensatedSum partial = s;
    partial.add(t.value(j) * (t.mid(j) - t.edge(j)));
    out[j] = partial.value();
    s.add(t.value(j) * t.width(j));
  }
  return t.with_values(std::move(out));
}

GridFunction hardy_average(const GridFunction& f) {
  std::vector<double> out(f.size());
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.mid(i);
    CompensatedSum partial = s;
    partial.add(f.value(i) * (x - f.edge(i)));
    out[i] = partial.value() / x;
    s.add(f.value(i) * f.width(i));
  }
  return f.with_values(std::move(out));
}

std::pair<KernelGrid, KernelGrid> split_signed(const std::vector<double>& x_edges,
                                               const std::vector<double>& y_edges,
                                               const std::vector<double>& values) {
  std::vector<double> pos(values.size()), neg(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw DomainError("signed kernel samples must be finite");
    pos[i] = values[i] > 0.0 ? values[i] : 0.0;
    neg[i] = values[i] < 0.0 ? -values[i] : 0.0;
  }
  return {KernelGrid(x_edges, diffs(x_edges), y_edges, diffs(y_edges), std::move(pos)),
          KernelGrid(x_edges, diffs(x_edges), y_edges, diffs(y_edges), std::move(neg))};
}

}  // namespace orlicz
