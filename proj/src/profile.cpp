#include "orlicz/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

double power_integral(double a, double b, double e) {
  if (!(b > a)) return 0.0;
  const double e1 = e + 1.0;
  if (a <= 0.0) {
    if (!(e1 > 0.0)) return kInf;
    if (std::isinf(b)) return kInf;
    return std::exp(e1 * std::log(b)) / e1;
  }
  if (std::isinf(b)) {
    if (!(e1 < 0.0)) return kInf;
    return std::exp(e1 * std::log(a)) / -e1;
  }
  const double L = std::log(b / a);
  if (e1 == 0.0) return L;
  return std::exp(e1 * std::log(a)) * std::expm1(e1 * L) / e1;
}

Profile::Profile(PowerLaw p, std::string name) : v_(p), name_(std::move(name)) {
  if (!(p.coef >= 0.0) || !std::isfinite(p.coef) || !std::isfinite(p.exponent) ||
      !(p.lo >= 0.0) || !(p.hi > p.lo))
    throw DomainError("invalid power-law profile " + name_);
}

Profile::Profile(Exponential e, std::string name) : v_(e), name_(std::move(name)) {
  if (!(e.coef >= 0.0) || !std::isfinite(e.coef) || !(e.rate >= 0.0) || !std::isfinite(e.rate))
    throw DomainError("invalid exponential profile " + name_);
}

Profile::Profile(GridFunction f, std::string name) : v_(std::move(f)), name_(std::move(name)) {
  if (std::get<GridFunction>(v_).empty()) throw DomainError("empty sampled profile " + name_);
}

Profile::Profile(ReciprocalOf r, std::string name) : v_(std::move(r)), name_(std::move(name)) {
  if (!std::get<ReciprocalOf>(v_).base) throw DomainError("reciprocal of nothing");
}

Profile Profile::indicator(double a, double b) {
  if (!(a >= 0.0) || !(b > a))
    throw DomainError("indicator needs 0 <= a < b");
  return Profile(PowerLaw{1.0, 0.0, a, b}, fmt("indicator:a=%.12g,b=%.12g", a, b));
}

Profile Profile::constant(double c) {
  return Profile(Exponential{c, 0.0}, c == 1.0 ? "one" : fmt("const:c=%.12g", c));
}

Profile Profile::power_weight(double alpha) {
  if (!(alpha > -1.0)) throw DomainError("power weight needs alpha > -1");
  return Profile(PowerLaw{alpha + 1.0, alpha, 0.0, kInf}, fmt("power_weight:alpha=%.12g", alpha));
}

double Profile::value(double y) const {
  if (!(y > 0.0)) return 0.0;
  return std::visit(
      [y](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          if (y < p.lo || y >= p.hi) return 0.0;
          return p.exponent == 0.0 ? p.coef : p.coef * std::pow(y, p.exponent);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return p.rate == 0.0 ? p.coef : p.coef * std::exp(-p.rate * y);
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          return p(y);
        } else {
          return p.base->value(1.0 / y) / (y * y);
        }
      },
      v_);
}

double Profile::moment(double a, double b, double r, double m) const {
  if (!(a >= 0.0) || !(b > a)) return 0.0;
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          const double a1 = std::max(a, p.lo), b1 = std::min(b, p.hi);
          if (!(b1 > a1) || p.coef == 0.0) return 0.0;
          return std::pow(p.coef, r) * power_integral(a1, b1, p.exponent * r + m);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          if (p.coef == 0.0) return 0.0;
          const double cr = std::pow(p.coef, r);
          const double k = p.rate * r;
          if (m == 0.0) {
            if (k == 0.0) return std::isinf(b) ? kInf : cr * (b - a);
            if (std::isinf(b)) return cr * std::exp(-k * a) / k;
            return cr * std::exp(-k * a) * -std::expm1(-k * (b - a)) / k;
          }
          if (k == 0.0) return cr * power_integral(a, b, m);
          QuadOptions opt;
          opt.window = Window{a > 0.0 ? a : std::min(1e-10, b * 1e-2),
                              std::isinf(b) ? std::max(60.0 / k, a * 10.0) : b};
          auto h = [&](double y) { return cr * std::exp(-k * y) * std::pow(y, m); };
          const QuadResult q = integrate(h, a, b, opt);
          if (q.head_divergent || q.tail_divergent) return kInf;
          return q.value;
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          CompensatedSum s;
          const std::size_t n = p.size();
          std::size_t i = 0;
          if (a > p.lo()) i = std::min(p.cell_of(a), n);
          for (; i < n; ++i) {
            const double e0 = p.edge(i), e1 = p.edge(i + 1);
            if (e0 >= b) break;
            const double v = p.value(i);
            if (v == 0.0) continue;
            const double lo = std::max(a, e0), hi = std::min(b, e1);
            if (hi > lo) s.add(std::pow(v, r) * power_integral(lo, hi, m));
          }
          return s.value();
        } else {
          const double lo = std::isinf(b) ? 0.0 : 1.0 / b;
          const double hi = a == 0.0 ? kInf : 1.0 / a;
          return p.base->moment(lo, hi, r, 2.0 * r - m - 2.0);
        }
      },
      v_);
}

std::vector<double> Profile::breakpoints() const {
  std::vector<double> out;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          if (p.lo > 0.0) out.push_back(p.lo);
          if (std::isfinite(p.hi)) out.push_back(p.hi);
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          for (double e : p.edges())
            if (e > 0.0) out.push_back(e);
        } else if constexpr (std::is_same_v<T, ReciprocalOf>) {
          for (double e : p.base->breakpoints()) out.push_back(1.0 / e);
          std::sort(out.begin(), out.end());
        }
      },
      v_);
  return out;
}

bool Profile::nonincreasing() const {
  return std::visit(
      [this](const auto& p) -> bool {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          return p.coef == 0.0 || (p.exponent <= 0.0 && p.lo == 0.0);
        } else if constexpr (std::is_same_v<T, Exponential>) {
          return true;
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          for (std::size_t i = 0; i + 1 < p.size(); ++i)
            if (p.value(i + 1) > p.value(i)) return false;
          return true;
        } else {
          double prev = kInf;
          for (double y : log_points(1e-8, 1e8, 1025)) {
            const double v = value(y);
            if (v > prev) return false;
            prev = v;
          }
          return true;
        }
      },
      v_);
}

Profile Profile::reciprocal() const {
  const std::string rname = "reciprocal(" + name_ + ")";
  return std::visit(
      [&](const auto& p) -> Profile {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PowerLaw>) {
          const double lo = std::isinf(p.hi) ? 0.0 : 1.0 / p.hi;
          const double hi = p.lo == 0.0 ? kInf : 1.0 / p.lo;
          return Profile(PowerLaw{p.coef, -p.exponent - 2.0, lo, hi}, rname);
        } else if constexpr (std::is_same_v<T, GridFunction>) {
          if (!(p.lo() > 0.0))
            throw DomainError("reciprocal of a sampled profile touching 0");
          const std::size_t n = p.size();
          std::vector<double> e(n + 1), v(n);
          for (std::size_t k = 0; k <= n; ++k) e[k] = 1.0 / p.edge(n - k);
          for (std::size_t k = 0; k < n; ++k) {
            const std::size_t i = n - 1 - k;
            v[k] = p.value(i) * p.width(i) / (e[k + 1] - e[k]);
          }
          return Profile(GridFunction(std::move(e), std::move(v)), rname);
        } else if constexpr (std::is_same_v<T, ReciprocalOf>) {
          return *p.base;
        } else {
          return Profile(ReciprocalOf{std::make_shared<const Profile>(*this)}, rname);
        }
      },
      v_);
}

GridFunction Profile::sample(const std::vector<double>& edges) const {
  if (edges.size() < 2) throw DomainError("sample needs at least one cell");
  std::vector<double> v(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double m = integral(edges[i], edges[i + 1]);
    if (!std::isfinite(m))
      throw DomainError("profile " + name_ + " is not integrable on a grid cell");
    v[i] = m / (edges[i + 1] - edges[i]);
  }
  return GridFunction(edges, std::move(v));
}

}  // namespace orlicz
