#pragma once

// Shared numerical plumbing: compensated summation, log grids, Gauss-Legendre
// quadrature on truncated half-lines, and a deterministic parallel loop.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

/// Sum that depends only on the multiset of terms: sorted by magnitude first.
double order_free_sum(std::vector<double> xs);

/// n+1 log-uniform edges spanning [lo, hi].
std::vector<double> log_edges(double lo, double hi, std::size_t cells);
std::vector<double> uniform_edges(double lo, double hi, std::size_t cells);

/// n points log-uniform strictly inside (lo, hi): lo*r^(k+1/2).
std::vector<double> log_points_inside(double lo, double hi, std::size_t n);
/// n points log-uniform including both ends.
std::vector<double> log_points(double lo, double hi, std::size_t n);

/// Truncation window (lo, hi) of the half-line.
struct Window {
  double lo = 1e-6;
  double hi = 1e6;

  double log_width() const { return std::log10(hi / lo); }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Symmetric windows [10^-d_k, 10^d_k] whose log-width doubles at each step,
/// the last one having half-width `max_decades`.
std::vector<Window> nested_windows(int count, double max_decades);

/// Growth factor between consecutive entries (b/a); inf when a == 0 < b.
std::vector<double> step_growth(std::span<const double> values);

struct QuadResult {
  double value = 0.0;       // window part + admissible head/tail estimates
  double head = 0.0;        // estimate of the piece below the window
  double tail = 0.0;        // estimate of the piece above the window
  bool head_divergent = false;
  bool tail_divergent = false;

  double tail_share() const {
    return value > 0.0 ? (head + tail) / value : 0.0;
  }
};

namespace detail {

inline constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
    0.9061798459386640};
inline constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
    0.4786286704993665, 0.2369268850561891};

/// Cell boundaries for [a, b] (0 < a < b < inf): the global grid 10^(k/m)
/// plus any extra break points falling inside.
std::vector<double> quad_breaks(double a, double b, int cells_per_decade,
                                std::span<const double> extra);

/// Power-law exponent of h between y0 and y1 (both samples positive).
inline double local_exponent(double h0, double h1, double y0, double y1) {
  return std::log(h1 / h0) / std::log(y1 / y0);
}

}  // namespace detail

struct QuadOptions {
  Window window;
  int cells_per_decade = 8;
  std::span<const double> breaks = {};
};

/// Integrates h over [a, b] with 0 <= a < b <= inf.  A zero lower limit or an
/// infinite upper limit is truncated at the window and completed by a
/// power-law estimate fitted over the outermost decade; when that estimate
/// diverges it is left out and the corresponding flag is raised.
template <class F>
QuadResult integrate(F&& h, double a, double b, const QuadOptions& opt) {
  QuadResult r;
  if (!(b > a)) return r;
  const Window& w = opt.window;
  double lo = a;
  double hi = b;
  if (a <= 0.0) lo = w.lo;
  if (std::isinf(b)) hi = w.hi;

  CompensatedSum acc;
  if (hi > lo) {
    const auto br = detail::quad_breaks(lo, hi, opt.cells_per_decade, opt.breaks);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
      const double s0 = std::log(br[i]);
      const double s1 = std::log(br[i + 1]);
      const double half = 0.5 * (s1 - s0);
      const double mid = 0.5 * (s1 + s0);
      for (std::size_t k = 0; k < detail::kGaussNodes.size(); ++k) {
        const double y = std::exp(mid + half * detail::kGaussNodes[k]);
        const double v = h(y);
        if (v != 0.0) acc.add(detail::kGaussWeights[k] * half * v * y);
      }
    }
  }
  r.value = acc.value();

  if (a <= 0.0) {
    const bool below = b <= w.lo;
    // Fit points stay strictly below b, where the integrand may jump.
    const double y0 = below ? b / 10.0 : w.lo;
    const double y1 = below ? b / std::sqrt(10.0) : std::min(w.lo * 10.0, std::sqrt(b * w.lo));
    const double h0 = h(y0);
    if (h0 > 0.0) {
      const double h1 = h(y1);
      if (h1 > 0.0 && y1 > y0) {
        const double g = detail::local_exponent(h0, h1, y0, y1);
        if (g > -1.0)
          r.head = h0 * y0 / (g + 1.0);
        else
          r.head_divergent = true;
      } else {
        r.head = h0 * y0;  // support ends inside the fit decade: treat as flat
      }
    }
    if (below) {
      QuadOptions inner = opt;
      inner.window = Window{y0, b};
      r.value += integrate(h, y0, b, inner).value;
    }
  }
  if (std::isinf(b)) {
    const bool above = a >= w.hi;
    const double y1 = above ? a * 10.0 : w.hi;
    const double y0 = above ? a * std::sqrt(10.0) : std::max(w.hi / 10.0, std::sqrt(a * w.hi));
    const double h1 = h(y1);
    if (h1 > 0.0) {
      const double h0 = h(y0);
      if (h0 > 0.0 && y1 > y0) {
        const double g = detail::local_exponent(h0, h1, y0, y1);
        if (g < -1.0)
          r.tail = h1 * y1 / (-g - 1.0);
        else
          r.tail_divergent = true;
      } else {
        r.tail_divergent = true;
      }
    }
    if (above) {
      // Whole range lies above the window: [a, 10a] directly, the rest by the fit.
      QuadOptions inner = opt;
      inner.window = Window{a, y1};
      r.value += integrate(h, a, y1, inner).value;
    }
  }
  r.value += r.head + r.tail;
  return r;
}

/// Number of worker threads used by parallel loops (>= 1).
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n).  Work is split into fixed contiguous chunks;
/// callers write results by index, so outcomes do not depend on thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Log-uniform double in [lo, hi).
inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo * std::exp(uniform01(rng) * std::log(hi / lo));
}

/// Rounds to 12 significant decimal digits (report output contract).
double round12(double x);

}  // namespace orlicz
