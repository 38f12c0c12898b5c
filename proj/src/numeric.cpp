#include "orlicz/numeric.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "orlicz/error.hpp"

namespace orlicz {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

double order_free_sum(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end(), [](double a, double b) {
    const double fa = std::abs(a), fb = std::abs(b);
    return fa < fb || (fa == fb && a < b);
  });
  return compensated_sum(xs);
}

std::vector<double> log_edges(double lo, double hi, std::size_t cells) {
  if (!(lo > 0.0) || !(hi > lo) || cells == 0)
    throw DomainError("log_edges: need 0 < lo < hi and cells > 0");
  std::vector<double> e(cells + 1);
  const double l0 = std::log(lo);
  const double span = std::log(hi) - l0;
  for (std::size_t i = 0; i <= cells; ++i)
    e[i] = std::exp(l0 + span * (static_cast<double>(i) / static_cast<double>(cells)));
  e.front() = lo;
  e.back() = hi;
  return e;
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t cells) {
  if (!(lo >= 0.0) || !(hi > lo) || cells == 0)
    throw DomainError("uniform_edges: need 0 <= lo < hi and cells > 0");
  std::vector<double> e(cells + 1);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t i = 0; i <= cells; ++i) e[i] = lo + h * static_cast<double>(i);
  e.back() = hi;
  return e;
}

std::vector<double> log_points_inside(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = std::exp(l0 + step * (static_cast<double>(i) + 0.5));
  return x;
}

std::vector<double> log_points(double lo, double hi, std::size_t n) {
  if (n == 1) return {std::sqrt(lo * hi)};
  std::vector<double> x(n);
  const double l0 = std::log(lo);
  const double step = (std::log(hi) - l0) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::exp(l0 + step * static_cast<double>(i));
  x.front() = lo;
  x.back() = hi;
  return x;
}

std::vector<Window> nested_windows(int count, double max_decades) {
  if (count < 1) throw DomainError("nested_windows: count must be >= 1");
  if (!(max_decades > 0.0)) throw DomainError("nested_windows: max_decades must be > 0");
  std::vector<Window> ws;
  for (int k = 0; k < count; ++k) {
    const double d = max_decades / std::ldexp(1.0, count - 1 - k);
    ws.push_back(Window{std::pow(10.0, -d), std::pow(10.0, d)});
  }
  return ws;
}

std::vector<double> step_growth(std::span<const double> values) {
  std::vector<double> g;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double a = values[i], b = values[i + 1];
    if (a == 0.0)
      g.push_back(b == 0.0 ? 1.0 : kInf);
    else
      g.push_back(b / a);
  }
  return g;
}

namespace detail {

std::vector<double> quad_breaks(double a, double b, int cells_per_decade,
                                std::span<const double> extra) {
  std::vector<double> br;
  const double m = static_cast<double>(cells_per_decade);
  const double k0 = std::floor(std::log10(a) * m) + 1.0;
  const double k1 = std::ceil(std::log10(b) * m) - 1.0;
  br.push_back(a);
  for (double k = k0; k <= k1; k += 1.0) {
    const double y = std::pow(10.0, k / m);
    if (y > a && y < b) br.push_back(y);
  }
  br.push_back(b);
  for (double y : extra)
    if (y > a && y < b) br.push_back(y);
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

}  // namespace detail

namespace {
std::atomic<int> g_threads{0};
thread_local bool t_in_worker = false;  // nested loops run inline
}

int thread_count() {
  int n = g_threads.load();
  if (n > 0) return n;
  if (const char* env = std::getenv("ORLICZ_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

void set_thread_count(int n) { g_threads.store(n > 0 ? n : 0); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
  if (t <= 1 || t_in_worker) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  const std::size_t chunk = (n + t - 1) / t;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (std::size_t w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      t_in_worker = true;
      try {
        const std::size_t b = w * chunk, e = std::min(n, b + chunk);
        for (std::size_t i = b; i < e; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

}  // namespace orlicz
