#include "orlicz/orlicz.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <new>

#include "orlicz/error.hpp"
#include "orlicz/harness.hpp"

struct og_function {
  orlicz::GridFunction f;
};
struct og_nfunction {
  orlicz::NFunction phi;
};
struct og_weight {
  orlicz::Weight u;
};
struct og_kernel {
  orlicz::KernelGrid k;
};

namespace {

thread_local std::string t_error;

og_status fail(og_status s, const char* what) {
  t_error = what;
  return s;
}

template <class F>
og_status guarded(F&& body) {
  try {
    body();
    t_error.clear();
    return OG_OK;
  } catch (const orlicz::ConfigError& e) {
    return fail(OG_ERR_CONFIG, e.what());
  } catch (const orlicz::IoError& e) {
    return fail(OG_ERR_IO, e.what());
  } catch (const orlicz::DomainError& e) {
    return fail(OG_ERR_DOMAIN, e.what());
  } catch (const orlicz::DegenerateInput& e) {
    return fail(OG_ERR_DOMAIN, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(OG_ERR_CONFIG, e.what());
  } catch (const std::bad_alloc&) {
    return fail(OG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(OG_ERR_INTERNAL, "unknown error");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class... P>
bool any_null(P... p) {
  return ((p == nullptr) || ...);
}

#define OG_REQUIRE(...)                                                 \
  do {                                                                  \
    if (any_null(__VA_ARGS__)) return fail(OG_ERR_INVALID_ARGUMENT, "null argument"); \
  } while (0)

orlicz::Window window_of(double lo, double hi) {
  if (!(lo > 0.0) || !(hi > lo)) throw orlicz::ConfigError("window", "impossible window");
  return orlicz::Window{lo, hi};
}

}  // namespace

extern "C" {

const char* og_version(void) { return "0.1.0"; }

const char* og_last_error(void) { return t_error.c_str(); }

void og_string_free(char* s) { std::free(s); }

void og_set_threads(int n) { orlicz::set_thread_count(n); }

og_status og_function_from_spec(const char* spec, double lo, double hi, size_t cells,
                                og_function** out) {
  OG_REQUIRE(spec, out);
  if (cells < 1) return fail(OG_ERR_INVALID_ARGUMENT, "cells must be positive");
  return guarded([&] {
    const orlicz::SpecContext ctx{window_of(lo, hi), cells};
    *out = new og_function{orlicz::parse_function(spec, "function", ctx)};
  });
}

og_status og_function_from_file(const char* path, og_function** out) {
  OG_REQUIRE(path, out);
  return guarded([&] { *out = new og_function{orlicz::read_function_file(path)}; });
}

og_status og_function_from_cells(const double* edges, const double* values, size_t n,
                                 og_function** out) {
  OG_REQUIRE(edges, values, out);
  if (n < 1) return fail(OG_ERR_INVALID_ARGUMENT, "need at least one cell");
  return guarded([&] {
    *out = new og_function{orlicz::GridFunction(std::vector<double>(edges, edges + n + 1),
                                                std::vector<double>(values, values + n))};
  });
}

void og_function_free(og_function* f) { delete f; }

size_t og_function_size(const og_function* f) { return f ? f->f.size() : 0; }

og_status og_function_cells(const og_function* f, double* edges, double* values) {
  OG_REQUIRE(f, edges, values);
  return guarded([&] {
    const auto e = f->f.edges();
    const auto v = f->f.values();
    std::copy(e.begin(), e.end(), edges);
    std::copy(v.begin(), v.end(), values);
  });
}

og_status og_function_to_text(const og_function* f, char** out) {
  OG_REQUIRE(f, out);
  return guarded([&] { *out = dup(orlicz::function_text(f->f)); });
}

og_status og_function_rearrange(const og_function* f, og_function** out) {
  OG_REQUIRE(f, out);
  return guarded([&] { *out = new og_function{orlicz::rearrange(f->f)}; });
}

og_status og_function_distribution(const og_function* f, double lambda, double* out) {
  OG_REQUIRE(f, out);
  return guarded([&] { *out = orlicz::distribution(f->f, lambda); });
}

og_status og_function_maximal(const og_function* f, double t, double* out) {
  OG_REQUIRE(f, out);
  if (!(t > 0.0)) return fail(OG_ERR_DOMAIN, "maximal average needs t > 0");
  return guarded([&] { *out = orlicz::maximal(f->f, t); });
}

og_status og_function_integral(const og_function* f, double* out) {
  OG_REQUIRE(f, out);
  return guarded([&] { *out = f->f.integral(); });
}

og_status og_nfunction_from_spec(const char* spec, og_nfunction** out) {
  OG_REQUIRE(spec, out);
  return guarded([&] { *out = new og_nfunction{orlicz::parse_nfunction(spec, "phi")}; });
}

void og_nfunction_free(og_nfunction* phi) { delete phi; }

og_status og_nfunction_value(const og_nfunction* phi, double t, double* out) {
  OG_REQUIRE(phi, out);
  return guarded([&] { *out = phi->phi.value(t); });
}

og_status og_nfunction_inverse(const og_nfunction* phi, double y, double* out) {
  OG_REQUIRE(phi, out);
  return guarded([&] { *out = phi->phi.inverse(y); });
}

og_status og_nfunction_complementary(const og_nfunction* phi, og_nfunction** out) {
  OG_REQUIRE(phi, out);
  return guarded([&] { *out = new og_nfunction{phi->phi.complementary()}; });
}

og_status og_weight_from_spec(const char* spec, og_weight** out) {
  OG_REQUIRE(spec, out);
  return guarded([&] { *out = new og_weight{orlicz::parse_weight(spec, "u")}; });
}

void og_weight_free(og_weight* u) { delete u; }

og_status og_weight_cumulative(const og_weight* u, double x, double* out) {
  OG_REQUIRE(u, out);
  return guarded([&] { *out = u->u.cumulative(x); });
}

og_status og_gauge_norm(const og_function* f, const og_nfunction* phi, const og_weight* u,
                        double* out) {
  OG_REQUIRE(f, phi, u, out);
  return guarded([&] { *out = orlicz::gauge_norm(f->f, orlicz::GaugeSpec{phi->phi, u->u}).value; });
}

og_status og_gauge_norm_spec(const og_function* f, const char* gauge_spec, double* out) {
  OG_REQUIRE(f, gauge_spec, out);
  return guarded([&] {
    *out = orlicz::gauge_norm(f->f, orlicz::parse_gauge(gauge_spec, "gauge")).value;
  });
}

og_status og_kernel_from_spec(const char* spec, double lo, double hi, size_t cells,
                              og_kernel** out) {
  OG_REQUIRE(spec, out);
  if (cells < 1) return fail(OG_ERR_INVALID_ARGUMENT, "cells must be positive");
  return guarded([&] {
    const auto k = orlicz::parse_kernel(spec, "kernel");
    *out = new og_kernel{orlicz::KernelGrid::sample(k, window_of(lo, hi), cells)};
  });
}

void og_kernel_free(og_kernel* k) { delete k; }

og_status og_kernel_apply(const og_kernel* k, const og_function* f, og_function** out) {
  OG_REQUIRE(k, f, out);
  return guarded([&] { *out = new og_function{orlicz::apply(k->k, f->f)}; });
}

og_status og_kernel_iterated_rearrangement(const og_kernel* k, og_kernel** out) {
  OG_REQUIRE(k, out);
  return guarded([&] { *out = new og_kernel{orlicz::iterated_rearrangement(k->k)}; });
}

og_status og_kernel_to_text(const og_kernel* k, char** out) {
  OG_REQUIRE(k, out);
  return guarded([&] {
    const auto& g = k->k;
    std::string s;
    char buf[160];
    for (std::size_t i = 0; i < g.nx(); ++i) {
      for (std::size_t j = 0; j < g.ny(); ++j) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g %.12g %.12g\n", g.x_edges()[i],
                      g.x_edges()[i + 1], g.y_edges()[j], g.y_edges()[j + 1], g.at(i, j));
        s += buf;
      }
    }
    *out = dup(s);
  });
}

og_status og_check_json(const char* request, char** out) {
  OG_REQUIRE(request, out);
  return guarded([&] {
    const auto req = nlohmann::json::parse(request);
    *out = dup(orlicz::to_json(orlicz::run_check(req)).dump(2));
  });
}

og_status og_oneil_json(const char* request, char** out) {
  OG_REQUIRE(request, out);
  return guarded([&] { *out = dup(orlicz::oneil_json(nlohmann::json::parse(request)).dump(2)); });
}

namespace {
og_status run(const orlicz::ExperimentConfig& c, const char* out_dir, char** report) {
  const auto r = orlicz::empirical_best_constant(c);
  if (out_dir) orlicz::write_report(r, out_dir);
  if (report) *report = dup(orlicz::to_json(r).dump(2));
  return OG_OK;
}
}  // namespace

og_status og_run_config(const char* config_path, const char* out_dir, char** report) {
  OG_REQUIRE(config_path);
  return guarded([&] { run(orlicz::load_config(config_path), out_dir, report); });
}

og_status og_run_config_json(const char* config, const char* out_dir, char** report) {
  OG_REQUIRE(config);
  return guarded([&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config);
    } catch (const nlohmann::json::parse_error& e) {
      throw orlicz::ConfigError("config", std::string("not valid JSON: ") + e.what());
    }
    run(orlicz::parse_config(j), out_dir, report);
  });
}

}  // extern "C"
