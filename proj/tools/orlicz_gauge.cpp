// orlicz-gauge: command-line front end over the C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/orlicz.h"

namespace {

using nlohmann::json;

struct Failure {
  og_status status;
};

void check(og_status s) {
  if (s != OG_OK) throw Failure{s};
}

int exit_code(og_status s) {
  switch (s) {
    case OG_ERR_CONFIG:
    case OG_ERR_INVALID_ARGUMENT: return 2;
    case OG_ERR_IO: return 3;
    case OG_ERR_DOMAIN: return 4;
    default: return 1;
  }
}

// Owns a string returned by the library.
struct Text {
  char* p = nullptr;
  ~Text() { og_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
};
using Function = Handle<og_function, og_function_free>;
using Kernel = Handle<og_kernel, og_kernel_free>;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "orlicz-gauge: cannot write " << out << '\n';
    throw Failure{OG_ERR_IO};
  }
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

std::string g12(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

struct Common {
  std::vector<double> window{1e-6, 1e6};
  std::size_t grid_n = 4096;
  int threads = 0;
};

void load_function(const std::string& spec, const Common& c, Function& f) {
  if (spec.rfind("file:path=", 0) == 0)
    check(og_function_from_file(spec.substr(10).c_str(), &f.p));
  else
    check(og_function_from_spec(spec.c_str(), c.window[0], c.window[1], c.grid_n, &f.p));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz gauge functionals, kernel operators and boundedness conditions"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--window", common.window, "truncation window lo,hi")->delimiter(',')->expected(2);
  app.add_option("--grid-n", common.grid_n, "cells of the function grid");
  app.add_option("--threads", common.threads, "worker threads (0: default)");

  std::string f_spec, out, gauge, kernel_spec;
  std::size_t kernel_n = 1024;

  auto* rearrange = app.add_subcommand("rearrange", "nonincreasing rearrangement f*");
  rearrange->add_option("--f", f_spec, "function spec")->required();
  rearrange->add_option("--out", out, "output file (default stdout)");

  auto* gnorm = app.add_subcommand("gauge-norm", "Luxemburg gauge of a function");
  gnorm->add_option("--f", f_spec, "function spec")->required();
  gnorm->add_option("--gauge", gauge, "gauge(phi=...,u=...)")->required();
  bool star = false;
  gnorm->add_flag("--rearranged", star, "evaluate at f*");

  auto* apply = app.add_subcommand("apply", "T_K f on the kernel grid");
  apply->add_option("--kernel", kernel_spec, "kernel spec")->required();
  apply->add_option("--f", f_spec, "function spec")->required();
  apply->add_option("--kernel-grid-n", kernel_n, "cells per axis of the kernel grid");
  apply->add_option("--out", out, "output file (default stdout)");

  auto* iter = app.add_subcommand("iterate-rearrange", "iterated rearrangement L of a kernel");
  iter->add_option("--kernel", kernel_spec, "kernel spec")->required();
  iter->add_option("--kernel-grid-n", kernel_n, "cells per axis of the kernel grid");
  iter->add_option("--out", out, "output file (default stdout)");

  auto* chk = app.add_subcommand("check", "boundedness condition report (JSON)");
  std::string cid;
  chk->add_option("condition", cid,
                  "bk | hardy-avg | rearranged | power-case | radial | kantorovic | hlp | homogeneous")
      ->required();
  std::string phi1, phi2, u1, u2, t_w, u_w, v_w, w_w, mode;
  std::optional<double> p, q, lambda;
  int windows = 3;
  chk->add_option("--kernel", kernel_spec, "kernel spec");
  chk->add_option("--phi1", phi1, "N-function spec");
  chk->add_option("--phi2", phi2, "N-function spec");
  chk->add_option("--u1", u1, "weight spec");
  chk->add_option("--u2", u2, "weight spec");
  chk->add_option("--t", t_w, "weight t of the generalized Hardy conditions");
  chk->add_option("--u", u_w, "weight u of the generalized Hardy conditions");
  chk->add_option("--v", v_w, "weight v of the generalized Hardy conditions");
  chk->add_option("--w", w_w, "weight w of the generalized Hardy conditions");
  chk->add_option("--p", p, "index p");
  chk->add_option("--q", q, "index q");
  chk->add_option("--lambda", lambda, "power-radial exponent when --kernel is omitted");
  chk->add_option("--mode", mode, "homogeneous: power-closed-form | empirical");
  chk->add_option("--windows", windows, "nested windows");
  chk->add_option("--out", out, "output file (default stdout)");

  auto* oneil = app.add_subcommand("oneil", "O'Neil comparison table (JSON)");
  std::string k_spec = "exp:c=1", convention = "sqrt";
  std::vector<double> xs;
  oneil->add_option("--k", k_spec, "radial profile spec");
  oneil->add_option("--f", f_spec, "function spec");
  oneil->add_option("--x", xs, "sample points")->delimiter(',');
  oneil->add_option("--convention", convention, "sqrt | exact");
  oneil->add_option("--out", out, "output file (default stdout)");

  auto* run = app.add_subcommand("run", "run an experiment config");
  std::string config, out_dir = ".";
  run->add_option("config", config, "config JSON file")->required();
  run->add_option("--out-dir", out_dir, "directory for report.json and report.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (common.window.size() != 2 || !(common.window[0] > 0.0) || !(common.window[1] > common.window[0])) {
      std::cerr << "orlicz-gauge: window: impossible window\n";
      return 2;
    }
    og_set_threads(common.threads);
    const json window = {common.window[0], common.window[1]};

    if (*rearrange) {
      Function f, fs;
      load_function(f_spec, common, f);
      check(og_function_rearrange(f.p, &fs.p));
      Text t;
      check(og_function_to_text(fs.p, &t.p));
      emit(t.str(), out);
    } else if (*gnorm) {
      Function f, fs;
      load_function(f_spec, common, f);
      const og_function* g = f.p;
      if (star) {
        check(og_function_rearrange(f.p, &fs.p));
        g = fs.p;
      }
      double v = 0.0;
      check(og_gauge_norm_spec(g, gauge.c_str(), &v));
      emit(g12(v), "");
    } else if (*apply) {
      Function f, tf;
      Kernel k;
      load_function(f_spec, common, f);
      check(og_kernel_from_spec(kernel_spec.c_str(), common.window[0], common.window[1], kernel_n, &k.p));
      check(og_kernel_apply(k.p, f.p, &tf.p));
      Text t;
      check(og_function_to_text(tf.p, &t.p));
      emit(t.str(), out);
    } else if (*iter) {
      Kernel k, l;
      check(og_kernel_from_spec(kernel_spec.c_str(), common.window[0], common.window[1], kernel_n, &k.p));
      check(og_kernel_iterated_rearrangement(k.p, &l.p));
      Text t;
      check(og_kernel_to_text(l.p, &t.p));
      emit(t.str(), out);
    } else if (*chk) {
      json req = {{"id", cid}, {"window", window}, {"windows", windows}, {"grid_n", common.grid_n}};
      if (!kernel_spec.empty())
        req["kernel"] = kernel_spec;
      else if (lambda)
        req["kernel"] = "power-radial:lambda=" + g12(*lambda);
      for (auto [key, val] : {std::pair<const char*, std::string*>{"phi1", &phi1}, {"phi2", &phi2},
                              {"u1", &u1}, {"u2", &u2}, {"t", &t_w}, {"u", &u_w}, {"v", &v_w},
                              {"w", &w_w}, {"mode", &mode}})
        if (!val->empty()) req[key] = *val;
      if (p) req["p"] = *p;
      if (q) req["q"] = *q;
      Text t;
      check(og_check_json(req.dump().c_str(), &t.p));
      emit(t.str(), out);
    } else if (*oneil) {
      json req = {{"k", k_spec}, {"convention", convention}, {"window", window}, {"grid_n", common.grid_n}};
      if (!f_spec.empty()) req["f"] = f_spec;
      if (!xs.empty()) req["xs"] = xs;
      Text t;
      check(og_oneil_json(req.dump().c_str(), &t.p));
      emit(t.str(), out);
    } else if (*run) {
      Text t;
      check(og_run_config(config.c_str(), out_dir.c_str(), &t.p));
      const json r = json::parse(t.str());
      std::cout << "c_hat=" << r["c_hat"].dump() << " argmax=" << r["argmax"].get<std::string>()
                << " trend=" << r["trend"].get<std::string>();
      if (r.contains("check"))
        std::cout << " check=" << r["check"]["id"].get<std::string>()
                  << " verdict=" << r["check"]["verdict"].get<std::string>();
      std::cout << "\nwrote " << out_dir << "/report.json and " << out_dir << "/report.csv\n";
    }
  } catch (const Failure& f) {
    const char* msg = og_last_error();
    if (msg && *msg) std::cerr << "orlicz-gauge: " << msg << '\n';
    return exit_code(f.status);
  }
  return 0;
}
