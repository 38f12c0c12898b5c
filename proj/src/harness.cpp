#include "orlicz/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "orlicz/error.hpp"

namespace orlicz {

using nlohmann::json;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::string g6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string g12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json num(double v) {
  if (std::isfinite(v)) return round12(v);
  return g12(v);
}

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

double number_field(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_number(j.get<std::string>(), field);
  throw ConfigError(field, "expected a number");
}

std::size_t count_field(const json& j, const std::string& field, double lo, double hi) {
  const double v = number_field(j, field);
  if (v != std::floor(v) || v < lo || v > hi)
    throw ConfigError(field, "expected an integer in [" + g6(lo) + ", " + g6(hi) + "]");
  return static_cast<std::size_t>(v);
}

std::string string_field(const json& j, const std::string& field) {
  if (!j.is_string()) throw ConfigError(field, "expected a string");
  return j.get<std::string>();
}

Window window_field(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(field, "expected [lo, hi]");
  const double lo = number_field(j[0], field);
  const double hi = number_field(j[1], field);
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw ConfigError(field, "impossible window [" + g6(lo) + ", " + g6(hi) + "]");
  return Window{lo, hi};
}

Profile kernel_profile(const KernelFamily& k, const std::string& field) {
  if (k.tag() == KernelTag::PowerRadial) return Profile(PowerLaw{1.0, -k.lambda(), 0.0, kInf}, k.name());
  if (!k.profile()) throw ConfigError(field, "kernel '" + k.name() + "' has no one-variable profile");
  return *k.profile();
}

double required(const json& r, const char* key) {
  if (!r.contains(key)) throw ConfigError(key, "required");
  return number_field(r.at(key), key);
}

std::string str_or(const json& r, const char* key, const char* fallback) {
  return r.contains(key) ? string_field(r.at(key), key) : std::string(fallback);
}

}  // namespace

std::optional<Inequality> parse_inequality(const std::string& s) {
  if (s == "main") return Inequality::Main;
  if (s == "rearranged-input") return Inequality::RearrangedInput;
  if (s == "operator-gauge") return Inequality::OperatorGauge;
  if (s == "power") return Inequality::Power;
  if (s == "homogeneous") return Inequality::Homogeneous;
  return std::nullopt;
}

const char* to_string(Inequality i) {
  switch (i) {
    case Inequality::Main: return "main";
    case Inequality::RearrangedInput: return "rearranged-input";
    case Inequality::OperatorGauge: return "operator-gauge";
    case Inequality::Power: return "power";
    case Inequality::Homogeneous: return "homogeneous";
  }
  return "main";
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::Stable: return "stable";
    case Trend::Growing: return "growing";
    case Trend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Trend trend_of(const std::vector<double>& v) {
  if (v.size() < 2) return Trend::Inconclusive;
  const auto g = step_growth(v);
  if (std::all_of(g.begin(), g.end(), [](double x) { return x >= 2.0; })) return Trend::Growing;
  if (g.back() < 1.1) return Trend::Stable;
  return Trend::Inconclusive;
}

std::vector<FamilyMember> make_family(const FamilySpec& spec, const Window& w,
                                      std::size_t cells) {
  if (spec.size == 0) throw ConfigError("family.size", "family is empty");
  const auto edges = default_edges(w, cells);
  std::vector<FamilyMember> out;
  auto full = [&] { return out.size() >= spec.size; };

  for (double a : log_points_inside(w.lo, w.hi, 12)) {
    if (full()) return out;
    out.push_back({"indicator:a=" + g6(a), Profile::indicator(0.0, a).sample(edges)});
  }
  for (int i = 1; i <= 9; ++i) {
    if (full()) return out;
    const double a = i / 10.0;
    out.push_back({"power:a=" + g6(a),
                   Profile(PowerLaw{1.0, -a, w.lo, w.hi / 100.0}, "power").sample(edges)});
  }
  for (int i = 0; i < 6; ++i) {
    if (full()) return out;
    const double c = 0.01 * std::pow(10.0, i);
    out.push_back({"exp:c=" + g6(c), Profile(Exponential{1.0, c}, "exp").sample(edges)});
  }
  for (std::size_t r = 0; !full(); ++r) {
    const std::uint64_t seed = splitmix64(spec.seed * 0x100000001b3ULL + r);
    const std::size_t pieces = 4 + seed % 29;
    const bool mono = r % 3 == 2;
    out.push_back({(mono ? "randomstep-rearranged:seed=" : "randomstep:seed=") + std::to_string(seed % 1000000007ULL) +
                       ",cells=" + std::to_string(pieces),
                   random_step(seed, pieces, w, edges, mono)});
  }
  return out;
}

std::vector<Window> nested_around(const Window& w, int count) {
  if (count < 1) throw ConfigError("windows_nested", "must be at least 1");
  const double l0 = std::log10(w.lo), l1 = std::log10(w.hi);
  const double centre = 0.5 * (l0 + l1);
  const double half = 0.5 * (l1 - l0);
  std::vector<Window> out;
  for (int k = 0; k < count; ++k) {
    const double d = half / std::pow(2.0, count - 1 - k);
    out.push_back(Window{std::pow(10.0, centre - d), std::pow(10.0, centre + d)});
  }
  out.back() = w;
  return out;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig c;
  static const char* known[] = {"inequality", "kernel", "phi1", "phi2", "u1", "u2", "w", "u",
                                "p", "q", "lambda", "family", "grid_n", "kernel_grid_n",
                                "window", "windows_nested", "seed", "check"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw ConfigError(key, "unknown field");
  }
  if (j.contains("inequality")) {
    const auto s = string_field(j["inequality"], "inequality");
    const auto i = parse_inequality(s);
    if (!i) throw ConfigError("inequality", "unknown inequality '" + s + "'");
    c.inequality = *i;
  }
  if (j.contains("p")) c.p = number_field(j["p"], "p");
  if (j.contains("q")) c.q = number_field(j["q"], "q");
  if (j.contains("lambda")) c.lambda = number_field(j["lambda"], "lambda");
  if (j.contains("kernel")) {
    c.kernel = string_field(j["kernel"], "kernel");
  } else if (c.lambda) {
    c.kernel = "power-radial:lambda=" + g12(*c.lambda);
  }
  for (auto [key, dst] : {std::pair<const char*, std::string*>{"phi1", &c.phi1}, {"phi2", &c.phi2},
                          {"u1", &c.u1}, {"u2", &c.u2}, {"w", &c.w}, {"u", &c.u}}) {
    if (j.contains(key)) *dst = string_field(j[key], key);
  }
  if (j.contains("family")) {
    const json& f = j["family"];
    if (f.is_object()) {
      for (const auto& [key, value] : f.items())
        if (key != "size" && key != "seed") throw ConfigError("family." + key, "unknown field");
      if (f.contains("size")) c.family.size = count_field(f["size"], "family.size", 0, 1e6);
      if (f.contains("seed")) c.family.seed = count_field(f["seed"], "family.seed", 0, 9e15);
    } else {
      c.family.size = count_field(f, "family.size", 0, 1e6);
    }
  }
  if (j.contains("seed")) c.family.seed = count_field(j["seed"], "seed", 0, 9e15);
  if (j.contains("grid_n")) c.grid_n = count_field(j["grid_n"], "grid_n", 16, 1 << 20);
  if (j.contains("kernel_grid_n"))
    c.kernel_grid_n = count_field(j["kernel_grid_n"], "kernel_grid_n", 16, 8192);
  if (j.contains("window")) c.window = window_field(j["window"], "window");
  if (j.contains("windows_nested"))
    c.windows_nested = static_cast<int>(count_field(j["windows_nested"], "windows_nested", 1, 8));
  if (j.contains("check")) c.check = string_field(j["check"], "check");

  // Validate every spec now so that errors name the field before any work.
  if (c.family.size == 0) throw ConfigError("family.size", "family is empty");
  parse_kernel(c.kernel, "kernel");
  if (c.inequality == Inequality::Power) {
    if (!c.p) throw ConfigError("p", "required for inequality power");
    if (!c.q) throw ConfigError("q", "required for inequality power");
    if (!(*c.p > 1.0)) throw ConfigError("p", "must exceed 1");
    if (!(*c.q > 1.0)) throw ConfigError("q", "must exceed 1");
  } else {
    parse_nfunction(c.phi1, "phi1");
    parse_nfunction(c.phi2, "phi2");
  }
  parse_profile(c.u1, "u1");
  parse_profile(c.u2, "u2");
  parse_profile(c.w, "w");
  parse_profile(c.u, "u");
  static const char* checks[] = {"auto", "none", "bk", "hardy-avg", "rearranged", "power-case",
                                 "radial", "kantorovic", "hlp", "homogeneous"};
  if (std::find(std::begin(checks), std::end(checks), c.check) == std::end(checks))
    throw ConfigError("check", "unknown condition '" + c.check + "'");
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["inequality"] = to_string(c.inequality);
  j["kernel"] = c.kernel;
  j["phi1"] = c.phi1;
  j["phi2"] = c.phi2;
  j["u1"] = c.u1;
  j["u2"] = c.u2;
  j["w"] = c.w;
  j["u"] = c.u;
  if (c.p) j["p"] = num(*c.p);
  if (c.q) j["q"] = num(*c.q);
  if (c.lambda) j["lambda"] = num(*c.lambda);
  j["family"] = {{"size", c.family.size}, {"seed", c.family.seed}};
  j["grid_n"] = c.grid_n;
  j["kernel_grid_n"] = c.kernel_grid_n;
  j["window"] = {num(c.window.lo), num(c.window.hi)};
  j["windows_nested"] = c.windows_nested;
  j["check"] = c.check;
  return j;
}

namespace {

GridFunction times(const GridFunction& f, const Profile& m) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) v[i] = f.value(i) * m.value(f.mid(i));
  return f.with_values(std::move(v));
}

WindowResult run_window(const ExperimentConfig& c, const Window& w) {
  const SpecContext ctx{w, c.grid_n};
  const KernelFamily k = parse_kernel(c.kernel, "kernel");
  const bool power = c.inequality == Inequality::Power;
  const GaugeSpec s1{power ? NFunction::power(*c.q) : parse_nfunction(c.phi1, "phi1"),
                     parse_weight(c.u1, "u1", ctx)};
  const GaugeSpec s2{power ? NFunction::power(*c.p) : parse_nfunction(c.phi2, "phi2"),
                     parse_weight(c.u2, "u2", ctx)};
  const Profile mw = parse_profile(c.w, "w");
  const Profile mu = parse_profile(c.u, "u");
  const bool hardy_fast =
      c.inequality == Inequality::RearrangedInput && k.tag() == KernelTag::HardyAveraging;
  std::optional<KernelGrid> kg;
  if (!hardy_fast) kg = KernelGrid::sample(k, w, c.kernel_grid_n);

  const auto family = make_family(c.family, w, c.grid_n);
  WindowResult out;
  out.window = w;
  out.members.resize(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const GridFunction& f = family[i].f;
    MemberResult& m = out.members[i];
    m.member = family[i].name;
    double num = 0.0, den = 0.0;
    switch (c.inequality) {
      case Inequality::Main:
      case Inequality::Power:
        den = gauge_norm(rearrange(f), s2).value;
        if (den > 0.0 && std::isfinite(den)) num = gauge_norm(rearrange(apply(*kg, f)), s1).value;
        break;
      case Inequality::RearrangedInput: {
        const GridFunction fs = rearrange(f);
        den = gauge_norm(fs, s2).value;
        if (den > 0.0 && std::isfinite(den))
          num = gauge_norm(hardy_fast ? hardy_average(fs) : apply(*kg, fs), s1).value;
        break;
      }
      case Inequality::OperatorGauge:
        den = gauge_norm(times(f, mu), s2).value;
        if (den > 0.0 && std::isfinite(den)) num = gauge_norm(times(apply(*kg, f), mw), s1).value;
        break;
      case Inequality::Homogeneous:
        den = gauge_norm(f, s2).value;
        if (den > 0.0 && std::isfinite(den)) num = gauge_norm(apply(*kg, f), s1).value;
        break;
    }
    m.numerator = num;
    m.denominator = den;
    if (!(den > 0.0)) {
      m.flag = "zero-denominator";
    } else if (std::isinf(num) || std::isinf(den)) {
      m.flag = "infinite";
    } else {
      m.ratio = num / den;
    }
  });
  bool first = true;
  for (const auto& m : out.members) {
    if (m.flag == "zero-denominator") {
      ++out.skipped;
      continue;
    }
    if (m.flag == "infinite") {
      ++out.infinite;
      continue;
    }
    if (first || m.ratio > out.c_hat) {
      out.c_hat = m.ratio;
      out.argmax = m.member;
      first = false;
    }
  }
  return out;
}

std::string auto_check(const ExperimentConfig& c, const KernelFamily& k) {
  const KernelTag t = k.tag();
  switch (c.inequality) {
    case Inequality::Power:
      if (t == KernelTag::Radial || t == KernelTag::PowerRadial) return "radial";
      if (k.flags().sum && k.profile()) return "power-case";
      return "none";
    case Inequality::RearrangedInput:
      return t == KernelTag::HardyAveraging ? "hardy-avg" : "none";
    case Inequality::OperatorGauge:
    case Inequality::Homogeneous:
      if (k.flags().homogeneous && c.phi1 == c.phi2 && c.u1 == c.u2 && c.w == "one" && c.u == "one") {
        const NFunction phi = parse_nfunction(c.phi1, "phi1");
        if (phi.is_power()) return c.u1 == "one" ? "hlp" : "homogeneous";
      }
      return "none";
    case Inequality::Main:
      return "none";
  }
  return "none";
}

std::string cross_check(Verdict v, Trend t) {
  if (v == Verdict::Holds && t == Trend::Stable) return "consistent: condition holds, constant stable";
  if (v == Verdict::Fails && t == Trend::Growing) return "consistent: condition fails, constant grows";
  if (v == Verdict::Holds && t == Trend::Growing) return "inconsistent: condition holds but constant grows";
  if (v == Verdict::Fails && t == Trend::Stable)
    return "unconfirmed: condition fails but the family does not expose growth";
  return "undetermined";
}

}  // namespace

Report empirical_best_constant(const ExperimentConfig& c) {
  const auto t0 = std::chrono::steady_clock::now();
  Report r;
  r.config = c;
  r.threads = thread_count();
  for (const Window& w : nested_around(c.window, c.windows_nested)) {
    r.windows.push_back(run_window(c, w));
    r.c_hat_per_window.push_back(r.windows.back().c_hat);
  }
  r.c_hat = r.windows.back().c_hat;
  r.argmax = r.windows.back().argmax;
  r.growth = step_growth(r.c_hat_per_window);
  r.trend = trend_of(r.c_hat_per_window);
  r.notes.push_back("the empirical constant is a lower bound on the best constant");

  const KernelFamily k = parse_kernel(c.kernel, "kernel");
  const std::string id = c.check == "auto" ? auto_check(c, k) : c.check;
  if (id != "none") {
    json req = config_json(c);
    req["id"] = id;
    req["windows"] = c.windows_nested;
    if (c.inequality == Inequality::Power) {
      req["phi1"] = "power:p=" + g12(*c.q);
      req["phi2"] = "power:p=" + g12(*c.p);
    } else if (id == "hlp" || id == "homogeneous") {
      const NFunction phi = parse_nfunction(c.phi2, "phi2");
      if (phi.is_power()) req["p"] = phi.exponent();
    }
    r.check = run_check(req);
    r.cross_check = cross_check(r.check->verdict, r.trend);
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

json to_json(const ConditionReport& r) {
  json j;
  j["id"] = r.id;
  json ws = json::array();
  for (const auto& w : r.windows) ws.push_back({num(w.lo), num(w.hi)});
  j["windows"] = ws;
  j["lambda_points"] = r.lambdas.size();
  if (!r.lambdas.empty()) j["lambda_range"] = {num(r.lambdas.front()), num(r.lambdas.back())};
  j["x_points"] = r.x_points;
  json parts = json::array();
  for (const auto& p : r.parts) {
    parts.push_back({{"name", p.name},
                     {"sup_per_window", nums(p.sup_per_window)},
                     {"c_per_window", nums(p.c_per_window)},
                     {"growth", nums(p.growth)},
                     {"c_star", num(p.c_star)},
                     {"verdict", to_string(p.verdict)}});
  }
  j["parts"] = parts;
  j["c_star"] = num(r.c_star);
  j["verdict"] = to_string(r.verdict);
  if (!r.values_per_window.empty()) j["values_per_window"] = nums(r.values_per_window);
  if (r.value) j["value"] = num(*r.value);
  j["tail_share"] = num(r.tail_share);
  j["validated"] = r.validated;
  json ex = json::object();
  for (const auto& [k, v] : r.extras) ex[k] = num(v);
  j["extras"] = ex;
  j["warnings"] = r.warnings;
  return j;
}

json to_json(const Report& r) {
  json j;
  j["inequality"] = to_string(r.config.inequality);
  j["config"] = config_json(r.config);
  json ws = json::array();
  for (const auto& w : r.windows) {
    json members = json::array();
    for (const auto& m : w.members) {
      json row = {{"member", m.member},
                  {"ratio", num(m.ratio)},
                  {"numerator", num(m.numerator)},
                  {"denominator", num(m.denominator)}};
      if (!m.flag.empty()) row["flag"] = m.flag;
      members.push_back(row);
    }
    ws.push_back({{"window", {num(w.window.lo), num(w.window.hi)}},
                  {"c_hat", num(w.c_hat)},
                  {"argmax", w.argmax},
                  {"skipped", w.skipped},
                  {"infinite", w.infinite},
                  {"members", members}});
  }
  j["windows"] = ws;
  j["c_hat"] = num(r.c_hat);
  j["argmax"] = r.argmax;
  j["c_hat_per_window"] = nums(r.c_hat_per_window);
  j["growth"] = nums(r.growth);
  j["trend"] = to_string(r.trend);
  if (r.check) {
    j["check"] = to_json(*r.check);
    j["cross_check"] = r.cross_check;
  }
  j["notes"] = r.notes;
  j["runtime"] = {{"threads", r.threads}, {"seconds", r.seconds}};
  return j;
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "window,member,ratio,numerator,denominator\n";
  for (std::size_t w = 0; w < r.windows.size(); ++w) {
    for (const auto& m : r.windows[w].members) {
      os << w << ',' << m.member << ',' << g12(m.ratio) << ',' << g12(m.numerator) << ','
         << g12(m.denominator) << '\n';
    }
  }
  return os.str();
}

void write_report(const Report& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto base = std::filesystem::path(dir);
  std::ofstream js(base / "report.json");
  std::ofstream csv(base / "report.csv");
  if (!js || !csv) throw IoError("cannot write reports into " + dir);
  js << to_json(r).dump(2) << '\n';
  csv << to_csv(r);
}

ConditionReport run_check(const json& req) {
  if (!req.is_object()) throw ConfigError("request", "expected a JSON object");
  if (!req.contains("id")) throw ConfigError("id", "required");
  const std::string id = string_field(req["id"], "id");
  const Window window = req.contains("window") ? window_field(req["window"], "window") : Window{};
  const int nwin = req.contains("windows")
                       ? static_cast<int>(count_field(req["windows"], "windows", 1, 8))
                       : 3;
  const std::size_t grid_n =
      req.contains("grid_n") ? count_field(req["grid_n"], "grid_n", 16, 1 << 20) : kDefaultCells;
  const SpecContext ctx{window, grid_n};
  Scan scan = default_scan(nwin);
  scan.windows = nested_around(window, nwin);
  if (req.contains("x_points")) scan.x_points = count_field(req["x_points"], "x_points", 2, 4096);
  if (req.contains("lambdas")) {
    const json& l = req["lambdas"];
    if (!l.is_array() || l.empty()) throw ConfigError("lambdas", "expected a nonempty array");
    scan.lambdas.clear();
    for (const auto& v : l) {
      const double x = number_field(v, "lambdas");
      if (!(x > 0.0)) throw ConfigError("lambdas", "must be positive");
      scan.lambdas.push_back(x);
    }
  }

  auto kernel = [&] { return parse_kernel(str_or(req, "kernel", "hardy-indicator"), "kernel"); };
  auto phi = [&](const char* key) { return parse_nfunction(str_or(req, key, "power:p=2"), key); };
  auto weight = [&](const char* key) { return parse_weight(str_or(req, key, "one"), key, ctx); };
  auto fn = [&](const char* key) { return Fn::of(parse_profile(str_or(req, key, "one"), key)); };

  try {
    if (id == "bk")
      return bk_check(Kernel2::of(kernel()), phi("phi1"), phi("phi2"), fn("t"), fn("u"), fn("v"),
                      fn("w"), scan);
    if (id == "hardy-avg") return hardy_avg_check(phi("phi1"), weight("u1"), scan);
    if (id == "rearranged")
      return rearranged_check(kernel(), phi("phi1"), phi("phi2"), weight("u1"), weight("u2"), scan);
    if (id == "power-case")
      return power_case_check(kernel_profile(kernel(), "kernel"), required(req, "p"),
                              required(req, "q"), weight("u1"), weight("u2"), scan);
    if (id == "radial")
      return radial_check(kernel_profile(kernel(), "kernel"), required(req, "p"), required(req, "q"),
                          scan);
    if (id == "kantorovic")
      return kantorovic_mixed_norm(kernel(), required(req, "p"), required(req, "q"), scan);
    if (id == "hlp") return hlp_check(kernel(), required(req, "p"), scan);
    if (id == "homogeneous") {
      const std::string mode = str_or(req, "mode", "power-closed-form");
      if (mode != "power-closed-form" && mode != "empirical")
        throw ConfigError("mode", "expected power-closed-form or empirical");
      const GaugeSpec s1{phi("phi1"), weight("u1")};
      const GaugeSpec s2{phi("phi2"), weight("u2")};
      std::vector<GridFunction> family;
      if (mode == "empirical") {
        FamilySpec fs;
        if (req.contains("family")) fs.size = count_field(req["family"], "family.size", 0, 1e6);
        for (auto& m : make_family(fs, window, grid_n)) family.push_back(std::move(m.f));
      }
      return homogeneous_check(kernel(), s1, s2,
                               mode == "empirical" ? DilationMode::Empirical
                                                   : DilationMode::PowerClosedForm,
                               family, scan);
    }
  } catch (const DomainError& e) {
    throw ConfigError(id, e.what());
  }
  throw ConfigError("id", "unknown condition '" + id + "'");
}

std::vector<OneilRow> oneil_compare(const Profile& k, const GridFunction& f,
                                    std::span<const double> xs, OneilConvention conv,
                                    const Window& w, std::size_t kernel_cells) {
  const auto edges = log_edges(w.lo, w.hi, kernel_cells);
  const KernelGrid kg = KernelGrid::sample(KernelFamily::radial(k), edges, edges);
  const GridFunction tf = apply(kg, f);
  const GridFunction fs = rearrange(f);
  const double c = conv == OneilConvention::Sqrt ? 1.0 : 2.0 / std::sqrt(std::acos(-1.0));

  // int over the cells of f* of h(y) f*(y), on the log quadrature grid: the
  // integrands concentrate near y = 0 on a scale 1/x, far below a cell width.
  const QuadOptions qo{w, 8, {}};
  auto against_fs = [&](auto&& h) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const double v = fs.value(j);
      if (v == 0.0) continue;
      acc.add(v * integrate(h, fs.edge(j), fs.edge(j + 1), qo).value);
    }
    return acc.value();
  };

  std::vector<OneilRow> rows(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    rows[i].x = x;
    rows[i].lhs = maximal(tf, x);
    rows[i].direct = against_fs([&](double y) { return k.value(std::sqrt(x * x + y * y)); });
    rows[i].oneil = against_fs([&](double y) { return k.value(c * std::sqrt(x * y)); });
  }
  return rows;
}

json oneil_json(const json& req) {
  if (!req.is_object()) throw ConfigError("request", "expected a JSON object");
  const Window window = req.contains("window") ? window_field(req["window"], "window") : Window{};
  const SpecContext ctx{window, req.contains("grid_n")
                                    ? count_field(req["grid_n"], "grid_n", 16, 1 << 20)
                                    : kDefaultCells};
  const Profile k = parse_profile(str_or(req, "k", "exp:c=1"), "k");
  const GridFunction f = parse_function(str_or(req, "f", "indicator:a=0,b=1"), "f", ctx);
  std::vector<double> xs;
  if (req.contains("xs")) {
    for (const auto& v : req["xs"]) {
      const double x = number_field(v, "xs");
      if (!(x > 0.0)) throw ConfigError("xs", "must be positive");
      xs.push_back(x);
    }
  } else {
    xs = log_points(1e-3, 1e3, 13);
  }
  const std::string conv = str_or(req, "convention", "sqrt");
  if (conv != "sqrt" && conv != "exact") throw ConfigError("convention", "expected sqrt or exact");
  const auto rows = oneil_compare(k, f, xs,
                                  conv == "sqrt" ? OneilConvention::Sqrt : OneilConvention::Exact,
                                  window);
  json out;
  out["convention"] = conv;
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back({{"x", num(r.x)}, {"lhs", num(r.lhs)}, {"direct_bound", num(r.direct)}, {"oneil_bound", num(r.oneil)}});
  out["rows"] = arr;
  return out;
}

}  // namespace orlicz
