#include "orlicz/specs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "orlicz/error.hpp"

namespace orlicz {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n\r");
  return s.substr(b, e - b + 1);
}

double param(const SpecParts& s, const std::string& key, const std::string& field) {
  const auto it = s.params.find(key);
  if (it == s.params.end()) throw ConfigError(field, "'" + s.name + "' needs " + key + "=");
  return parse_number(it->second, field);
}

double param_or(const SpecParts& s, const std::string& key, double fallback,
                const std::string& field) {
  const auto it = s.params.find(key);
  return it == s.params.end() ? fallback : parse_number(it->second, field);
}

void only_keys(const SpecParts& s, std::initializer_list<const char*> keys,
               const std::string& field) {
  for (const auto& [k, v] : s.params) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw ConfigError(field, "unknown parameter '" + k + "' for '" + s.name + "'");
  }
}

std::uint64_t as_seed(double v, const std::string& field) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e15) throw ConfigError(field, "seed must be a nonnegative integer");
  return static_cast<std::uint64_t>(v);
}

}  // namespace

double parse_number(const std::string& text, const std::string& field) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* b = t.data();
  const char* e = t.data() + t.size();
  if (!t.empty() && *b == '+') ++b;
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (t.empty() || ec != std::errc() || ptr != e || !std::isfinite(v))
    throw ConfigError(field, "malformed number '" + text + "'");
  return v;
}

SpecParts split_spec(const std::string& spec, const std::string& field,
                     const std::vector<std::string>& nested) {
  SpecParts out;
  const std::string s = trim(spec);
  const auto colon = s.find(':');
  out.name = trim(s.substr(0, colon));
  if (out.name.empty()) throw ConfigError(field, "empty spec");
  if (colon == std::string::npos) return out;
  std::string rest = s.substr(colon + 1);
  while (!rest.empty()) {
    const auto eq = rest.find('=');
    if (eq == std::string::npos) throw ConfigError(field, "expected key=value in '" + spec + "'");
    const std::string key = trim(rest.substr(0, eq));
    if (std::find(nested.begin(), nested.end(), key) != nested.end()) {
      out.params[key] = trim(rest.substr(eq + 1));
      break;
    }
    const auto comma = rest.find(',', eq);
    out.params[key] = trim(rest.substr(eq + 1, comma == std::string::npos ? comma : comma - eq - 1));
    if (comma == std::string::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

NFunction parse_nfunction(const std::string& spec, const std::string& field) {
  const SpecParts s = split_spec(spec, field);
  try {
    if (s.name == "power") {
      only_keys(s, {"p", "c"}, field);
      return NFunction::power(param(s, "p", field), param_or(s, "c", 1.0, field));
    }
    if (s.name == "sampled") {
      only_keys(s, {"density", "path"}, field);
      if (auto it = s.params.find("path"); it != s.params.end()) return read_density_file(it->second);
      const auto it = s.params.find("density");
      if (it == s.params.end()) throw ConfigError(field, "'sampled' needs density= or path=");
      if (it->second == "expm1") return NFunction::from_density([](double t) { return std::expm1(t); });
      if (it->second == "sinh") return NFunction::from_density([](double t) { return std::sinh(t); });
      throw ConfigError(field, "unknown density '" + it->second + "'");
    }
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
  throw ConfigError(field, "unknown N-function '" + s.name + "'");
}

Profile parse_profile(const std::string& spec, const std::string& field) {
  const SpecParts s = split_spec(spec, field);
  if (s.name == "one") {
    only_keys(s, {}, field);
    return Profile::constant(1.0);
  }
  if (s.name == "const") {
    only_keys(s, {"c"}, field);
    const double c = param(s, "c", field);
    if (c < 0.0) throw ConfigError(field, "const needs c >= 0");
    return Profile::constant(c);
  }
  if (s.name == "indicator") {
    only_keys(s, {"a", "b"}, field);
    const double a = param_or(s, "a", 0.0, field);
    const double b = param(s, "b", field);
    if (!(a >= 0.0 && b > a)) throw ConfigError(field, "indicator needs 0 <= a < b");
    return Profile::indicator(a, b);
  }
  if (s.name == "power") {
    only_keys(s, {"a"}, field);
    const double a = param(s, "a", field);
    return Profile(PowerLaw{1.0, -a, 0.0, kInf}, spec);
  }
  if (s.name == "exp") {
    only_keys(s, {"c"}, field);
    const double c = param(s, "c", field);
    if (c < 0.0) throw ConfigError(field, "exp needs c >= 0");
    return Profile(Exponential{1.0, c}, spec);
  }
  if (s.name == "power_weight") {
    only_keys(s, {"alpha"}, field);
    const double a = param(s, "alpha", field);
    if (!(a > -1.0)) throw ConfigError(field, "power_weight needs alpha > -1");
    return Profile::power_weight(a);
  }
  if (s.name == "file") {
    only_keys(s, {"path"}, field);
    const auto it = s.params.find("path");
    if (it == s.params.end()) throw ConfigError(field, "'file' needs path=");
    return Profile(read_function_file(it->second), spec);
  }
  throw ConfigError(field, "unknown function '" + s.name + "'");
}

Weight parse_weight(const std::string& spec, const std::string& field, const SpecContext& ctx) {
  return Weight(parse_profile(spec, field), default_edges(ctx.window, ctx.cells));
}

GridFunction parse_function(const std::string& spec, const std::string& field,
                            const SpecContext& ctx) {
  const auto edges = default_edges(ctx.window, ctx.cells);
  const SpecParts s = split_spec(spec, field);
  if (s.name == "power") {
    only_keys(s, {"a"}, field);
    const double a = param(s, "a", field);
    return Profile(PowerLaw{1.0, -a, ctx.window.lo, ctx.window.hi}, spec).sample(edges);
  }
  if (s.name == "randomstep") {
    only_keys(s, {"seed", "cells"}, field);
    const auto seed = as_seed(param_or(s, "seed", 1.0, field), field);
    const double cells = param_or(s, "cells", 16.0, field);
    if (!(cells >= 1.0) || cells != std::floor(cells)) throw ConfigError(field, "cells must be a positive integer");
    return random_step(seed, static_cast<std::size_t>(cells), ctx.window, edges);
  }
  if (s.name == "file") {
    only_keys(s, {"path"}, field);
    const auto it = s.params.find("path");
    if (it == s.params.end()) throw ConfigError(field, "'file' needs path=");
    return read_function_file(it->second);
  }
  try {
    return parse_profile(spec, field).sample(edges);
  } catch (const DomainError& e) {
    throw ConfigError(field, e.what());
  }
}

KernelFamily parse_kernel(const std::string& spec, const std::string& field) {
  const SpecParts s = split_spec(spec, field, {"k", "profile"});
  if (s.name == "hardy-averaging") return KernelFamily::hardy_averaging();
  if (s.name == "hardy-indicator") return KernelFamily::hardy_indicator();
  if (s.name == "hilbert") return KernelFamily::hilbert();
  if (s.name == "box") return KernelFamily::box();
  if (s.name == "zero") return KernelFamily::custom([](double, double) { return 0.0; }, "zero");
  if (s.name == "power-radial") {
    only_keys(s, {"lambda"}, field);
    const double l = param(s, "lambda", field);
    if (!(l > 0.0)) throw ConfigError(field, "power-radial needs lambda > 0");
    return KernelFamily::power_radial(l);
  }
  if (s.name == "sum" || s.name == "radial") {
    only_keys(s, {"k"}, field);
    const auto it = s.params.find("k");
    if (it == s.params.end()) throw ConfigError(field, "'" + s.name + "' needs k=");
    Profile k = parse_profile(it->second, field + ".k");
    return s.name == "sum" ? KernelFamily::sum(std::move(k)) : KernelFamily::radial(std::move(k));
  }
  if (s.name == "homogeneous") {
    only_keys(s, {"profile"}, field);
    const auto it = s.params.find("profile");
    if (it == s.params.end()) throw ConfigError(field, "'homogeneous' needs profile=");
    return KernelFamily::homogeneous(parse_profile(it->second, field + ".profile"));
  }
  throw ConfigError(field, "unknown kernel '" + s.name + "'");
}

GaugeSpec parse_gauge(const std::string& spec, const std::string& field, const SpecContext& ctx) {
  const std::string s = trim(spec);
  if (s.rfind("gauge(", 0) != 0 || s.back() != ')')
    throw ConfigError(field, "expected gauge(phi=...,u=...)");
  const std::string body = s.substr(6, s.size() - 7);
  // Split on the ",u=" that starts the weight; the phi spec may contain commas.
  const auto upos = body.find(",u=");
  if (body.rfind("phi=", 0) != 0 || upos == std::string::npos)
    throw ConfigError(field, "expected gauge(phi=...,u=...)");
  const std::string phi = body.substr(4, upos - 4);
  const std::string u = body.substr(upos + 3);
  return GaugeSpec{parse_nfunction(phi, field + ".phi"), parse_weight(u, field + ".u", ctx)};
}

GridFunction random_step(std::uint64_t seed, std::size_t pieces, const Window& w,
                         const std::vector<double>& edges, bool nonincreasing) {
  std::mt19937_64 rng(seed);
  const double lo = std::max(1e-3, w.lo);
  const double hi = std::min(1e3, w.hi);
  std::vector<double> br{lo, hi};
  for (std::size_t i = 1; i < pieces; ++i) br.push_back(log_uniform(rng, lo, hi));
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  std::vector<double> vals(br.size() - 1);
  for (auto& v : vals) v = uniform01(rng);
  if (nonincreasing) std::sort(vals.begin(), vals.end(), std::greater<>());
  return resample(GridFunction(br, vals), edges);
}

GridFunction read_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> edges, widths, values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ss(t);
    std::string a, b, c;
    ss >> a >> b >> c;
    const std::string where = path + ":" + std::to_string(lineno);
    const double lo = parse_number(a, where), hi = parse_number(b, where), v = parse_number(c, where);
    if (!(hi > lo) || v < 0.0) throw ConfigError(where, "need lo < hi and value >= 0");
    if (edges.empty()) {
      edges.push_back(lo);
    } else if (lo != edges.back()) {
      throw ConfigError(where, "cells must be contiguous");
    }
    edges.push_back(hi);
    widths.push_back(hi - lo);
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError(path, "no cells");
  return GridFunction(std::move(edges), std::move(widths), std::move(values));
}

void write_function(std::ostream& os, const GridFunction& f) {
  char buf[96];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", f.edge(i), f.edge(i + 1), f.value(i));
    os << buf;
  }
}

std::string function_text(const GridFunction& f) {
  std::ostringstream os;
  write_function(os, f);
  return os.str();
}

NFunction read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::vector<double> t, phi;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::istringstream ss(s);
    std::string a, b;
    ss >> a >> b;
    const std::string where = path + ":" + std::to_string(lineno);
    t.push_back(parse_number(a, where));
    phi.push_back(parse_number(b, where));
  }
  try {
    return NFunction::sampled(std::move(t), std::move(phi));
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace orlicz
