#pragma once

// Empirical best constants over a fixed test family, the O'Neil comparison,
// experiment configs and report emission.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/conditions.hpp"
#include "orlicz/specs.hpp"

namespace orlicz {

enum class Inequality {
  Main,             // rho1((T f)*) <= C rho2(f*)
  RearrangedInput,  // rho1(T f*) <= C rho2(f*)
  OperatorGauge,    // rho_{Phi1,u1}(w T f) <= C rho_{Phi2,u2}(u f)
  Power,            // ||(T f)*||_{q,u1} <= C ||f*||_{p,u2}
  Homogeneous,      // rho1(T f) <= C rho2(f)
};
std::optional<Inequality> parse_inequality(const std::string& s);
const char* to_string(Inequality i);

struct FamilySpec {
  std::size_t size = 51;
  std::uint64_t seed = 1;
};

struct FamilyMember {
  std::string name;
  GridFunction f;
};

/// 12 indicators chi_(0,a), 9 truncated powers y^-a (a = 0.1..0.9) on
/// [lo, hi/100], 6 exponentials e^-cy (c = 0.01..1000), then seeded random
/// steps, every third one nonincreasing.  A family of size n is the first n
/// members of this sequence, so larger families contain smaller ones.
std::vector<FamilyMember> make_family(const FamilySpec& spec, const Window& w,
                                      std::size_t cells = kDefaultCells);

struct ExperimentConfig {
  Inequality inequality = Inequality::Main;
  std::string kernel = "hardy-averaging";
  std::string phi1 = "power:p=2";
  std::string phi2 = "power:p=2";
  std::string u1 = "one";
  std::string u2 = "one";
  std::string w = "one";  // multipliers of the operator-gauge form
  std::string u = "one";
  std::optional<double> p, q, lambda;
  FamilySpec family;
  std::size_t grid_n = kDefaultCells;
  std::size_t kernel_grid_n = kDefaultKernelCells;
  Window window;
  int windows_nested = 3;
  std::string check = "auto";  // condition id, "auto" or "none"
};

/// Validates every field; errors are ConfigError naming the field.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_json(const ExperimentConfig& c);

/// Windows sharing the centre of `w` whose log-widths double, the last one `w`.
std::vector<Window> nested_around(const Window& w, int count);

struct MemberResult {
  std::string member;
  double ratio = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  std::string flag;  // "", "zero-denominator" or "infinite"
};

struct WindowResult {
  Window window;
  std::vector<MemberResult> members;
  double c_hat = 0.0;
  std::string argmax;
  std::size_t skipped = 0;
  std::size_t infinite = 0;
};

enum class Trend { Stable, Growing, Inconclusive };
const char* to_string(Trend t);
/// Stable when the last step grows less than 10%, growing when every step
/// grows at least 2x.
Trend trend_of(const std::vector<double>& per_window);

struct Report {
  ExperimentConfig config;
  std::vector<WindowResult> windows;  // nested, widest last
  double c_hat = 0.0;                 // on the widest window
  std::string argmax;
  std::vector<double> c_hat_per_window;
  std::vector<double> growth;
  Trend trend = Trend::Inconclusive;
  std::optional<ConditionReport> check;
  std::string cross_check;
  std::vector<std::string> notes;
  int threads = 1;
  double seconds = 0.0;
};

Report empirical_best_constant(const ExperimentConfig& c);

/// Numbers at 12 significant digits; infinities as the string "inf".
nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const Report& r);
/// window,member,ratio,numerator,denominator
std::string to_csv(const Report& r);
/// Writes report.json and report.csv into `dir`.
void write_report(const Report& r, const std::string& dir);

/// Runs a condition checker from a request with fields id, kernel, phi1,
/// phi2, u1, u2, t, u, v, w, p, q, window, windows.
ConditionReport run_check(const nlohmann::json& request);

enum class OneilConvention { Sqrt, Exact };

struct OneilRow {
  double x = 0.0;
  double lhs = 0.0;    // (T_K f)**(x)
  double direct = 0.0;  // int k(sqrt(x^2 + y^2)) f*(y) dy
  double oneil = 0.0;  // int K*(x y) f*(y) dy
};

/// K*(t) = k(sqrt t) in the sqrt convention, k(2 sqrt(t / pi)) for the
/// exact rearrangement of the quarter-plane kernel.
std::vector<OneilRow> oneil_compare(const Profile& k, const GridFunction& f,
                                    std::span<const double> xs,
                                    OneilConvention conv = OneilConvention::Sqrt,
                                    const Window& w = Window{},
                                    std::size_t kernel_cells = kDefaultKernelCells);

nlohmann::json oneil_json(const nlohmann::json& request);

}  // namespace orlicz
