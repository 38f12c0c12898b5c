#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/orlicz.h"

namespace {

std::string tmp_dir() {
  const char* d = std::getenv("ORLICZ_TEST_TMP");
  return d ? d : ".";
}

std::string take(char* s) {
  std::string out = s ? s : "";
  og_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("functions through handles") {
  const double edges[] = {0.0, 1.0, 3.0};
  const double values[] = {1.0, 4.0};
  og_function* f = nullptr;
  REQUIRE(og_function_from_cells(edges, values, 2, &f) == OG_OK);
  CHECK(og_function_size(f) == 2);
  double v = 0.0;
  CHECK(og_function_integral(f, &v) == OG_OK);
  CHECK(v == 9.0);
  CHECK(og_function_distribution(f, 2.0, &v) == OG_OK);
  CHECK(v == 2.0);
  CHECK(og_function_maximal(f, 2.5, &v) == OG_OK);
  CHECK(v == doctest::Approx(8.5 / 2.5));

  og_function* fs = nullptr;
  REQUIRE(og_function_rearrange(f, &fs) == OG_OK);
  std::vector<double> e(3), w(2);
  REQUIRE(og_function_cells(fs, e.data(), w.data()) == OG_OK);
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 2.0);
  CHECK(w[0] == 4.0);
  char* text = nullptr;
  REQUIRE(og_function_to_text(fs, &text) == OG_OK);
  CHECK(take(text).find("0 2 4") == 0);
  og_function_free(fs);
  og_function_free(f);
}

TEST_CASE("gauge norm through the C interface") {
  og_function* f = nullptr;
  REQUIRE(og_function_from_spec("indicator:a=0,b=1", 1e-6, 1e6, 1024, &f) == OG_OK);
  og_nfunction* phi = nullptr;
  og_weight* u = nullptr;
  REQUIRE(og_nfunction_from_spec("power:p=2", &phi) == OG_OK);
  REQUIRE(og_weight_from_spec("one", &u) == OG_OK);
  double g = 0.0;
  REQUIRE(og_gauge_norm(f, phi, u, &g) == OG_OK);
  CHECK(g == doctest::Approx(std::sqrt(1.0 - 1e-6)).epsilon(1e-10));  // grid starts at 1e-6
  REQUIRE(og_gauge_norm_spec(f, "gauge(phi=power:p=2,u=one)", &g) == OG_OK);
  CHECK(g == doctest::Approx(std::sqrt(1.0 - 1e-6)).epsilon(1e-10));
  og_nfunction* psi = nullptr;
  REQUIRE(og_nfunction_complementary(phi, &psi) == OG_OK);
  double y = 0.0;
  CHECK(og_nfunction_value(psi, 2.0, &y) == OG_OK);
  CHECK(y == doctest::Approx(1.0));
  CHECK(og_nfunction_inverse(phi, 9.0, &y) == OG_OK);
  CHECK(y == doctest::Approx(3.0));
  CHECK(og_weight_cumulative(u, 5.0, &y) == OG_OK);
  CHECK(y == doctest::Approx(5.0));
  og_nfunction_free(psi);
  og_nfunction_free(phi);
  og_weight_free(u);
  og_function_free(f);
}

TEST_CASE("kernels through the C interface") {
  og_kernel* k = nullptr;
  REQUIRE(og_kernel_from_spec("sum:k=exp:c=1", 1e-3, 1e3, 64, &k) == OG_OK);
  og_kernel* l = nullptr;
  REQUIRE(og_kernel_iterated_rearrangement(k, &l) == OG_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(og_kernel_to_text(k, &a) == OG_OK);
  REQUIRE(og_kernel_to_text(l, &b) == OG_OK);
  const std::string ta = take(a), tb = take(b);
  CHECK(std::count(ta.begin(), ta.end(), '\n') == 64 * 64);
  CHECK(std::count(tb.begin(), tb.end(), '\n') == 64 * 64);
  og_function* f = nullptr;
  og_function* tf = nullptr;
  REQUIRE(og_function_from_spec("one", 1e-3, 1e3, 64, &f) == OG_OK);
  REQUIRE(og_kernel_apply(k, f, &tf) == OG_OK);
  CHECK(og_function_size(tf) == 64);
  og_function_free(tf);
  og_function_free(f);
  og_kernel_free(l);
  og_kernel_free(k);
}

TEST_CASE("errors carry a status and a message") {
  og_function* f = nullptr;
  CHECK(og_function_from_spec("wiggle:a=1", 1e-6, 1e6, 64, &f) == OG_ERR_CONFIG);
  CHECK(std::string(og_last_error()).find("function") != std::string::npos);
  CHECK(f == nullptr);
  CHECK(og_function_from_spec("one", 5.0, 1.0, 64, &f) == OG_ERR_CONFIG);
  CHECK(og_function_from_spec(nullptr, 1e-6, 1e6, 64, &f) == OG_ERR_INVALID_ARGUMENT);
  og_nfunction* phi = nullptr;
  CHECK(og_nfunction_from_spec("power:p=0.5", &phi) != OG_OK);
  CHECK(og_function_from_file("no/such/file", &f) == OG_ERR_IO);
  double v = 0.0;
  CHECK(og_function_maximal(nullptr, 1.0, &v) == OG_ERR_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(og_check_json("{\"id\":\"hlp\",\"kernel\":\"hardy-indicator\"}", &out) == OG_ERR_CONFIG);
  CHECK(og_check_json("not json", &out) == OG_ERR_CONFIG);
  CHECK(std::string(og_version()).size() > 0);
}

TEST_CASE("checks and experiment runs return JSON") {
  char* out = nullptr;
  REQUIRE(og_check_json("{\"id\":\"hlp\",\"kernel\":\"hilbert\",\"p\":2}", &out) == OG_OK);
  const auto j = nlohmann::json::parse(take(out));
  CHECK(j["value"].get<double>() == doctest::Approx(std::acos(-1.0)).epsilon(1e-2));

  const std::string dir = tmp_dir();
  const char* cfg =
      "{\"inequality\":\"rearranged-input\",\"kernel\":\"hardy-averaging\",\"family\":{\"size\":15},"
      "\"grid_n\":512}";
  REQUIRE(og_run_config_json(cfg, dir.c_str(), &out) == OG_OK);
  const auto r = nlohmann::json::parse(take(out));
  CHECK(r["c_hat"].get<double>() <= 2.0);
  std::ifstream csv(dir + "/report.csv");
  std::string header;
  std::getline(csv, header);
  CHECK(header == "window,member,ratio,numerator,denominator");
  CHECK(og_run_config_json("{\"family\":{\"size\":0}}", nullptr, nullptr) == OG_ERR_CONFIG);
  CHECK(std::string(og_last_error()).rfind("family.size", 0) == 0);
  CHECK(og_run_config("no/such/config.json", nullptr, nullptr) == OG_ERR_IO);
}
