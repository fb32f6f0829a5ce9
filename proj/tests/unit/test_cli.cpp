#include <sstream>
#include <stdexcept>
#include <vector>
#include <string>

#include "casimir/commands.hpp"
#include "casimir/run_config.hpp"
#include "doctest.h"

using namespace casimir::cli;

namespace {

std::string run_to_string(const RunConfig& cfg, bool* converged = nullptr) {
  std::ostringstream out;
  const bool ok = run(cfg, out);
  if (converged) *converged = ok;
  return out.str();
}

std::string value_of(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + " = ", 0) == 0) return line.substr(key.size() + 3);
  }
  return {};
}

}  // namespace

TEST_CASE("config file then flag overrides") {
  std::istringstream file(
      "# geometry\n"
      "lambda-p = 136\n"
      "L = 50, 100,200   # three separations\n"
      "a1=20\n"
      "\n"
      "rel-tol = 1e-6\n"
      "log-spacing = true\n");
  RunConfig cfg;
  cfg.load(file);
  CHECK(cfg.L == std::vector<double>{50.0, 100.0, 200.0});
  CHECK(cfg.a1 == 20.0);
  CHECK(cfg.a2 == 8.0);
  CHECK(cfg.log_spacing);
  CHECK(cfg.quadrature().rel_tol == 1e-6);
  cfg.apply("a1", "30");
  CHECK(cfg.a1 == 30.0);
  for (const auto& key : config_keys()) CHECK_FALSE(key.empty());
}

TEST_CASE("config errors are usage errors") {
  RunConfig cfg;
  CHECK_THROWS_AS(cfg.apply("nope", "1"), UsageError);
  CHECK_THROWS_AS(cfg.apply("a1", "12x"), UsageError);
  CHECK_THROWS_AS(cfg.apply("points", "2.5"), UsageError);
  std::istringstream bad("a1 20\n");
  CHECK_THROWS_WITH_AS(cfg.load(bad, "f.cfg"), "f.cfg:1: expected key = value", UsageError);
  CHECK_THROWS_AS(cfg.load_file("/nonexistent/casimir.cfg"), UsageError);

  RunConfig both;
  both.apply("lambda-c", "1200");
  both.apply("k", "0.009");
  CHECK_THROWS_AS(both.validate(), UsageError);
  both.apply("k", "0.00523598775598");
  CHECK_NOTHROW(both.validate());

  RunConfig tol;
  tol.apply("rel-tol", "1e-12");
  CHECK_THROWS_AS(tol.validate(), UsageError);
  RunConfig neg;
  neg.apply("L", "100,-5");
  CHECK_THROWS_AS(neg.validate(), UsageError);
}

TEST_CASE("wavenumber, mismatch and separation defaults") {
  RunConfig cfg;
  CHECK(cfg.wavenumber() == doctest::Approx(2.0 * 3.141592653589793 / 1200.0));
  CHECK(cfg.mismatch(0.01) == doctest::Approx(157.0796326794897));
  cfg.apply("b", "12");
  CHECK(cfg.mismatch(0.01) == 12.0);
  CHECK(cfg.separation(221.0) == 221.0);
  cfg.apply("L", "1,2");
  CHECK_THROWS_AS(cfg.separation(221.0), UsageError);
}

TEST_CASE("spacing and number format") {
  const auto lin = spaced(0.0, 0.03, 4, false);
  CHECK(lin.size() == 4);
  CHECK(lin[1] == doctest::Approx(0.01));
  const auto lg = spaced(100.0, 1000.0, 3, true);
  CHECK(lg[1] == doctest::Approx(316.227766));
  CHECK(lg.back() == doctest::Approx(1000.0));
  CHECK(fmt(0.125) == "0.125");
  CHECK(fmt(1.0 / 3.0) == "0.333333333");
  CHECK_THROWS_AS(spaced(0.0, 1.0, 0, false), UsageError);
}

TEST_CASE("rho command output") {
  RunConfig cfg;
  cfg.command = "rho";
  cfg.apply("k-max", "0.01");
  cfg.apply("points", "3");
  cfg.apply("rel-tol", "1e-4");
  bool converged = false;
  const std::string text = run_to_string(cfg, &converged);
  CHECK(converged);
  std::istringstream in(text);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "k_nm_inv,rho,rho_error");
  CHECK(first == "0,1,0");
  CHECK(second.rfind("0.005,0.8", 0) == 0);
  CHECK(text.find("# converged = true") != std::string::npos);
  CHECK(run_to_string(cfg) == text);

  cfg.apply("L", "50,200");
  cfg.apply("points", "2");
  const std::string batch = run_to_string(cfg);
  CHECK(batch.rfind("L_nm,k_nm_inv,rho,rho_error\n50,0,1,0\n", 0) == 0);
}

TEST_CASE("plane-plane command") {
  RunConfig cfg;
  cfg.command = "plane-plane";
  cfg.apply("lambda-p", "1");
  cfg.apply("L", "1000");
  const std::string text = run_to_string(cfg);
  CHECK(std::stod(value_of(text, "e_over_perfect")) == doctest::Approx(1.0).epsilon(0.005));
  CHECK(std::abs(std::stod(value_of(text, "d1e_fd_rel_diff"))) < 1e-5);
  CHECK(value_of(text, "signs_ok") == "true");
  CHECK(value_of(text, "converged") == "true");
}

TEST_CASE("invalid requests") {
  RunConfig cfg;
  cfg.command = "nonsense";
  CHECK_THROWS_AS(run_to_string(cfg), UsageError);
  cfg.command = "force-vs-k";
  cfg.apply("k-min", "0");
  CHECK_THROWS_AS(run_to_string(cfg), UsageError);
  RunConfig empty;
  empty.command = "rho";
  empty.apply("k-min", "0.02");
  empty.apply("k-max", "0.01");
  CHECK_THROWS_AS(run_to_string(empty), UsageError);
  RunConfig with_b;
  with_b.command = "force-vs-L";
  with_b.apply("b", "10");
  CHECK_THROWS_AS(run_to_string(with_b), UsageError);
}
