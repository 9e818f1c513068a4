#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "fockzero/cli.hpp"
#include "fockzero/error.hpp"

using namespace fockzero;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv{"fockzero"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fockzero_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parsers") {
  CHECK(parse_point("-1,0") == Complex(-1.0, 0.0));
  CHECK(parse_point(" 0.5 , -2e-1 ") == Complex(0.5, -0.2));
  CHECK_THROWS_AS(parse_point("1"), InvalidArgument);
  CHECK_THROWS_AS(parse_point("1,x"), InvalidArgument);
  CHECK(parse_real_list("2,0.5,1") == std::vector<double>{2.0, 0.5, 1.0});
  CHECK_THROWS_AS(parse_real_list("2,,1"), InvalidArgument);
}

TEST_CASE("config text") {
  RunConfig cfg;
  apply_config_text(cfg, "# comment\nalpha = 0.7853981633974483\nR=1.5\n\np = 2, 0.5\nseed=11\ntol=1e-9\n");
  CHECK(cfg.alpha == doctest::Approx(std::numbers::pi / 4.0));
  CHECK(cfg.r_shift == 1.5);
  CHECK(cfg.p_exponents == std::vector<double>{2.0, 0.5});
  CHECK(cfg.seed == 11);
  CHECK(cfg.policy.tol == 1e-9);
  CHECK(cfg.pitch() == doctest::Approx(2.0));
  CHECK(cfg.resolved_rho_max() == doctest::Approx(64.0));
  CHECK_THROWS_AS(apply_config_text(cfg, "beta = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(apply_config_text(cfg, "alpha 1\n"), InvalidArgument);
  RunConfig bad;
  bad.r_shift = 0.0;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("r_shift > 0"), InvalidArgument);
}

TEST_CASE("eval subcommands") {
  const Run psi = run({"eval", "psi", "-1,0", "--R", "0.5"});
  REQUIRE(psi.code == 0);
  const auto rows = lines(psi.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "z_re,z_im,log_mag,err_est,at_zero,status");
  CHECK(std::stod(split(rows[1])[2]) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-6));

  const Run sigma = run({"eval", "sigma", "0,0"});
  REQUIRE(sigma.code == 0);
  CHECK(split(lines(sigma.out)[1])[4] == "true");

  const Run modified = run({"eval", "modified", "1,0", "2,0", "--R", "1"});
  REQUIRE(modified.code == 0);
  const auto m1 = split(lines(modified.out)[1]);
  CHECK(m1[4] == "false");
  CHECK(std::isfinite(std::stod(m1[2])));
  CHECK(split(lines(modified.out)[2])[4] == "true");

  const Run pole = run({"eval", "psi", "3,0"});
  CHECK(pole.code == 0);
  CHECK(split(lines(pole.out)[1])[5] == "domain_pole");
}

TEST_CASE("eval writes a CSV when an output directory is given") {
  const fs::path dir = scratch("eval");
  const Run r = run({"eval", "sigma", "0.5,0.5", "--out", dir.c_str()});
  REQUIRE(r.code == 0);
  CHECK(slurp(dir / "eval_sigma.csv") == r.out);
  fs::remove_all(dir);
}

TEST_CASE("configuration and parse errors exit with code 2") {
  const Run zero = run({"verify", "--R", "0"});
  CHECK(zero.code == 2);
  CHECK(zero.err.find("r_shift > 0") != std::string::npos);
  CHECK(run({"eval", "sigma", "abc"}).code == 2);
  CHECK(run({"eval", "gamma", "1,0"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"norm", "--alpha", "-1"}).code == 2);
  CHECK(run({"norm", "--config", "/nonexistent/fockzero.cfg"}).code == 2);
  // Too few dyadic annuli beyond 4a for a fit.
  CHECK(run({"norm", "--rho-max", "8", "--out", scratch("short").c_str()}).code == 2);
  fs::remove_all(scratch("short"));
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch("override");
  fs::create_directories(dir);
  {
    std::ofstream f(dir / "run.cfg");
    f << "R = 0.5\nout = " << (dir / "from_file").string() << "\n";
  }
  const std::string cfg = (dir / "run.cfg").string();
  const Run file_only = run({"eval", "psi", "-1,0", "--config", cfg.c_str()});
  REQUIRE(file_only.code == 0);
  CHECK(std::stod(split(lines(file_only.out)[1])[2]) == doctest::Approx(std::log(2.0 / 3.0)).epsilon(1e-9));
  CHECK(fs::exists(dir / "from_file" / "eval_psi.csv"));
  const Run flagged = run({"eval", "psi", "-1,0", "--config", cfg.c_str(), "--R", "1"});
  CHECK(std::stod(split(lines(flagged.out)[1])[2]) == doctest::Approx(std::log(0.5)).epsilon(1e-9));
  fs::remove_all(dir);
}

TEST_CASE("density command writes both tables") {
  const fs::path dir = scratch("density");
  const Run r = run({"density", "--out", dir.c_str()});
  REQUIRE(r.code == 0);
  const auto est = lines(slurp(dir / "density_estimate.csv"));
  REQUIRE(est.size() == 3);
  CHECK(est[0] == "lattice,d_plus,d_minus,alpha_over_pi");
  for (std::size_t i = 1; i < 3; ++i) {
    const auto cells = split(est[i]);
    CHECK(std::abs(std::stod(cells[1]) - 1.0) <= 0.05);
    CHECK(std::abs(std::stod(cells[2]) - 1.0) <= 0.05);
  }
  CHECK(lines(slurp(dir / "density_profile.csv")).size() == 7);
  fs::remove_all(dir);
}

TEST_CASE("norm command reports exponent and verdict") {
  const fs::path dir = scratch("norm");
  const Run r = run({"norm", "--R", "1", "--p", "2", "--out", dir.c_str()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("verdict=convergent") != std::string::npos);
  const auto summary = lines(slurp(dir / "norm_summary.csv"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0] == "p,exponent,verdict,under_resolved_annuli");
  CHECK(std::abs(std::stod(split(summary[1])[1]) + 2.0) <= 0.3);
  CHECK(lines(slurp(dir / "norm_trace.csv")).size() == 7);
  fs::remove_all(dir);
}
