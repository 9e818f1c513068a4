#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "fockzero/fock_norm.hpp"
#include "fockzero/sigma_eval.hpp"

namespace fockzero {

/// Exit codes of the fockzero command.
enum ExitCode : int {
  kExitOk = 0,
  kExitAssertionFailed = 1,
  kExitConfigError = 2,
  kExitNumericalAdvisory = 3,
};

struct RunConfig {
  double alpha = std::numbers::pi;
  double r_shift = 0.75;
  std::vector<double> p_exponents{2.0};
  /// Absolute outer radius; unset means 32a.
  std::optional<double> rho_max;
  std::string output_dir = ".";
  std::uint64_t seed = 7;
  int points_per_annulus = 300;
  TruncationPolicy policy;
  QuadratureSpec quadrature;

  /// Throws InvalidArgument naming the violated constraint.
  void validate() const;
  double pitch() const;
  double resolved_rho_max() const;
};

/// Applies `key = value` lines to cfg. Blank lines and lines starting with
/// '#' are skipped. Keys: alpha, R, p, rho_max, seed, out,
/// points_per_annulus, tol, m_min, max_doublings, radial_step,
/// angular_step, angular_offset. Throws InvalidArgument on unknown keys or
/// unparsable values.
void apply_config_text(RunConfig& cfg, const std::string& text);

/// Comma-separated list of reals, e.g. "2,0.5".
std::vector<double> parse_real_list(const std::string& text);

/// "re,im" into a complex number.
Complex parse_point(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fockzero
