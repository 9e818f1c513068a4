#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "fockzero/fock_norm.hpp"
#include "fockzero/sigma_eval.hpp"
#include "fockzero/verify.hpp"

namespace fockzero {

/// One pass/fail check: pass iff value <= bound, unless `at_least` is set,
/// in which case pass iff value >= bound.
struct Assertion {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool at_least = false;
  bool pass = false;
};

/// Preformatted table, written as one CSV per check.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Assertion> assertions;
  std::vector<Table> tables;

  bool pass() const;
};

/// Parameters of the verification run. Radii are in units of the pitch
/// a = sqrt(pi / alpha); the shift applies to the scan checks, while the
/// norm dichotomy and zero placement use their own fixed R = 1.
struct AcceptanceConfig {
  double alpha = std::numbers::pi;
  double r_shift = 0.75;
  std::uint64_t seed = 7;
  /// Outer radius of the norm ladder in units of a.
  double rho_max = 32.0;
  int points_per_annulus = 300;
  TruncationPolicy policy;
  QuadratureSpec quadrature;

  /// Throws InvalidArgument on any violated positivity constraint.
  void validate() const;
};

CriterionResult criterion_membership(const AcceptanceConfig& cfg);

/// The standard annulus scan shared by criteria 2 and 3.
ScanGrid standard_scan_grid(const AcceptanceConfig& cfg);

/// Weighted ratio boundedness, drift, and the negative control derived from the
/// same samples with the growth factor removed.
CriterionResult criterion_weighted_ratio(const AcceptanceConfig& cfg, const RatioReport& weighted_ratio);
/// Unperturbed distance estimate, plus the ratio-product scan and the
/// pointwise identity tying the three scans together.
CriterionResult criterion_sigma_distance(const AcceptanceConfig& cfg, const RatioReport& sigma_distance,
                                         const RatioReport& weighted_ratio, const RatioReport& ratio_product);
CriterionResult criterion_two_method(const AcceptanceConfig& cfg);
CriterionResult criterion_identities(const AcceptanceConfig& cfg);
CriterionResult criterion_symmetries(const AcceptanceConfig& cfg);
CriterionResult criterion_density(const AcceptanceConfig& cfg);
CriterionResult criterion_counting(const AcceptanceConfig& cfg);
CriterionResult criterion_zero_set(const AcceptanceConfig& cfg);
/// Supplementary (id 0): the one-row comparison psi_R(z) against
/// d(z, Z+_R) / (d(z, Z+) (1+|z|)^R), R = 0.5, on annuli from 2 to 64.
CriterionResult criterion_psi_claim(const AcceptanceConfig& cfg);

/// Criteria 1 through 9 in order, then the supplementary psi check. Run-to-run determinism is checked by
/// comparing the outputs of two runs, outside this function.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg);

}  // namespace fockzero
