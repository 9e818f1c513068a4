#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fockzero/lattice.hpp"
#include "fockzero/sigma_eval.hpp"

namespace fockzero {

struct Annulus {
  double r_in = 0.0;
  double r_out = 0.0;
};

/// Deterministic quasi-random placement: per annulus, a Cranley-Patterson
/// rotated R2 sequence mapped to area-uniform polar coordinates. The first N
/// points of a grid with 2N points per annulus are the N-point grid.
struct ScanGrid {
  std::vector<Annulus> annuli;
  int points_per_annulus = 300;
  /// Points closer than this to the relevant set are skipped.
  double exclusion_radius = 0.05;
  std::uint64_t seed = 7;

  /// Throws InvalidArgument unless annuli are disjoint and increasing and
  /// 0 <= exclusion_radius < a/2.
  void validate(double a) const;
};

struct ScanPoint {
  std::size_t index = 0;
  std::size_t annulus = 0;
  Complex z;
};

std::vector<ScanPoint> scan_points(const ScanGrid& grid);

/// Annuli [0.5,1], [1,2.5], [2.5,5], [5,10], [10,15], [15,20], [20,25],
/// scaled by the pitch.
std::vector<Annulus> standard_annuli(double a);

/// log(lhs / rhs) at one point with the truncation error of lhs.
struct LogRatio {
  double value = 0.0;
  double err_est = 0.0;
};

struct RatioSample {
  std::size_t index = 0;
  std::size_t annulus = 0;
  Complex z;
  double log_ratio = 0.0;
  double err_est = 0.0;
};

struct AnnulusStats {
  Annulus annulus;
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

/// Boundedness statistics of a positive ratio over a scan.
struct RatioReport {
  double global_min = 0.0;
  double global_max = 0.0;
  std::vector<AnnulusStats> per_annulus;
  std::size_t n_points_used = 0;
  std::size_t n_points_excluded = 0;
  /// Used points in scan order.
  std::vector<RatioSample> samples;

  double spread() const { return global_max / global_min; }
  /// Largest ratio between two annulus medians, taken >= 1.
  double median_drift(std::size_t annulus_a, std::size_t annulus_b) const;
  /// Index of the annulus equal to [r_in, r_out] (relative tolerance 1e-12).
  std::size_t annulus_index(double r_in, double r_out) const;
};

/// Builds statistics from per-point log ratios. Samples are kept in the
/// given order; medians average the two middle values of an even count.
RatioReport summarize_ratios(std::span<const Annulus> annuli, std::vector<RatioSample> samples,
                             std::size_t n_excluded);

// Pointwise log ratios. Each returns nullopt when z is inside the exclusion
// radius of the set on which both sides vanish or blow up.

/// |sigma_a(z)| e^{-alpha|z|^2/2} / d(z, Lambda).
std::optional<LogRatio> sigma_distance_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                                 const TruncationPolicy& policy);

enum class GrowthFactor { included, omitted };

/// |sigma_{a,R}(z)| e^{-alpha|z|^2/2} (1+|z|)^{2R} / d(z, Lambda_R), direct
/// product. GrowthFactor::omitted drops (1+|z|)^{2R} (negative control).
std::optional<LogRatio> weighted_ratio_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                         const TruncationPolicy& policy,
                                         GrowthFactor growth = GrowthFactor::included);

/// psi_R(z) d(z, Z+) (1+|z|)^R / d(z, Z+_R) with Z+ = {0, 1, 2, ...} and
/// Z+_R = Z+ + R.
std::optional<LogRatio> psi_claim_log_ratio(double r_shift, Complex z, double exclusion,
                                            const TruncationPolicy& policy);

/// prod_m |(1-(z/w_m)^2)/(1-(z/z_m)^2)| d(z,Lambda) (1+|z|)^{2R} / d(z,Lambda_R).
std::optional<LogRatio> ratio_product_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                                const TruncationPolicy& policy);

/// Distances from z to Z+ = {0, 1, ...} and to Z+_R = {R, 1+R, ...}.
double distance_to_nonnegative_integers(Complex z);
double distance_to_shifted_integers(Complex z, double r_shift);

RatioReport check_sigma_distance(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy);
RatioReport check_weighted_ratio(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy,
                         GrowthFactor growth = GrowthFactor::included);
RatioReport check_psi_claim(double r_shift, const ScanGrid& grid, const TruncationPolicy& policy);
RatioReport check_ratio_product(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy);

/// Largest |log weighted_ratio - (log sigma_distance + log ratio_product)| over the
/// points used by all three reports, and the largest summed err_est there.
struct CrossIdentity {
  std::size_t shared_points = 0;
  double max_abs_error = 0.0;
  double max_err_est = 0.0;
  /// Largest excess of |error| over its allowance err_est + 1e-6.
  double worst_excess = 0.0;
};
CrossIdentity cross_identity(const RatioReport& weighted_ratio, const RatioReport& sigma_distance,
                             const RatioReport& ratio_product);

/// max over z of |log psi_R(z) - log(psi_beta(z - [R]) prod_{m<=[R]} (m+beta)/|m-z|)|,
/// beta = R - [R]. Requires R > 1.
double check_reduction_identity(double r_shift, std::span<const Complex> samples,
                                const TruncationPolicy& policy);

/// |sum_{0<|m|<=terms} (1/(2 w_m^2) - 1/(2 z_m^2)) + M_R / a^2|.
double check_hadamard_correction(const LatticeSpec& spec, long terms = 10000);

}  // namespace fockzero
