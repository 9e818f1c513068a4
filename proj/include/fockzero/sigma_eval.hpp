#pragma once

#include <complex>
#include <limits>

#include "fockzero/lattice.hpp"
#include "fockzero/zeta_tails.hpp"

namespace fockzero {

/// Controls the truncation of the infinite products. The index box starts at
/// half-width m_min and is doubled until two consecutive (tail-corrected)
/// sums differ by less than tol.
struct TruncationPolicy {
  int m_min = 16;
  double tol = 1e-10;
  int max_doublings = 10;

  /// Throws InvalidArgument unless tol > 0, m_min >= 8, 1 <= max_doublings <= 16.
  void validate() const;
};

/// A log-magnitude with an estimate of its absolute truncation error.
/// at_zero marks an exact hit of the zero set, where log_mag is -infinity.
struct WeightedLogValue {
  double log_mag = 0.0;
  double err_est = 0.0;
  bool at_zero = false;

  static WeightedLogValue zero() noexcept {
    return {-std::numeric_limits<double>::infinity(), 0.0, true};
  }
};

/// G_4 = sum' (m + in)^{-4} over the unit square lattice (= varpi^4 / 15).
inline constexpr long double kSquareLatticeG4 = 3.15121200215389753821768994225L;
/// G_8 = 3 G_4^2 / 7 for the unit square lattice.
inline constexpr long double kSquareLatticeG8 = 4.25577303536518951844715468074L;

/// log|sigma_a(z)| for the genus-2 Weierstrass product over a(Z + iZ),
///     sigma_a(z) = z prod' (1 - z/l) exp(z/l + z^2/(2 l^2)),
/// summed over concentric square shells with the factors for l and -l
/// paired, so the result is bit-identical under z -> -z. The box tail is
/// completed analytically through order z^8 using G_4 and G_8; the remaining
/// tail is O(|z|^12 / M^10).
WeightedLogValue log_sigma(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy);

/// log|sigma_a(z)| - (alpha/2)|z|^2, periodic under lattice translations.
WeightedLogValue log_weighted_sigma(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy);

/// log|sigma_{a,R}(z)| by direct box summation over the perturbed lattice:
/// linear factors and first-order exponents use the shifted points w, the
/// second-order exponent keeps the unshifted z_{m,n}.
WeightedLogValue log_modified_sigma_direct(const LatticeSpec& spec, Complex z,
                                           const TruncationPolicy& policy);

/// log prod_{m>=1} |(1 - (z/w_m)^2) / (1 - (z/z_m)^2)|, w_m = a(m+R), z_m = am.
/// Throws DomainPole within 1e-9 a of aZ \ {0}.
WeightedLogValue log_row_ratio(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy);

/// log|sigma_{a,R}(z)| as log|sigma_a(z)| + log_row_ratio(z).
/// Throws DomainPole within 1e-9 a of aZ \ {0}.
WeightedLogValue log_modified_sigma_ratio(const LatticeSpec& spec, Complex z,
                                          const TruncationPolicy& policy);

/// log psi_R(z), psi_R(z) = prod_{m>=1} |(m + R - z)/(m - z)| m/(m + R).
/// R == 0 gives the empty product. Throws DomainPole within 1e-9 of a
/// positive integer.
WeightedLogValue log_psi(double r_shift, Complex z, const TruncationPolicy& policy);

/// M_R = sum_{m>=1} R(2m+R) / (m^2 (m+R)^2) = sum (1/m^2 - 1/(m+R)^2).
double m_r_constant(double r_shift, double tol = 1e-14);

/// Fast evaluator of log|sigma_{a,R}(z)| - (alpha/2)|z|^2 for dense grids.
/// Uses the lattice periodicity of the weighted sigma_a to reduce z to the
/// fundamental cell, then adds the row ratio. Tail coefficients are built
/// once for radii up to max_radius; points on aZ \ {0} fall back to the
/// direct evaluator. Immutable after construction and safe to share.
class WeightedModifiedSigma {
 public:
  WeightedModifiedSigma(const LatticeSpec& spec, double max_radius, const TruncationPolicy& policy);

  WeightedLogValue operator()(Complex z) const;

  const LatticeSpec& spec() const noexcept { return spec_; }
  double max_radius() const noexcept { return max_radius_; }

 private:
  LatticeSpec spec_;
  TruncationPolicy policy_;
  double max_radius_;
  int cell_box_;
  long row_terms_;
  RowTail row_tail_;
  double cell_err_;
};

}  // namespace fockzero
