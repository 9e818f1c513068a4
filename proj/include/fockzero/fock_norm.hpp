#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "fockzero/lattice.hpp"
#include "fockzero/sigma_eval.hpp"

namespace fockzero {

/// Midpoint product rule in polar coordinates. Steps are in units of the
/// lattice pitch; radial panels live on a global grid k * radial_step, so
/// masses are additive over any partition whose cut points lie on that grid.
struct QuadratureSpec {
  double radial_step = 0.125;
  double angular_step = 0.125;
  /// Rotation of every angular grid, in radians.
  double angular_offset = 0.0;

  /// Throws InvalidArgument unless both steps lie in (0, 1/8].
  void validate() const;
  QuadratureSpec refined() const;
};

struct AnnulusMass {
  double r_in = 0.0;
  double r_out = 0.0;
  double mass = 0.0;
  /// Mass with both steps halved; equals mass when the check was skipped.
  double refined_mass = 0.0;
  double relative_change = 0.0;
  /// Refinement moved the mass by more than 5%. Advisory only.
  bool under_resolved = false;
};

struct NormTrace {
  double p = 0.0;
  /// Lattice pitch, the unit for the 4a fitting cutoff.
  double pitch = 1.0;
  std::vector<AnnulusMass> annuli;
  std::vector<double> cumulative;
};

enum class Verdict { convergent, divergent, borderline };
std::string_view to_string(Verdict v);

/// |sigma_{a,R}(z)|^p e^{-p alpha |z|^2 / 2} from the direct product; 0 on Lambda_R.
double weighted_integrand(const LatticeSpec& spec, double p, Complex z, const TruncationPolicy& policy);

/// (p alpha / 2 pi) * integral over r_in <= |z| < r_out of the weighted integrand.
AnnulusMass annulus_mass(const LatticeSpec& spec, double p, double r_in, double r_out,
                         const QuadratureSpec& quad, const TruncationPolicy& policy,
                         bool check_resolution = true);

/// Same masses for several exponents from a single pass over the grid.
std::vector<AnnulusMass> annulus_masses(const LatticeSpec& spec, std::span<const double> ps,
                                        double r_in, double r_out, const QuadratureSpec& quad,
                                        const TruncationPolicy& policy, bool check_resolution = true);

/// Core disk [0, a] followed by dyadic annuli [2^k a, 2^{k+1} a] up to the
/// largest 2^K a <= rho_max. Requires rho_max >= 4a.
NormTrace norm_trace(const LatticeSpec& spec, double p, double rho_max, const QuadratureSpec& quad,
                     const TruncationPolicy& policy, bool check_resolution = true);

std::vector<NormTrace> norm_traces(const LatticeSpec& spec, std::span<const double> ps, double rho_max,
                                   const QuadratureSpec& quad, const TruncationPolicy& policy,
                                   bool check_resolution = true);

/// Least-squares slope of log(mass) against log(sqrt(r_in r_out)) over the
/// annuli with r_in >= 4a. Throws InsufficientAnnuli with fewer than three.
double growth_exponent(const NormTrace& trace);

/// Sign of the exponent with a no-decision band of +-band around zero.
Verdict classify_growth(double exponent, double band = 0.3);

}  // namespace fockzero
