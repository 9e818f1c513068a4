#pragma once

#include <span>
#include <vector>

#include "fockzero/lattice.hpp"

namespace fockzero {

/// Extremes of N(c, rho) / (pi rho^2) over a finite set of centers c, per radius.
struct DensityReport {
  Lattice lattice = Lattice::square;
  std::vector<double> rho_ladder;
  std::vector<double> sup_ratio;
  std::vector<double> inf_ratio;
  double center_grid_extent = 0.0;
  double center_grid_step = 0.0;
};

struct DensityEstimate {
  double d_plus = 0.0;
  double d_minus = 0.0;
};

/// Centers on the square grid [-extent, extent]^2 with the given step.
/// Requires step <= a, every rho >= 2a and a strictly increasing ladder.
DensityReport density_profile(const LatticeSpec& spec, Lattice lattice, std::span<const double> rho_ladder,
                              double grid_extent, double grid_step);

/// Same statistics over an explicit list of centers.
DensityReport density_profile_at(const LatticeSpec& spec, Lattice lattice, std::span<const double> rho_ladder,
                                 std::span<const Complex> centers);

/// Grid centers used by density_profile, row-major from the lower left corner.
std::vector<Complex> center_grid(double grid_extent, double grid_step);

/// Least-squares fits sup(rho) = d_plus + c/rho and inf(rho) = d_minus + c'/rho.
/// Throws InsufficientRadii with fewer than three radii.
DensityEstimate uniform_density_estimate(const DensityReport& report);

}  // namespace fockzero
