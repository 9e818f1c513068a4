#include "fockzero/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fockzero/error.hpp"
#include "fockzero/parallel.hpp"

namespace fockzero {

namespace {

void check_ladder(const LatticeSpec& spec, std::span<const double> rho_ladder) {
  if (rho_ladder.empty()) throw InvalidArgument("density_profile: empty rho ladder");
  for (std::size_t i = 0; i < rho_ladder.size(); ++i) {
    if (!(rho_ladder[i] >= 2.0 * spec.a())) throw InvalidArgument("density_profile: rho >= 2a violated");
    if (i > 0 && !(rho_ladder[i] > rho_ladder[i - 1])) {
      throw InvalidArgument("density_profile: rho ladder must be strictly increasing");
    }
  }
}

// Slope-intercept least squares of y against 1/rho; returns the intercept.
double extrapolate(std::span<const double> rho, std::span<const double> y) {
  const auto n = static_cast<double>(rho.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    mx += 1.0 / rho[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double dx = 1.0 / rho[i] - mx;
    sxy += dx * (y[i] - my);
    sxx += dx * dx;
  }
  return my - (sxy / sxx) * mx;
}

}  // namespace

std::vector<Complex> center_grid(double grid_extent, double grid_step) {
  if (!(grid_step > 0.0) || !(grid_extent >= 0.0)) {
    throw InvalidArgument("center_grid: step > 0 and extent >= 0 required");
  }
  const auto k = static_cast<long>(std::floor(grid_extent / grid_step + 1e-9));
  std::vector<Complex> centers;
  centers.reserve(static_cast<std::size_t>((2 * k + 1) * (2 * k + 1)));
  for (long j = -k; j <= k; ++j) {
    for (long i = -k; i <= k; ++i) {
      centers.emplace_back(static_cast<double>(i) * grid_step, static_cast<double>(j) * grid_step);
    }
  }
  return centers;
}

DensityReport density_profile_at(const LatticeSpec& spec, Lattice lattice, std::span<const double> rho_ladder,
                                 std::span<const Complex> centers) {
  check_ladder(spec, rho_ladder);
  if (centers.empty()) throw InvalidArgument("density_profile: no centers");

  DensityReport report;
  report.lattice = lattice;
  report.rho_ladder.assign(rho_ladder.begin(), rho_ladder.end());
  std::vector<std::size_t> counts(centers.size());
  for (double rho : rho_ladder) {
    parallel_for(centers.size(),
                 [&](std::size_t i) { counts[i] = counting_function(spec, centers[i], rho, lattice); });
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    const double area = std::numbers::pi * rho * rho;
    report.sup_ratio.push_back(static_cast<double>(*hi) / area);
    report.inf_ratio.push_back(static_cast<double>(*lo) / area);
  }
  return report;
}

DensityReport density_profile(const LatticeSpec& spec, Lattice lattice, std::span<const double> rho_ladder,
                              double grid_extent, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= spec.a())) {
    throw InvalidArgument("density_profile: grid_step must lie in (0, a]");
  }
  const auto centers = center_grid(grid_extent, grid_step);
  DensityReport report = density_profile_at(spec, lattice, rho_ladder, centers);
  report.center_grid_extent = grid_extent;
  report.center_grid_step = grid_step;
  return report;
}

DensityEstimate uniform_density_estimate(const DensityReport& report) {
  if (report.rho_ladder.size() < 3) {
    throw InsufficientRadii("uniform_density_estimate: need at least 3 radii");
  }
  return {extrapolate(report.rho_ladder, report.sup_ratio), extrapolate(report.rho_ladder, report.inf_ratio)};
}

}  // namespace fockzero
