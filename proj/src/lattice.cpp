#include "fockzero/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fockzero/error.hpp"

namespace fockzero {

LatticeSpec::LatticeSpec(double alpha, double a, double r_shift)
    : alpha_(alpha), a_(a), r_shift_(r_shift) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("LatticeSpec: alpha > 0 violated");
  }
  if (!(r_shift > 0.0) || !std::isfinite(r_shift)) {
    throw InvalidArgument("LatticeSpec: r_shift > 0 violated");
  }
  const double expected = std::sqrt(std::numbers::pi / alpha);
  if (!(std::abs(a - expected) <= 1e-12 * expected)) {
    std::ostringstream msg;
    msg << "LatticeSpec: pitch " << a << " does not equal sqrt(pi/alpha) = " << expected;
    throw InvalidArgument(msg.str());
  }
}

LatticeSpec LatticeSpec::from_alpha(double alpha, double r_shift) {
  if (!(alpha > 0.0)) throw InvalidArgument("LatticeSpec: alpha > 0 violated");
  return LatticeSpec(alpha, std::sqrt(std::numbers::pi / alpha), r_shift);
}

LatticeSpec LatticeSpec::from_pitch(double a, double r_shift) {
  if (!(a > 0.0)) throw InvalidArgument("LatticeSpec: pitch a > 0 violated");
  return LatticeSpec(std::numbers::pi / (a * a), a, r_shift);
}

LatticeSpec LatticeSpec::with_shift(double r_shift) const {
  return LatticeSpec(alpha_, a_, r_shift);
}

Complex lattice_point(const LatticeSpec& spec, LatticeIndex idx, Lattice lattice) {
  const double a = spec.a();
  const auto m = static_cast<double>(idx.m);
  const auto n = static_cast<double>(idx.n);
  if (lattice == Lattice::perturbed && idx.n == 0 && idx.m != 0) {
    const double shifted = idx.m > 0 ? m + spec.r_shift() : m - spec.r_shift();
    return {a * shifted, 0.0};
  }
  return {a * m, a * n};
}

std::int64_t scan_half_width(const LatticeSpec& spec, Complex center, double rho) {
  return static_cast<std::int64_t>(std::ceil((std::abs(center) + rho) / spec.a()) +
                                   std::ceil(spec.r_shift()) + 1.0);
}

namespace {

template <typename Visit>
void scan_disk(const LatticeSpec& spec, Complex center, double rho, Lattice lattice, Visit&& visit) {
  const std::int64_t k = scan_half_width(spec, center, rho);
  const double rho2 = rho * rho;
  for (std::int64_t n = -k; n <= k; ++n) {
    for (std::int64_t m = -k; m <= k; ++m) {
      const Complex p = lattice_point(spec, {m, n}, lattice);
      const double dx = p.real() - center.real();
      const double dy = p.imag() - center.imag();
      if (dx * dx + dy * dy < rho2) visit(p);
    }
  }
}

}  // namespace

PointSet points_in_disk(const LatticeSpec& spec, Complex center, double rho, Lattice lattice) {
  if (!(rho > 0.0)) throw InvalidArgument("points_in_disk: rho > 0 violated");
  PointSet out;
  out.lattice = lattice;
  out.center = center;
  out.radius = rho;
  scan_disk(spec, center, rho, lattice, [&](Complex p) { out.points.push_back(p); });
  return out;
}

std::size_t counting_function(const LatticeSpec& spec, Complex center, double rho, Lattice lattice) {
  if (!(rho > 0.0)) throw InvalidArgument("counting_function: rho > 0 violated");
  std::size_t count = 0;
  scan_disk(spec, center, rho, lattice, [&](Complex) { ++count; });
  return count;
}

double distance_to_lattice(const LatticeSpec& spec, Complex z, Lattice lattice) {
  const double a = spec.a();
  const double x = z.real() / a;
  const double y = z.imag() / a;

  if (lattice == Lattice::square) {
    return std::abs(z - a * Complex(std::nearbyint(x), std::nearbyint(y)));
  }

  double best = std::abs(z);  // the origin
  const double col = std::floor(x);
  const double row = std::floor(y);
  // The nearest point off the real axis lies in one of the two rows
  // bracketing y; when one of them is row 0 the other is the nearest
  // nonzero row.
  for (double n : {row, row + 1.0}) {
    if (n == 0.0) continue;
    for (double m : {col, col + 1.0}) {
      best = std::min(best, std::abs(z - a * Complex(m, n)));
    }
  }

  const double r = spec.r_shift();
  for (double side : {1.0, -1.0}) {
    const double k0 = std::max(1.0, std::floor(side * x - r));
    for (double k : {k0, k0 + 1.0}) {
      const Complex w(side * a * (k + r), 0.0);
      best = std::min(best, std::abs(z - w));
    }
  }
  return best;
}

double distance_to_real_row(const LatticeSpec& spec, Complex z) {
  const double a = spec.a();
  const double k = std::max(1.0, std::nearbyint(std::abs(z.real()) / a));
  return std::abs(Complex(std::abs(z.real()) - a * k, z.imag()));
}

}  // namespace fockzero
