#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace fockzero {

using Complex = std::complex<double>;

/// Parameters of the square lattice a(Z + iZ) and of its perturbation, where
/// every nonzero real lattice point a*m is pushed outward to a*(m + R*sign(m)).
/// The pitch is tied to the Gaussian weight through a = sqrt(pi / alpha), which
/// puts the lattice at the critical density alpha / pi.
class LatticeSpec {
 public:
  /// Throws InvalidArgument unless alpha > 0, r_shift > 0 and
  /// |a - sqrt(pi / alpha)| <= 1e-12 * a.
  LatticeSpec(double alpha, double a, double r_shift);

  static LatticeSpec from_alpha(double alpha, double r_shift);
  static LatticeSpec from_pitch(double a, double r_shift);

  double alpha() const noexcept { return alpha_; }
  double a() const noexcept { return a_; }
  double r_shift() const noexcept { return r_shift_; }

  /// Same alpha and pitch, different shift.
  LatticeSpec with_shift(double r_shift) const;

 private:
  double alpha_;
  double a_;
  double r_shift_;
};

struct LatticeIndex {
  std::int64_t m = 0;
  std::int64_t n = 0;
};

enum class Lattice : bool { square = false, perturbed = true };

/// Points of a lattice inside the open disk |z - center| < radius.
struct PointSet {
  std::vector<Complex> points;
  Lattice lattice = Lattice::square;
  Complex center;
  double radius = 0.0;
};

/// z_{m,n} = a(m + in) for the square lattice. For the perturbed lattice the
/// same point unless n == 0 and m != 0, where it becomes a(m + R m/|m|).
Complex lattice_point(const LatticeSpec& spec, LatticeIndex idx, Lattice lattice);

/// Half-width of the index box scanned by points_in_disk.
std::int64_t scan_half_width(const LatticeSpec& spec, Complex center, double rho);

/// Points with |p - center| < rho, in scan order (n outer, m inner).
PointSet points_in_disk(const LatticeSpec& spec, Complex center, double rho, Lattice lattice);

/// N(center, rho): number of lattice points in the open disk.
std::size_t counting_function(const LatticeSpec& spec, Complex center, double rho, Lattice lattice);

/// Euclidean distance from z to the nearest lattice point. Uses a
/// constant-size candidate set: two bracketing rows and columns, the origin
/// and the shifted real-axis points bracketing Re z on each side.
double distance_to_lattice(const LatticeSpec& spec, Complex z, Lattice lattice);

/// Distance to aZ \ {0}, the poles of the row ratio factors.
double distance_to_real_row(const LatticeSpec& spec, Complex z);

}  // namespace fockzero
