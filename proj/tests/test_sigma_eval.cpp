#include <doctest.h>

#include <bit>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "fockzero/error.hpp"
#include "fockzero/sigma_eval.hpp"
#include "oracles.hpp"

using namespace fockzero;

namespace {

const LatticeSpec kUnit = LatticeSpec::from_alpha(std::numbers::pi, 0.75);
const TruncationPolicy kPolicy{};

bool same_bits(double x, double y) { return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y); }

std::vector<Complex> random_points(std::uint64_t seed, std::size_t n, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> out;
  while (out.size() < n) {
    const Complex z = std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    if (std::abs(z.imag()) > 0.01) out.push_back(z);
  }
  return out;
}

}  // namespace

TEST_CASE("TruncationPolicy validation") {
  CHECK_NOTHROW(TruncationPolicy{}.validate());
  CHECK_THROWS_AS((TruncationPolicy{16, 0.0, 10}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TruncationPolicy{4, 1e-10, 10}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TruncationPolicy{16, 1e-10, 0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((TruncationPolicy{16, 1e-10, 17}.validate()), InvalidArgument);
}

TEST_CASE("G4 and G8 constants") {
  // G4 = varpi^4 / 15 with varpi = Gamma(1/4)^2 / (2 sqrt(2 pi)).
  const long double varpi = std::pow(std::tgamma(0.25L), 2) / (2.0L * std::sqrt(2.0L * std::numbers::pi_v<long double>));
  CHECK(static_cast<double>(kSquareLatticeG4) ==
        doctest::Approx(static_cast<double>(std::pow(varpi, 4) / 15.0L)).epsilon(1e-15));
  CHECK(static_cast<double>(kSquareLatticeG8) ==
        doctest::Approx(static_cast<double>(3.0L * kSquareLatticeG4 * kSquareLatticeG4 / 7.0L)).epsilon(1e-15));
}

TEST_CASE("log_sigma matches the theta-function representation") {
  for (double a : {1.0, 0.7, 2.0}) {
    const LatticeSpec spec = LatticeSpec::from_pitch(a, 0.5);
    for (const Complex z : random_points(21, 40, 3.0 * a)) {
      const WeightedLogValue v = log_sigma(spec, z, kPolicy);
      CHECK(v.log_mag == doctest::Approx(oracle::log_sigma(a, z)).epsilon(1e-10).scale(1.0));
      CHECK(v.err_est >= 0.0);
      CHECK(std::isfinite(v.err_est));
    }
  }
}

TEST_CASE("zeros of sigma_a and sigma_{a,R}") {
  CHECK(log_sigma(kUnit, 0.0, kPolicy).at_zero);
  CHECK(std::isinf(log_sigma(kUnit, 0.0, kPolicy).log_mag));
  CHECK(log_weighted_sigma(kUnit, Complex(2.0, -3.0), kPolicy).at_zero);
  CHECK(log_modified_sigma_direct(kUnit, 0.0, kPolicy).at_zero);

  const LatticeSpec r1 = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  const WeightedLogValue at_one = log_modified_sigma_direct(r1, 1.0, kPolicy);
  CHECK_FALSE(at_one.at_zero);
  CHECK(std::isfinite(at_one.log_mag));
  CHECK(log_modified_sigma_direct(r1, 2.0, kPolicy).at_zero);
  CHECK(log_modified_sigma_direct(r1, -3.0, kPolicy).at_zero);
  CHECK(log_modified_sigma_direct(r1, Complex(1.0, 1.0), kPolicy).at_zero);
}

TEST_CASE("self-convergence at z = 0.5") {
  TruncationPolicy big = kPolicy;
  big.m_min *= 4;
  const double base = log_sigma(kUnit, 0.5, kPolicy).log_mag;
  CHECK(std::abs(base - log_sigma(kUnit, 0.5, big).log_mag) < 1e-8);
  const double mod = log_modified_sigma_direct(kUnit, 0.5, kPolicy).log_mag;
  CHECK(std::abs(mod - log_modified_sigma_direct(kUnit, 0.5, big).log_mag) < 1e-8);
}

TEST_CASE("oddness is bit-exact and conjugation is exact to rounding") {
  for (const Complex z : random_points(8, 30, 10.0)) {
    CHECK(same_bits(log_sigma(kUnit, z, kPolicy).log_mag, log_sigma(kUnit, -z, kPolicy).log_mag));
    CHECK(same_bits(log_modified_sigma_direct(kUnit, z, kPolicy).log_mag,
                    log_modified_sigma_direct(kUnit, -z, kPolicy).log_mag));
    CHECK(same_bits(log_modified_sigma_ratio(kUnit, z, kPolicy).log_mag,
                    log_modified_sigma_ratio(kUnit, -z, kPolicy).log_mag));
    CHECK(std::abs(log_sigma(kUnit, z, kPolicy).log_mag - log_sigma(kUnit, std::conj(z), kPolicy).log_mag) <= 1e-12);
    CHECK(std::abs(log_modified_sigma_direct(kUnit, z, kPolicy).log_mag -
                   log_modified_sigma_direct(kUnit, std::conj(z), kPolicy).log_mag) <= 1e-12);
  }
}

TEST_CASE("weighted sigma is lattice periodic and peaks at the cell center") {
  const Complex z(0.5, 0.5);
  const double w = log_weighted_sigma(kUnit, z, kPolicy).log_mag;
  CHECK(std::abs(log_weighted_sigma(kUnit, z + 1.0, kPolicy).log_mag - w) < 1e-6);
  CHECK(std::abs(log_weighted_sigma(kUnit, z + Complex(0.0, 1.0), kPolicy).log_mag - w) < 1e-6);
  for (const Complex p : random_points(9, 20, 9.0)) {
    const double v = log_weighted_sigma(kUnit, p, kPolicy).log_mag;
    CHECK(std::abs(log_weighted_sigma(kUnit, p + 1.0, kPolicy).log_mag - v) < 1e-6);
    CHECK(std::abs(log_weighted_sigma(kUnit, p - Complex(0.0, 1.0), kPolicy).log_mag - v) < 1e-6);
  }
  double best = -1e300;
  Complex arg;
  for (int i = 0; i <= 50; ++i) {
    for (int j = 0; j <= 50; ++j) {
      const Complex c(i / 50.0, j / 50.0);
      const WeightedLogValue v = log_weighted_sigma(kUnit, c, kPolicy);
      if (!v.at_zero && v.log_mag > best) {
        best = v.log_mag;
        arg = c;
      }
    }
  }
  CHECK(arg == Complex(0.5, 0.5));
}

TEST_CASE("row ratio matches its Gamma-function closed form") {
  for (double r : {0.25, 0.75, 1.0, 2.5}) {
    const LatticeSpec spec = LatticeSpec::from_pitch(1.3, r);
    for (const Complex z : random_points(31, 25, 12.0)) {
      const WeightedLogValue v = log_row_ratio(spec, z, kPolicy);
      CHECK(v.log_mag == doctest::Approx(oracle::log_row_ratio(r, z / spec.a())).epsilon(1e-9).scale(1.0));
    }
  }
  CHECK_THROWS_AS(log_row_ratio(kUnit, Complex(2.0, 0.0), kPolicy), DomainPole);
  CHECK_THROWS_AS(log_modified_sigma_ratio(kUnit, Complex(-1.0, 1e-12), kPolicy), DomainPole);
}

TEST_CASE("two evaluation methods agree") {
  for (double r : {0.5, 0.75, 1.0}) {
    const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, r);
    for (const Complex z : random_points(41, 25, 10.0)) {
      const WeightedLogValue d = log_modified_sigma_direct(spec, z, kPolicy);
      const WeightedLogValue q = log_modified_sigma_ratio(spec, z, kPolicy);
      CHECK(std::abs(d.log_mag - q.log_mag) <= 1e-6 + d.err_est + q.err_est);
    }
  }
  const Complex z(0.5, 2.0);
  CHECK(std::abs(log_modified_sigma_direct(kUnit, z, kPolicy).log_mag -
                 log_modified_sigma_ratio(kUnit, z, kPolicy).log_mag) < 1e-6);
}

TEST_CASE("the shifted row lowers the modulus on the imaginary axis") {
  // 2i itself is a lattice zero, so use 2.5i.
  const Complex z(0.0, 2.5);
  const double base = log_sigma(kUnit, z, kPolicy).log_mag;
  const double modified = log_modified_sigma_ratio(kUnit, z, kPolicy).log_mag;
  double expected = base;
  for (long m = 1; m <= 2000000; ++m) {
    const double md = static_cast<double>(m);
    expected += std::log((1.0 + 6.25 / ((md + 0.75) * (md + 0.75))) / (1.0 + 6.25 / (md * md)));
  }
  CHECK(modified < base);
  CHECK(modified == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("psi matches its Gamma-function closed form") {
  for (double r : {0.1, 0.5, 1.0, 1.6, 3.0}) {
    for (const Complex z : random_points(51, 30, 20.0)) {
      const WeightedLogValue v = log_psi(r, z, kPolicy);
      CHECK(v.log_mag == doctest::Approx(oracle::log_psi(r, z)).epsilon(1e-9).scale(1.0));
    }
    // Real points away from the poles, where std::lgamma is an independent check.
    for (double x : {-17.3, -4.5, -1.0, 0.5, 2.3, 7.25}) {
      const double want = std::lgamma(1.0 - x) + std::lgamma(1.0 + r) - std::lgamma(1.0 + r - x);
      CHECK(log_psi(r, x, kPolicy).log_mag == doctest::Approx(want).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("psi special values") {
  for (double r : {0.25, 0.5, 0.9, 1.0, 2.0}) {
    CHECK(log_psi(r, 0.0, kPolicy).log_mag == 0.0);
    CHECK(std::exp(log_psi(r, -1.0, kPolicy).log_mag) == doctest::Approx(1.0 / (1.0 + r)).epsilon(1e-6));
  }
  CHECK(std::exp(log_psi(0.5, -1.0, kPolicy).log_mag) == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(log_psi(0.0, Complex(3.0, 1.0), kPolicy).log_mag == 0.0);
  CHECK_THROWS_AS(log_psi(0.5, 3.0, kPolicy), DomainPole);
  CHECK_THROWS_AS(log_psi(0.5, Complex(1.0, 1e-10), kPolicy), DomainPole);
  CHECK(log_psi(0.5, 1.5, kPolicy).at_zero);
  CHECK_FALSE(log_psi(0.5, -1.5, kPolicy).at_zero);
}

TEST_CASE("psi_R(z + R) decays like |z|^-R") {
  for (double r : {0.5, 1.0, 1.5}) {
    double xs[3];
    double ys[3];
    int i = 0;
    for (double t : {16.0, 32.0, 64.0}) {
      xs[i] = std::log(t);
      ys[i] = log_psi(r, -t + r, kPolicy).log_mag;
      ++i;
    }
    const double mx = (xs[0] + xs[1] + xs[2]) / 3.0;
    const double my = (ys[0] + ys[1] + ys[2]) / 3.0;
    double sxy = 0.0;
    double sxx = 0.0;
    for (int k = 0; k < 3; ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    CHECK(std::abs(sxy / sxx + r) <= 0.05);
  }
}

TEST_CASE("M_R constant") {
  CHECK(std::abs(m_r_constant(1.0) - 1.0) <= 1e-12);
  CHECK(std::abs(m_r_constant(2.0) - 1.25) <= 1e-12);
  double prev = 0.0;
  for (int k = 1; k <= 16; ++k) {
    const double r = 0.25 * k;
    const double m = m_r_constant(r);
    // M_R = zeta(2) - zeta(2, 1 + R)
    const double closed = std::numbers::pi * std::numbers::pi / 6.0 - boost::math::trigamma(1.0 + r);
    CHECK(m == doctest::Approx(closed).epsilon(1e-12));
    CHECK(m > prev);
    prev = m;
  }
  CHECK(m_r_constant(1e-6) < 1e-5);
  CHECK(m_r_constant(1e-6) > 0.0);
  CHECK_THROWS_AS(m_r_constant(0.0), InvalidArgument);
}

TEST_CASE("zero detection of the direct modified evaluator (Gaussian-weighted)") {
  const LatticeSpec r1 = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  const PointSet zeros = points_in_disk(r1, 0.0, 5.0 + 1e-9, Lattice::perturbed);
  for (std::size_t i = 0; i < zeros.points.size(); i += 7) {
    const Complex z = zeros.points[i] + Complex(6e-10, 8e-10);
    const WeightedLogValue v = log_modified_sigma_direct(r1, z, kPolicy);
    CHECK(v.log_mag - 0.5 * std::numbers::pi * std::norm(z) < -20.0);
  }
  // Away from the zeros.
  for (const Complex z : {Complex(0.5, 0.5), Complex(1.0, 0.0), Complex(-3.5, 2.5), Complex(0.0, 4.5)}) {
    const WeightedLogValue v = log_modified_sigma_direct(r1, z, kPolicy);
    CHECK(v.log_mag - 0.5 * std::numbers::pi * std::norm(z) > -5.0);
  }
}

TEST_CASE("fast weighted evaluator agrees with the direct product") {
  for (double r : {0.5, 0.75, 1.0}) {
    const LatticeSpec spec = LatticeSpec::from_pitch(1.2, r);
    const WeightedModifiedSigma fast(spec, 30.0, kPolicy);
    for (const Complex z : random_points(61, 20, 30.0)) {
      const WeightedLogValue d = log_modified_sigma_direct(spec, z, kPolicy);
      const WeightedLogValue f = fast(z);
      CHECK(std::abs(f.log_mag - (d.log_mag - 0.5 * spec.alpha() * std::norm(z))) <= 1e-7 + d.err_est + f.err_est);
    }
    // Points of aZ fall back to the direct product; a itself is never a zero.
    const Complex on_row(spec.a(), 0.0);
    const WeightedLogValue row = fast(on_row);
    CHECK_FALSE(row.at_zero);
    CHECK(row.log_mag == doctest::Approx(log_modified_sigma_direct(spec, on_row, kPolicy).log_mag -
                                         0.5 * spec.alpha() * spec.a() * spec.a()));
  }
  const LatticeSpec half = LatticeSpec::from_alpha(std::numbers::pi, 0.5);
  const WeightedModifiedSigma fast(half, 10.0, kPolicy);
  CHECK(fast(Complex(1.5, 0.0)).at_zero);
  CHECK(fast(Complex(-2.5, 0.0)).at_zero);
  CHECK(fast(Complex(2.0, 3.0)).at_zero);
  CHECK(fast(0.0).at_zero);
  CHECK_THROWS_AS(fast(Complex(10.5, 0.0)), InvalidArgument);
}

TEST_CASE("exhausted doubling budget raises TruncationNotConverged") {
  const TruncationPolicy tight{8, 1e-10, 1};
  CHECK_THROWS_AS(log_sigma(kUnit, Complex(25.5, 3.5), tight), TruncationNotConverged);
  try {
    log_sigma(kUnit, Complex(25.5, 3.5), tight);
  } catch (const TruncationNotConverged& e) {
    CHECK(e.last_change() >= 0.0);
  }
}
