#include "fockzero/sigma_eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fockzero/compensated_sum.hpp"
#include "fockzero/error.hpp"

namespace fockzero {

void TruncationPolicy::validate() const {
  if (!(tol > 0.0)) throw InvalidArgument("TruncationPolicy: tol > 0 violated");
  if (m_min < 8) throw InvalidArgument("TruncationPolicy: m_min >= 8 violated");
  if (max_doublings < 1 || max_doublings > 16) {
    throw InvalidArgument("TruncationPolicy: max_doublings must lie in [1, 16]");
  }
}

namespace {

constexpr double kPoleRadius = 1e-9;

// 2 log|1 - u| for u = (ux, uy).
inline double log_abs2_one_minus(double ux, double uy) {
  const double n2 = ux * ux + uy * uy;
  if (n2 < 0.25) return std::log1p(n2 - 2.0 * ux);
  const double re = 1.0 - ux;
  return std::log(re * re + uy * uy);
}

// Running state of a square-box product truncated at half-width `shells`.
// Besides the log-sum it carries the unit-lattice power sums sum l^{-4} and
// sum l^{-8} over the same box, which fix the analytic tail correction.
struct BoxState {
  CompensatedSum<double> log_sum;
  CompensatedSum<long double> p4;
  CompensatedSum<long double> p8;
  int shells = 0;
};

inline void add_unit_powers(BoxState& st, long m, long n) {
  const long double d = static_cast<long double>(m * m + n * n);
  const long double ur = static_cast<long double>(m) / d;
  const long double ui = -static_cast<long double>(n) / d;
  const long double u2r = ur * ur - ui * ui;
  const long double u2i = 2.0L * ur * ui;
  const long double u4r = u2r * u2r - u2i * u2i;
  const long double u4i = 2.0L * u2r * u2i;
  const long double u8r = u4r * u4r - u4i * u4i;
  // l and -l contribute equally to even powers.
  st.p4.add(2.0L * u4r);
  st.p8.add(2.0L * u8r);
}

// Factor pair for l and -l: log|1 - z/l| + Re(z/l) + Re(z^2 / (2 q^2)) with
// q = l for the square lattice and q = a*m for shifted real-axis points.
template <bool Perturbed>
inline double pair_term(const LatticeSpec& spec, Complex z, long m, long n) {
  const double a = spec.a();
  const double zx = z.real();
  const double zy = z.imag();
  if constexpr (Perturbed) {
    if (n == 0) {
      const double w = a * (static_cast<double>(m) + spec.r_shift());
      const double ux = zx / w;
      const double uy = zy / w;
      const double zq = a * static_cast<double>(m);
      const double quad = (zx * zx - zy * zy) / (2.0 * zq * zq);
      const double plus = 0.5 * log_abs2_one_minus(ux, uy) + ux + quad;
      const double minus = 0.5 * log_abs2_one_minus(-ux, -uy) - ux + quad;
      return plus + minus;
    }
  }
  const double lx = a * static_cast<double>(m);
  const double ly = a * static_cast<double>(n);
  const double d = lx * lx + ly * ly;
  const double ux = (zx * lx + zy * ly) / d;
  const double uy = (zy * lx - zx * ly) / d;
  const double quad = 0.5 * (ux * ux - uy * uy);
  const double plus = 0.5 * log_abs2_one_minus(ux, uy) + ux + quad;
  const double minus = 0.5 * log_abs2_one_minus(-ux, -uy) - ux + quad;
  return plus + minus;
}

// Shell s holds the 8s points with max(|m|,|n|) = s. One representative of
// each +-pair: the right side (s, n), -s < n <= s, and the top side (m, s),
// -s <= m < s.
template <bool Perturbed>
void extend_box(BoxState& st, const LatticeSpec& spec, Complex z, int upto) {
  for (long s = st.shells + 1; s <= upto; ++s) {
    for (long n = -s + 1; n <= s; ++n) {
      st.log_sum.add(pair_term<Perturbed>(spec, z, s, n));
      add_unit_powers(st, s, n);
    }
    for (long m = -s; m < s; ++m) {
      st.log_sum.add(pair_term<Perturbed>(spec, z, m, s));
      add_unit_powers(st, m, s);
    }
  }
  st.shells = std::max(st.shells, upto);
}

// Tail of the genus-2 box product through order x^8, x = z/a. The tail of
// -Re sum_k x^k T_k / k only keeps k = 0 mod 4 because the box is invariant
// under l -> i l.
double box_tail_correction(const BoxState& st, Complex x) {
  const long double t4 = kSquareLatticeG4 - st.p4.value();
  const long double t8 = kSquareLatticeG8 - st.p8.value();
  const Complex x2 = x * x;
  const Complex x4 = x2 * x2;
  const Complex x8 = x4 * x4;
  return -(x4.real() * static_cast<double>(t4) / 4.0 + x8.real() * static_cast<double>(t8) / 8.0);
}

// Bound on the neglected orders x^{12}, x^{16}, ... using
// sum_{s>M} 8 s s^{-k} <= 8 M^{2-k} / (k-2).
double box_tail_bound(int shells, double abs_x) {
  const double m = static_cast<double>(shells);
  if (abs_x >= m) return std::numeric_limits<double>::infinity();
  double bound = 0.0;
  for (int k = 12; k <= 400; k += 4) {
    const double term = std::pow(abs_x, k) / k * 8.0 * std::pow(m, 2 - k) / (k - 2);
    bound += term;
    if (term < 1e-20 * std::max(bound, 1e-300)) break;
  }
  return bound;
}

// Rounding floor of the corrected box sum. The z^4 and z^8 corrections are
// differences G_k - P_k(M) of O(1) long double numbers, amplified by |x|^k;
// the double log-sum adds O(eps |x| M) from cancellation inside each factor.
double box_rounding_floor(int shells, double abs_x) {
  constexpr double eps_ld = std::numeric_limits<long double>::epsilon();
  constexpr double eps_d = std::numeric_limits<double>::epsilon();
  const double x4 = std::pow(abs_x, 4);
  const double g4 = static_cast<double>(kSquareLatticeG4);
  const double g8 = static_cast<double>(kSquareLatticeG8);
  return 4.0 * eps_ld * (x4 * g4 / 4.0 + x4 * x4 * g8 / 8.0) + 16.0 * eps_d * abs_x * shells;
}

// The tail corrections need every discarded point to satisfy |z| < |l|/2.
inline bool in_convergence_region(int shells, double abs_x) {
  return static_cast<double>(shells) + 1.0 > 2.0 * abs_x;
}

[[noreturn]] void not_converged(const char* who, Complex z, int shells, double change) {
  std::ostringstream msg;
  msg << who << ": truncation not converged at z = " << z << " (half-width " << shells
      << ", last change " << change << ")";
  throw TruncationNotConverged(msg.str(), change);
}

template <bool Perturbed>
WeightedLogValue adaptive_box(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy,
                              const char* who) {
  const Complex x = z / spec.a();
  const double abs_x = std::abs(x);
  BoxState st;
  int shells = policy.m_min;
  bool have_prev = false;
  double prev = 0.0;
  double change = std::numeric_limits<double>::infinity();
  for (int doubling = 0;; ++doubling) {
    extend_box<Perturbed>(st, spec, z, shells);
    if (in_convergence_region(shells, abs_x)) {
      double value = std::log(std::abs(z)) + st.log_sum.value() + box_tail_correction(st, x);
      const double floor = box_rounding_floor(shells, abs_x);
      double err = box_tail_bound(shells, abs_x) + floor;
      if constexpr (Perturbed) {
        RowTail row(2, shells, spec.r_shift(), abs_x * abs_x);
        value += row(x * x);
        err += row.error_bound();
      }
      if (have_prev) {
        change = std::abs(value - prev);
        // A change inside the rounding floor cannot shrink by enlarging the box.
        if (change < policy.tol || change < 4.0 * floor) return {value, change + err, false};
      }
      prev = value;
      have_prev = true;
    }
    if (doubling == policy.max_doublings) not_converged(who, z, shells, change);
    shells *= 2;
  }
}

inline bool exact_square_lattice_hit(const LatticeSpec& spec, Complex z) {
  return distance_to_lattice(spec, z, Lattice::square) == 0.0;
}

void check_row_pole(const LatticeSpec& spec, Complex z, const char* who) {
  if (distance_to_real_row(spec, z) < kPoleRadius * spec.a()) {
    std::ostringstream msg;
    msg << who << ": z = " << z << " lies on a pole of the row ratio (aZ \\ {0})";
    throw DomainPole(msg.str());
  }
}

// Partial sums of log|1 - x^k/(m+R)^k| - log|1 - x^k/m^k| over m <= M,
// doubled until the tail-completed value settles.
template <int Power>
WeightedLogValue adaptive_row(Complex x, double r_shift, const TruncationPolicy& policy, const char* who) {
  const double abs_x = std::abs(x);
  const Complex xk = Power == 1 ? x : x * x;
  CompensatedSum<double> sum;
  long done = 0;
  long terms = policy.m_min;
  bool have_prev = false;
  double prev = 0.0;
  double change = std::numeric_limits<double>::infinity();
  for (int doubling = 0;; ++doubling) {
    for (long m = done + 1; m <= terms; ++m) {
      const double md = static_cast<double>(m);
      const double shifted = Power == 1 ? md + r_shift : (md + r_shift) * (md + r_shift);
      const double plain = Power == 1 ? md : md * md;
      const double num = std::norm(1.0 - xk / shifted);
      const double den = std::norm(1.0 - xk / plain);
      if (num == 0.0) return WeightedLogValue::zero();
      sum.add(0.5 * std::log(num / den));
    }
    done = terms;
    if (in_convergence_region(static_cast<int>(terms), abs_x)) {
      RowTail tail(Power, terms, r_shift, Power == 1 ? abs_x : abs_x * abs_x);
      const double value = sum.value() + tail(xk);
      if (have_prev) {
        change = std::abs(value - prev);
        if (change < policy.tol) return {value, change + tail.error_bound(), false};
      }
      prev = value;
      have_prev = true;
    }
    if (doubling == policy.max_doublings) not_converged(who, x, static_cast<int>(terms), change);
    terms *= 2;
  }
}

}  // namespace

WeightedLogValue log_sigma(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy) {
  policy.validate();
  if (exact_square_lattice_hit(spec, z)) return WeightedLogValue::zero();
  return adaptive_box<false>(spec, z, policy, "log_sigma");
}

WeightedLogValue log_weighted_sigma(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy) {
  WeightedLogValue v = log_sigma(spec, z, policy);
  if (!v.at_zero) v.log_mag -= 0.5 * spec.alpha() * std::norm(z);
  return v;
}

WeightedLogValue log_modified_sigma_direct(const LatticeSpec& spec, Complex z,
                                           const TruncationPolicy& policy) {
  policy.validate();
  if (distance_to_lattice(spec, z, Lattice::perturbed) == 0.0) return WeightedLogValue::zero();
  return adaptive_box<true>(spec, z, policy, "log_modified_sigma_direct");
}

WeightedLogValue log_row_ratio(const LatticeSpec& spec, Complex z, const TruncationPolicy& policy) {
  policy.validate();
  check_row_pole(spec, z, "log_row_ratio");
  return adaptive_row<2>(z / spec.a(), spec.r_shift(), policy, "log_row_ratio");
}

WeightedLogValue log_modified_sigma_ratio(const LatticeSpec& spec, Complex z,
                                          const TruncationPolicy& policy) {
  policy.validate();
  check_row_pole(spec, z, "log_modified_sigma_ratio");
  const WeightedLogValue base = log_sigma(spec, z, policy);
  if (base.at_zero) return base;
  const WeightedLogValue row = log_row_ratio(spec, z, policy);
  return {base.log_mag + row.log_mag, base.err_est + row.err_est, false};
}

WeightedLogValue log_psi(double r_shift, Complex z, const TruncationPolicy& policy) {
  policy.validate();
  if (!(r_shift >= 0.0)) throw InvalidArgument("log_psi: R >= 0 violated");
  if (r_shift == 0.0) return {0.0, 0.0, false};
  const double k = std::nearbyint(z.real());
  if (k >= 1.0 && std::abs(z - k) < kPoleRadius) {
    std::ostringstream msg;
    msg << "log_psi: z = " << z << " lies on the pole at " << k;
    throw DomainPole(msg.str());
  }
  return adaptive_row<1>(z, r_shift, policy, "log_psi");
}

double m_r_constant(double r_shift, double tol) {
  if (!(r_shift > 0.0)) throw InvalidArgument("m_r_constant: R > 0 violated");
  if (!(tol > 0.0)) throw InvalidArgument("m_r_constant: tol > 0 violated");
  const double r = r_shift;
  auto completed = [r](long n) {
    CompensatedSum<double> s;
    for (long m = n; m >= 1; --m) {
      const double md = static_cast<double>(m);
      s.add(r * (2.0 * md + r) / (md * md * (md + r) * (md + r)));
    }
    // sum_{m>n} (1/m^2 - 1/(m+R)^2) = zeta(2, n+1) - zeta(2, n+1+R)
    s.add(-hurwitz_difference(2, static_cast<double>(n) + 1.0, r));
    return s.value();
  };
  double prev = completed(16);
  for (long n = 32; n <= (1L << 20); n *= 2) {
    const double cur = completed(n);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  return prev;
}

WeightedModifiedSigma::WeightedModifiedSigma(const LatticeSpec& spec, double max_radius,
                                             const TruncationPolicy& policy)
    : spec_(spec),
      policy_(policy),
      max_radius_(max_radius),
      cell_box_(8),
      row_terms_(static_cast<long>(std::ceil(2.0 * max_radius / spec.a())) + 8),
      row_tail_(2, row_terms_, spec.r_shift(),
                (max_radius / spec.a()) * (max_radius / spec.a())),
      cell_err_(0.0) {
  policy.validate();
  if (!(max_radius >= 0.0)) throw InvalidArgument("WeightedModifiedSigma: max_radius >= 0 violated");
  // Reduced points satisfy |z/a| <= 1/sqrt(2).
  const double cell_x = 0.7072;
  while (box_tail_bound(cell_box_, cell_x) > 0.25 * policy.tol && cell_box_ < 256) cell_box_ *= 2;
  cell_err_ = box_tail_bound(cell_box_, cell_x);
}

WeightedLogValue WeightedModifiedSigma::operator()(Complex z) const {
  const double a = spec_.a();
  if (std::abs(z) > max_radius_ * (1.0 + 1e-12) + 1e-300) {
    throw InvalidArgument("WeightedModifiedSigma: |z| exceeds the configured max_radius");
  }
  if (z == Complex(0.0, 0.0)) return WeightedLogValue::zero();
  if (distance_to_real_row(spec_, z) < kPoleRadius * a) {
    WeightedLogValue v = log_modified_sigma_direct(spec_, z, policy_);
    if (!v.at_zero) v.log_mag -= 0.5 * spec_.alpha() * std::norm(z);
    return v;
  }

  const Complex nearest = a * Complex(std::nearbyint(z.real() / a), std::nearbyint(z.imag() / a));
  const Complex cell = z - nearest;
  if (cell == Complex(0.0, 0.0)) return WeightedLogValue::zero();

  BoxState st;
  extend_box<false>(st, spec_, cell, cell_box_);
  const double cell_value = std::log(std::abs(cell)) + st.log_sum.value() +
                            box_tail_correction(st, cell / a) - 0.5 * spec_.alpha() * std::norm(cell);

  const Complex x2 = (z / a) * (z / a);
  CompensatedSum<double> row;
  for (long m = 1; m <= row_terms_; ++m) {
    const double md = static_cast<double>(m);
    const double shifted = (md + spec_.r_shift()) * (md + spec_.r_shift());
    const double num = std::norm(1.0 - x2 / shifted);
    if (num == 0.0) return WeightedLogValue::zero();
    row.add(0.5 * std::log(num / std::norm(1.0 - x2 / (md * md))));
  }
  const double row_value = row.value() + row_tail_(x2);
  return {cell_value + row_value, cell_err_ + row_tail_.error_bound(), false};
}

}  // namespace fockzero
