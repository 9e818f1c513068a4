#pragma once

#include <complex>
#include <vector>

namespace fockzero {

/// Hurwitz zeta zeta(s, q) = sum_{j>=0} (q + j)^{-s} for integer s >= 2, q > 0.
double hurwitz_zeta(int s, double q);

/// zeta(s, q + shift) - zeta(s, q). For s == 1 the divergent parts cancel and
/// the value is digamma(q) - digamma(q + shift).
double hurwitz_difference(int s, double q, double shift);

/// Closed-form completion of a truncated one-row product. For terms
///     log|1 - x/(m + R)^k| - log|1 - x/m^k|,  m > M,
/// expanded in powers of x, the tail equals
///     -Re sum_{j>=1} c_j x^j,  c_j = (zeta(kj, M+1+R) - zeta(kj, M+1)) / j,
/// which converges for |x| < (M+1)^k. With k == 1 this completes the psi
/// product in x = z; with k == 2 it completes the symmetric row ratio in
/// x = (z/a)^2.
class RowTail {
 public:
  /// Coefficients are generated until |c_j| max_abs_x^j drops below 1e-18.
  /// Requires max_abs_x <= (M+1)^k / 2.
  RowTail(int power, long last_index, double shift, double max_abs_x);

  double operator()(std::complex<double> x) const;

  /// Bound on the discarded coefficients at |x| = max_abs_x.
  double error_bound() const noexcept { return error_bound_; }
  long last_index() const noexcept { return last_index_; }
  std::size_t terms() const noexcept { return coeffs_.size(); }

 private:
  long last_index_;
  std::vector<double> coeffs_;
  double error_bound_ = 0.0;
};

}  // namespace fockzero
