#include "fockzero/zeta_tails.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/polygamma.hpp>
#include <cmath>

#include "fockzero/error.hpp"

namespace fockzero {

double hurwitz_zeta(int s, double q) {
  if (s < 2) throw InvalidArgument("hurwitz_zeta: order must be >= 2");
  // zeta(s, q) = (-1)^s psi^(s-1)(q) / (s-1)!
  const double poly = boost::math::polygamma(s - 1, q);
  const double sign = (s % 2 == 0) ? 1.0 : -1.0;
  return sign * poly / boost::math::factorial<double>(static_cast<unsigned>(s - 1));
}

double hurwitz_difference(int s, double q, double shift) {
  if (s == 1) return boost::math::digamma(q) - boost::math::digamma(q + shift);
  return hurwitz_zeta(s, q + shift) - hurwitz_zeta(s, q);
}

RowTail::RowTail(int power, long last_index, double shift, double max_abs_x)
    : last_index_(last_index) {
  if (power != 1 && power != 2) throw InvalidArgument("RowTail: power must be 1 or 2");
  const double q = static_cast<double>(last_index) + 1.0;
  const double radius = std::pow(q, power);
  if (!(max_abs_x <= 0.5 * radius)) {
    throw InvalidArgument("RowTail: |x| must stay below half the convergence radius");
  }
  if (max_abs_x == 0.0) return;

  // |zeta(s, q+R) - zeta(s, q)| <= zeta(s, q) <= q^{-s} (1 + q/(s-1)), so
  // the discarded terms are dominated by a geometric series of ratio <= 1/2.
  double x_pow = 1.0;
  for (int j = 1; j <= 400; ++j) {
    x_pow *= max_abs_x;
    const int s = power * j;
    const double envelope =
        x_pow * std::pow(q, -s) * (1.0 + (s > 1 ? q / (s - 1) : q)) / j;
    if (j > 1 && envelope < 1e-18) {
      error_bound_ = 2.0 * envelope;
      return;
    }
    coeffs_.push_back(hurwitz_difference(s, q, shift) / j);
  }
  throw InvalidArgument("RowTail: coefficient series did not terminate");
}

double RowTail::operator()(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return -(acc * x).real();
}

}  // namespace fockzero
