#include "fockzero/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fockzero/compensated_sum.hpp"
#include "fockzero/error.hpp"
#include "fockzero/parallel.hpp"

namespace fockzero {

void ScanGrid::validate(double a) const {
  if (annuli.empty()) throw InvalidArgument("ScanGrid: no annuli");
  if (points_per_annulus <= 0) throw InvalidArgument("ScanGrid: points_per_annulus > 0 violated");
  if (!(exclusion_radius >= 0.0 && exclusion_radius < 0.5 * a)) {
    throw InvalidArgument("ScanGrid: exclusion_radius must lie in [0, a/2)");
  }
  for (std::size_t i = 0; i < annuli.size(); ++i) {
    const Annulus& an = annuli[i];
    if (!(an.r_in >= 0.0 && an.r_out > an.r_in)) throw InvalidArgument("ScanGrid: annulus needs 0 <= r_in < r_out");
    if (i > 0 && an.r_in < annuli[i - 1].r_out) {
      throw InvalidArgument("ScanGrid: annuli must be disjoint and increasing");
    }
  }
}

std::vector<ScanPoint> scan_points(const ScanGrid& grid) {
  // R2 sequence: generalized golden ratio in two dimensions.
  constexpr double plastic = 1.32471795724474602596;
  constexpr double step_u = 1.0 / plastic;
  constexpr double step_v = 1.0 / (plastic * plastic);

  std::mt19937_64 rng(grid.seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<ScanPoint> out;
  const auto n = static_cast<std::size_t>(grid.points_per_annulus);
  out.reserve(grid.annuli.size() * n);
  for (std::size_t k = 0; k < grid.annuli.size(); ++k) {
    const Annulus& an = grid.annuli[k];
    const double su = unit();
    const double sv = unit();
    const double r2_in = an.r_in * an.r_in;
    const double r2_span = an.r_out * an.r_out - r2_in;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = static_cast<double>(j + 1);
      double u = su + t * step_u;
      double v = sv + t * step_v;
      u -= std::floor(u);
      v -= std::floor(v);
      const double r = std::sqrt(r2_in + u * r2_span);
      out.push_back({k * n + j, k, std::polar(r, 2.0 * std::numbers::pi * v)});
    }
  }
  return out;
}

std::vector<Annulus> standard_annuli(double a) {
  const double edges[][2] = {{0.5, 1.0}, {1.0, 2.5}, {2.5, 5.0}, {5.0, 10.0}, {10.0, 15.0}, {15.0, 20.0}, {20.0, 25.0}};
  std::vector<Annulus> out;
  for (const auto& e : edges) out.push_back({e[0] * a, e[1] * a});
  return out;
}

double RatioReport::median_drift(std::size_t annulus_a, std::size_t annulus_b) const {
  const double r = per_annulus.at(annulus_a).median / per_annulus.at(annulus_b).median;
  return std::max(r, 1.0 / r);
}

std::size_t RatioReport::annulus_index(double r_in, double r_out) const {
  for (std::size_t i = 0; i < per_annulus.size(); ++i) {
    const Annulus& an = per_annulus[i].annulus;
    if (std::abs(an.r_in - r_in) <= 1e-12 * std::max(1.0, r_in) &&
        std::abs(an.r_out - r_out) <= 1e-12 * std::max(1.0, r_out)) {
      return i;
    }
  }
  throw InvalidArgument("RatioReport: no such annulus");
}

RatioReport summarize_ratios(std::span<const Annulus> annuli, std::vector<RatioSample> samples,
                             std::size_t n_excluded) {
  RatioReport report;
  report.n_points_used = samples.size();
  report.n_points_excluded = n_excluded;

  std::vector<std::vector<double>> logs(annuli.size());
  for (const RatioSample& s : samples) logs.at(s.annulus).push_back(s.log_ratio);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < annuli.size(); ++k) {
    AnnulusStats st;
    st.annulus = annuli[k];
    auto& v = logs[k];
    st.count = v.size();
    if (!v.empty()) {
      std::sort(v.begin(), v.end());
      const std::size_t mid = v.size() / 2;
      const double med_log = v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
      st.min = std::exp(v.front());
      st.max = std::exp(v.back());
      st.median = std::exp(med_log);
      lo = std::min(lo, v.front());
      hi = std::max(hi, v.back());
    }
    report.per_annulus.push_back(st);
  }
  if (!samples.empty()) {
    report.global_min = std::exp(lo);
    report.global_max = std::exp(hi);
  }
  report.samples = std::move(samples);
  return report;
}

double distance_to_nonnegative_integers(Complex z) {
  const double k = std::max(0.0, std::nearbyint(z.real()));
  return std::abs(z - k);
}

double distance_to_shifted_integers(Complex z, double r_shift) {
  const double k = std::max(0.0, std::nearbyint(z.real() - r_shift));
  return std::abs(z - (k + r_shift));
}

namespace {

inline double growth_log(double r_shift, Complex z, double power) {
  return power * r_shift * std::log1p(std::abs(z));
}

}  // namespace

std::optional<LogRatio> sigma_distance_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                                 const TruncationPolicy& policy) {
  const double d = distance_to_lattice(spec, z, Lattice::square);
  if (d <= exclusion || d == 0.0) return std::nullopt;
  const WeightedLogValue w = log_weighted_sigma(spec, z, policy);
  return LogRatio{w.log_mag - std::log(d), w.err_est};
}

std::optional<LogRatio> weighted_ratio_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                         const TruncationPolicy& policy, GrowthFactor growth) {
  const double d = distance_to_lattice(spec, z, Lattice::perturbed);
  if (d <= exclusion || d == 0.0) return std::nullopt;
  const WeightedLogValue v = log_modified_sigma_direct(spec, z, policy);
  double value = v.log_mag - 0.5 * spec.alpha() * std::norm(z) - std::log(d);
  if (growth == GrowthFactor::included) value += growth_log(spec.r_shift(), z, 2.0);
  return LogRatio{value, v.err_est};
}

std::optional<LogRatio> psi_claim_log_ratio(double r_shift, Complex z, double exclusion,
                                            const TruncationPolicy& policy) {
  const double d_plain = distance_to_nonnegative_integers(z);
  const double d_shift = distance_to_shifted_integers(z, r_shift);
  if (std::min(d_plain, d_shift) <= exclusion || d_plain == 0.0 || d_shift == 0.0) return std::nullopt;
  const WeightedLogValue v = log_psi(r_shift, z, policy);
  const double rhs = std::log(d_shift) - std::log(d_plain) - growth_log(r_shift, z, 1.0);
  return LogRatio{v.log_mag - rhs, v.err_est};
}

std::optional<LogRatio> ratio_product_log_ratio(const LatticeSpec& spec, Complex z, double exclusion,
                                                const TruncationPolicy& policy) {
  const double d_plain = distance_to_lattice(spec, z, Lattice::square);
  const double d_shift = distance_to_lattice(spec, z, Lattice::perturbed);
  if (std::min(d_plain, d_shift) <= exclusion || d_plain == 0.0 || d_shift == 0.0) return std::nullopt;
  const WeightedLogValue row = log_row_ratio(spec, z, policy);
  const double rhs = std::log(d_shift) - std::log(d_plain) - growth_log(spec.r_shift(), z, 2.0);
  return LogRatio{row.log_mag - rhs, row.err_est};
}

namespace {

template <class Fn>
RatioReport run_scan(const ScanGrid& grid, double a, Fn&& fn) {
  grid.validate(a);
  const std::vector<ScanPoint> pts = scan_points(grid);
  std::vector<std::optional<LogRatio>> values(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { values[i] = fn(pts[i].z); });

  std::vector<RatioSample> samples;
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!values[i]) {
      ++excluded;
      continue;
    }
    samples.push_back({pts[i].index, pts[i].annulus, pts[i].z, values[i]->value, values[i]->err_est});
  }
  return summarize_ratios(grid.annuli, std::move(samples), excluded);
}

}  // namespace

RatioReport check_sigma_distance(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy) {
  policy.validate();
  return run_scan(grid, spec.a(), [&](Complex z) {
    return sigma_distance_log_ratio(spec, z, grid.exclusion_radius, policy);
  });
}

RatioReport check_weighted_ratio(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy,
                         GrowthFactor growth) {
  policy.validate();
  return run_scan(grid, spec.a(), [&](Complex z) {
    return weighted_ratio_log_ratio(spec, z, grid.exclusion_radius, policy, growth);
  });
}

RatioReport check_psi_claim(double r_shift, const ScanGrid& grid, const TruncationPolicy& policy) {
  policy.validate();
  if (!(r_shift > 0.0)) throw InvalidArgument("check_psi_claim: R > 0 violated");
  return run_scan(grid, 1.0, [&](Complex z) {
    return psi_claim_log_ratio(r_shift, z, grid.exclusion_radius, policy);
  });
}

RatioReport check_ratio_product(const LatticeSpec& spec, const ScanGrid& grid, const TruncationPolicy& policy) {
  policy.validate();
  return run_scan(grid, spec.a(), [&](Complex z) {
    return ratio_product_log_ratio(spec, z, grid.exclusion_radius, policy);
  });
}

CrossIdentity cross_identity(const RatioReport& weighted_ratio, const RatioReport& sigma_distance,
                             const RatioReport& ratio_product) {
  // Samples are stored in increasing index order; walk the three lists together.
  CrossIdentity out;
  std::size_t i = 0;
  std::size_t j = 0;
  for (const RatioSample& p : ratio_product.samples) {
    while (i < weighted_ratio.samples.size() && weighted_ratio.samples[i].index < p.index) ++i;
    while (j < sigma_distance.samples.size() && sigma_distance.samples[j].index < p.index) ++j;
    if (i == weighted_ratio.samples.size() || j == sigma_distance.samples.size()) break;
    const RatioSample& l = weighted_ratio.samples[i];
    const RatioSample& s = sigma_distance.samples[j];
    if (l.index != p.index || s.index != p.index) continue;
    ++out.shared_points;
    const double err = std::abs(l.log_ratio - (s.log_ratio + p.log_ratio));
    const double est = l.err_est + s.err_est + p.err_est;
    out.max_abs_error = std::max(out.max_abs_error, err);
    out.max_err_est = std::max(out.max_err_est, est);
    out.worst_excess = std::max(out.worst_excess, err - (est + 1e-6));
  }
  if (out.shared_points == 0) out.worst_excess = 0.0;
  return out;
}

double check_reduction_identity(double r_shift, std::span<const Complex> samples, const TruncationPolicy& policy) {
  if (!(r_shift > 1.0)) throw InvalidArgument("check_reduction_identity: R > 1 violated");
  const double whole = std::floor(r_shift);
  const double beta = r_shift - whole;
  const auto k = static_cast<long>(whole);
  double worst = 0.0;
  for (const Complex z : samples) {
    const WeightedLogValue lhs = log_psi(r_shift, z, policy);
    const WeightedLogValue reduced = log_psi(beta, z - whole, policy);
    CompensatedSum<double> rhs;
    rhs.add(reduced.log_mag);
    for (long m = 1; m <= k; ++m) {
      const double md = static_cast<double>(m);
      rhs.add(std::log(md + beta) - std::log(std::abs(md - z)));
    }
    worst = std::max(worst, std::abs(lhs.log_mag - rhs.value()));
  }
  return worst;
}

double check_hadamard_correction(const LatticeSpec& spec, long terms) {
  if (terms < 1) throw InvalidArgument("check_hadamard_correction: terms >= 1 violated");
  const double a = spec.a();
  const double r = spec.r_shift();
  // m and -m contribute equally; small terms first.
  CompensatedSum<double> s;
  for (long m = terms; m >= 1; --m) {
    const double md = static_cast<double>(m);
    s.add(1.0 / ((md + r) * (md + r)) - 1.0 / (md * md));
  }
  return std::abs(s.value() / (a * a) + m_r_constant(r) / (a * a));
}

}  // namespace fockzero
