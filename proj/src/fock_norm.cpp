#include "fockzero/fock_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fockzero/compensated_sum.hpp"
#include "fockzero/error.hpp"
#include "fockzero/parallel.hpp"

namespace fockzero {

void QuadratureSpec::validate() const {
  if (!(radial_step > 0.0 && radial_step <= 0.125)) {
    throw InvalidArgument("QuadratureSpec: radial_step must lie in (0, a/8]");
  }
  if (!(angular_step > 0.0 && angular_step <= 0.125)) {
    throw InvalidArgument("QuadratureSpec: angular_step must lie in (0, a/8]");
  }
}

QuadratureSpec QuadratureSpec::refined() const {
  return {radial_step / 2.0, angular_step / 2.0, angular_offset};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    case Verdict::borderline: return "borderline";
  }
  return "unknown";
}

double weighted_integrand(const LatticeSpec& spec, double p, Complex z, const TruncationPolicy& policy) {
  if (!(p > 0.0)) throw InvalidArgument("weighted_integrand: p > 0 violated");
  const WeightedLogValue v = log_modified_sigma_direct(spec, z, policy);
  if (v.at_zero) return 0.0;
  return std::exp(p * (v.log_mag - 0.5 * spec.alpha() * std::norm(z)));
}

namespace {

constexpr double kUnderResolvedThreshold = 0.05;

struct Panel {
  double r = 0.0;
  double dr = 0.0;
  long n_theta = 0;
};

std::vector<Panel> radial_panels(double a, const QuadratureSpec& quad, double r_in, double r_out) {
  std::vector<Panel> out;
  const double h = quad.radial_step * a;
  const auto k0 = static_cast<long>(std::floor(r_in / h + 1e-9));
  const auto k1 = static_cast<long>(std::ceil(r_out / h - 1e-9));
  for (long k = k0; k < k1; ++k) {
    const double lo = std::max(static_cast<double>(k) * h, r_in);
    const double hi = std::min(static_cast<double>(k + 1) * h, r_out);
    if (!(hi > lo)) continue;
    auto n = static_cast<long>(std::ceil(2.0 * std::numbers::pi * hi / (quad.angular_step * a)));
    n = std::max<long>(8, n + (n % 2));
    out.push_back({0.5 * (lo + hi), hi - lo, n});
  }
  return out;
}

// Integral of exp(p L) over the panels, without the p alpha / 2 pi prefactor,
// for every p at once.
std::vector<double> integrate_panels(const WeightedModifiedSigma& eval, std::span<const double> ps,
                                     const std::vector<Panel>& panels, double offset) {
  const std::size_t np = ps.size();
  std::vector<double> per_panel(panels.size() * np, 0.0);
  parallel_for(panels.size(), [&](std::size_t k) {
    const Panel& panel = panels[k];
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(panel.n_theta);
    std::vector<CompensatedSum<double>> ring(np);
    for (long j = 0; j < panel.n_theta; ++j) {
      const double theta = offset + (static_cast<double>(j) + 0.5) * dtheta;
      const WeightedLogValue v = eval(std::polar(panel.r, theta));
      if (v.at_zero) continue;
      for (std::size_t i = 0; i < np; ++i) ring[i].add(std::exp(ps[i] * v.log_mag));
    }
    for (std::size_t i = 0; i < np; ++i) {
      per_panel[k * np + i] = ring[i].value() * panel.r * panel.dr * dtheta;
    }
  });
  std::vector<double> totals(np, 0.0);
  for (std::size_t i = 0; i < np; ++i) {
    CompensatedSum<double> s;
    for (std::size_t k = 0; k < panels.size(); ++k) s.add(per_panel[k * np + i]);
    totals[i] = s.value();
  }
  return totals;
}

void check_exponents(std::span<const double> ps) {
  if (ps.empty()) throw InvalidArgument("norm: at least one exponent p is required");
  for (double p : ps) {
    if (!(p > 0.0)) throw InvalidArgument("norm: p > 0 violated");
  }
}

}  // namespace

std::vector<AnnulusMass> annulus_masses(const LatticeSpec& spec, std::span<const double> ps,
                                        double r_in, double r_out, const QuadratureSpec& quad,
                                        const TruncationPolicy& policy, bool check_resolution) {
  quad.validate();
  policy.validate();
  check_exponents(ps);
  if (!(r_in >= 0.0 && r_out >= r_in)) {
    throw InvalidArgument("annulus_mass: 0 <= r_in <= r_out violated");
  }

  std::vector<AnnulusMass> out(ps.size());
  for (auto& m : out) {
    m.r_in = r_in;
    m.r_out = r_out;
  }
  if (r_out == r_in) return out;

  const WeightedModifiedSigma eval(spec, r_out, policy);
  const double a = spec.a();
  const std::vector<double> base =
      integrate_panels(eval, ps, radial_panels(a, quad, r_in, r_out), quad.angular_offset);
  std::vector<double> fine = base;
  if (check_resolution) {
    const QuadratureSpec q2 = quad.refined();
    fine = integrate_panels(eval, ps, radial_panels(a, q2, r_in, r_out), q2.angular_offset);
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const double prefactor = ps[i] * spec.alpha() / (2.0 * std::numbers::pi);
    out[i].mass = prefactor * base[i];
    out[i].refined_mass = prefactor * fine[i];
    out[i].relative_change =
        out[i].mass > 0.0 ? std::abs(out[i].refined_mass - out[i].mass) / out[i].mass : 0.0;
    out[i].under_resolved = out[i].relative_change > kUnderResolvedThreshold;
  }
  return out;
}

AnnulusMass annulus_mass(const LatticeSpec& spec, double p, double r_in, double r_out,
                         const QuadratureSpec& quad, const TruncationPolicy& policy, bool check_resolution) {
  const double ps[] = {p};
  return annulus_masses(spec, ps, r_in, r_out, quad, policy, check_resolution).front();
}

std::vector<NormTrace> norm_traces(const LatticeSpec& spec, std::span<const double> ps, double rho_max,
                                   const QuadratureSpec& quad, const TruncationPolicy& policy,
                                   bool check_resolution) {
  check_exponents(ps);
  const double a = spec.a();
  if (!(rho_max >= 4.0 * a * (1.0 - 1e-12))) {
    throw InvalidArgument("norm_trace: rho_max >= 4a violated");
  }

  std::vector<std::pair<double, double>> ladder{{0.0, a}};
  for (double r = a; 2.0 * r <= rho_max * (1.0 + 1e-12); r *= 2.0) ladder.emplace_back(r, 2.0 * r);

  std::vector<NormTrace> traces(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    traces[i].p = ps[i];
    traces[i].pitch = a;
  }
  for (const auto& [lo, hi] : ladder) {
    const auto masses = annulus_masses(spec, ps, lo, hi, quad, policy, check_resolution);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      NormTrace& t = traces[i];
      t.annuli.push_back(masses[i]);
      t.cumulative.push_back((t.cumulative.empty() ? 0.0 : t.cumulative.back()) + masses[i].mass);
    }
  }
  return traces;
}

NormTrace norm_trace(const LatticeSpec& spec, double p, double rho_max, const QuadratureSpec& quad,
                     const TruncationPolicy& policy, bool check_resolution) {
  const double ps[] = {p};
  return std::move(norm_traces(spec, ps, rho_max, quad, policy, check_resolution).front());
}

double growth_exponent(const NormTrace& trace) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const AnnulusMass& m : trace.annuli) {
    if (m.r_in < 4.0 * trace.pitch * (1.0 - 1e-12)) continue;
    if (!(m.mass > 0.0)) throw InvalidArgument("growth_exponent: annulus mass must be positive");
    xs.push_back(0.5 * (std::log(m.r_in) + std::log(m.r_out)));
    ys.push_back(std::log(m.mass));
  }
  if (xs.size() < 3) {
    std::ostringstream msg;
    msg << "growth_exponent: need at least 3 annuli beyond 4a, found " << xs.size();
    throw InsufficientAnnuli(msg.str());
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

Verdict classify_growth(double exponent, double band) {
  if (exponent < -band) return Verdict::convergent;
  if (exponent > band) return Verdict::divergent;
  return Verdict::borderline;
}

}  // namespace fockzero
