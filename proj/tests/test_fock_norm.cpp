#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fockzero/error.hpp"
#include "fockzero/fock_norm.hpp"

using namespace fockzero;

namespace {

const TruncationPolicy kPolicy{};
const QuadratureSpec kQuad{};

NormTrace synthetic_trace(double slope, double pitch) {
  NormTrace t;
  t.p = 1.0;
  t.pitch = pitch;
  double total = 0.0;
  for (double r = pitch; r < 65.0 * pitch; r *= 2.0) {
    AnnulusMass m;
    m.r_in = r;
    m.r_out = 2.0 * r;
    m.mass = 3.0 * std::pow(std::sqrt(m.r_in * m.r_out), slope);
    m.refined_mass = m.mass;
    total += m.mass;
    t.annuli.push_back(m);
    t.cumulative.push_back(total);
  }
  return t;
}

}  // namespace

TEST_CASE("QuadratureSpec validation and refinement") {
  CHECK_NOTHROW(kQuad.validate());
  CHECK_THROWS_AS((QuadratureSpec{0.2, 0.1, 0.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((QuadratureSpec{0.1, 0.0, 0.0}.validate()), InvalidArgument);
  const QuadratureSpec fine = kQuad.refined();
  CHECK(fine.radial_step == kQuad.radial_step / 2.0);
  CHECK(fine.angular_step == kQuad.angular_step / 2.0);
}

TEST_CASE("growth exponent of a synthetic power law") {
  CHECK(growth_exponent(synthetic_trace(-3.0, 1.0)) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(growth_exponent(synthetic_trace(1.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-12));
  NormTrace short_trace = synthetic_trace(-3.0, 1.0);
  short_trace.annuli.resize(4);
  CHECK_THROWS_AS(growth_exponent(short_trace), InsufficientAnnuli);
}

TEST_CASE("verdict bands") {
  CHECK(classify_growth(-2.0) == Verdict::convergent);
  CHECK(classify_growth(1.0) == Verdict::divergent);
  CHECK(classify_growth(0.29) == Verdict::borderline);
  CHECK(classify_growth(-0.3) == Verdict::borderline);
  CHECK(to_string(Verdict::borderline) == "borderline");
}

TEST_CASE("weighted integrand") {
  const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  CHECK(weighted_integrand(spec, 2.0, 2.0, kPolicy) == 0.0);
  CHECK(weighted_integrand(spec, 2.0, 0.0, kPolicy) == 0.0);
  const Complex z(0.5, 0.5);
  const WeightedLogValue v = log_modified_sigma_direct(spec, z, kPolicy);
  CHECK(weighted_integrand(spec, 2.0, z, kPolicy) ==
        doctest::Approx(std::exp(2.0 * (v.log_mag - 0.5 * std::numbers::pi * 0.5))).epsilon(1e-14));
  CHECK_THROWS_AS(weighted_integrand(spec, 0.0, z, kPolicy), InvalidArgument);
}

TEST_CASE("annulus masses are additive over grid-aligned cuts") {
  const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, 0.75);
  const double ps[] = {0.5, 2.0};
  const auto whole = annulus_masses(spec, ps, 1.0, 4.0, kQuad, kPolicy, false);
  const auto inner = annulus_masses(spec, ps, 1.0, 2.5, kQuad, kPolicy, false);
  const auto outer = annulus_masses(spec, ps, 2.5, 4.0, kQuad, kPolicy, false);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(whole[i].mass == doctest::Approx(inner[i].mass + outer[i].mass).epsilon(1e-12));
    CHECK(whole[i].refined_mass == whole[i].mass);
  }
  // Multi-p pass equals single-p calls.
  CHECK(annulus_mass(spec, 2.0, 1.0, 4.0, kQuad, kPolicy, false).mass == whole[1].mass);
  CHECK(annulus_mass(spec, 2.0, 3.0, 3.0, kQuad, kPolicy).mass == 0.0);
  CHECK_THROWS_AS(annulus_mass(spec, 2.0, 3.0, 2.0, kQuad, kPolicy), InvalidArgument);
}

TEST_CASE("annulus masses do not depend on the angular offset") {
  const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  QuadratureSpec rotated = kQuad;
  rotated.angular_offset = 0.3;
  for (double p : {0.5, 2.0}) {
    const double m0 = annulus_mass(spec, p, 4.0, 8.0, kQuad, kPolicy, false).mass;
    const double m1 = annulus_mass(spec, p, 4.0, 8.0, rotated, kPolicy, false).mass;
    CHECK(std::abs(m1 - m0) <= 0.02 * m0);
  }
}

TEST_CASE("masses scale as a^p with the pitch") {
  // sigma_{a,R}(a u) = a sigma_{1,R}(u) and alpha a^2 = pi, so the weighted
  // mass of [a r1, a r2] is a^p times the unit-pitch mass of [r1, r2].
  const LatticeSpec unit = LatticeSpec::from_pitch(1.0, 0.75);
  const LatticeSpec wide = LatticeSpec::from_pitch(2.0, 0.75);
  for (double p : {0.5, 2.0}) {
    const double m1 = annulus_mass(unit, p, 1.0, 3.0, kQuad, kPolicy, false).mass;
    const double m2 = annulus_mass(wide, p, 2.0, 6.0, kQuad, kPolicy, false).mass;
    CHECK(m2 == doctest::Approx(std::pow(2.0, p) * m1).epsilon(1e-6));
  }
}

TEST_CASE("refinement check leaves well-resolved annuli unflagged") {
  const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  const AnnulusMass m = annulus_mass(spec, 2.0, 2.0, 4.0, kQuad, kPolicy, true);
  CHECK(m.relative_change < 0.05);
  CHECK_FALSE(m.under_resolved);
  CHECK(m.refined_mass > 0.0);
}

TEST_CASE("norm trace layout and the borderline exponent") {
  const LatticeSpec spec = LatticeSpec::from_alpha(std::numbers::pi, 1.0);
  const NormTrace t = norm_trace(spec, 1.0, 32.0, kQuad, kPolicy, false);
  REQUIRE(t.annuli.size() == 6);
  CHECK(t.annuli.front().r_in == 0.0);
  CHECK(t.annuli.front().r_out == 1.0);
  CHECK(t.annuli.back().r_in == 16.0);
  CHECK(t.annuli.back().r_out == 32.0);
  for (std::size_t i = 1; i < t.cumulative.size(); ++i) CHECK(t.cumulative[i] > t.cumulative[i - 1]);
  const double e = growth_exponent(t);
  CHECK(std::abs(e) <= 0.3);
  CHECK(classify_growth(e) == Verdict::borderline);
  CHECK_THROWS_AS(norm_trace(spec, 1.0, 3.0, kQuad, kPolicy), InvalidArgument);
}
