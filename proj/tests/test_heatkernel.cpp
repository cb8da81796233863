#include <doctest.h>

#include <cmath>

#include "support/random_fields.hpp"
#include "ustokes/errors.hpp"
#include "ustokes/heatkernel.hpp"

using namespace ustokes;

namespace {

const double kY00 = 1.0 / (2.0 * std::sqrt(kPi));
const double kX = std::sqrt(4.0 * kPi / 3.0);

ScalarField one() { return ScalarField::single({0, 0}, radial::solid_growing(), TimeKind::constant(), 1.0 / kY00); }
ScalarField x_field(TimeKind tk, double c) {
  return ScalarField::single({1, 1}, radial::solid_growing(), tk, c * kX);
}

}  // namespace

TEST_CASE("quadrature domain") {
  CHECK(QuadratureDomain::ball(2.0).contains(Vec3{1.0, 1.0, 0.0}));
  CHECK_FALSE(QuadratureDomain::ball(1.0).contains(Vec3{1.0, 1.0, 0.0}));
  CHECK_FALSE(QuadratureDomain::shell(0.5, 1.0).contains(Vec3{0.1, 0.0, 0.0}));
  auto d = QuadratureDomain::ball(1.0);
  d.n_r = 1;
  CHECK_THROWS_AS(d.validate(), InvalidArgument);
  CHECK_THROWS_AS(QuadratureDomain::shell(1.0, 0.5).validate(), InvalidArgument);
}

TEST_CASE("constant density far from the boundary") {
  const FluidParams p;
  const auto dom = QuadratureDomain::ball(2.0);
  CHECK(psi_integral(one(), Vec3{}, 0.01, dom, p) == doctest::Approx(-0.01).epsilon(1e-6));
  CHECK(psi_integral(one(), Vec3{0.1, -0.1, 0.05}, 0.01, dom, p) == doctest::Approx(-0.01).epsilon(1e-6));
  const FluidParams slow = FluidParams::create(0.5, 1.0, 2.0);
  CHECK(psi_integral(one(), Vec3{}, 0.02, dom, slow) == doctest::Approx(-0.01).epsilon(1e-6));
}

TEST_CASE("linear density reproduces -nu t x") {
  const FluidParams p = FluidParams::create(0.8, 0.8, 1.0);
  const auto dom = QuadratureDomain::ball(2.0);
  const ScalarField px = x_field(TimeKind::constant(), 1.0);
  for (const Vec3& x : {Vec3{0.1, 0.0, 0.0}, Vec3{-0.15, 0.1, 0.05}}) {
    CHECK(std::abs(psi_integral(px, x, 0.01, dom, p) + p.nu * 0.01 * x.x) < 1e-8);
  }
}

TEST_CASE("literal kernel differs by -pi^(3/2)") {
  const FluidParams p;
  const auto dom = QuadratureDomain::ball(2.0);
  PsiOptions lit;
  lit.kernel = KernelForm::Literal;
  const Vec3 x{0.05, 0.02, 0.0};
  const double a = psi_integral(one(), x, 0.01, dom, p);
  const double b = psi_integral(one(), x, 0.01, dom, p, lit);
  CHECK(b == doctest::Approx(-std::pow(kPi, 1.5) * a).epsilon(1e-12));
}

TEST_CASE("shell support") {
  const FluidParams p;
  const auto dom = QuadratureDomain::shell(1.0, 2.0);
  CHECK(psi_integral(one(), Vec3{1.5, 0.0, 0.0}, 0.005, dom, p) == doctest::Approx(-0.005).epsilon(1e-6));
  // far outside the support the Gaussian has not arrived yet
  CHECK(std::abs(psi_integral(one(), Vec3{}, 0.005, dom, p)) < 1e-12);
  CHECK(std::abs(psi_integral(one(), Vec3{4.0, 0.0, 0.0}, 0.005, dom, p)) < 1e-12);
}

TEST_CASE("edge cases") {
  const FluidParams p;
  const auto dom = QuadratureDomain::ball(1.0);
  CHECK_THROWS_AS(psi_integral(one(), Vec3{}, -0.1, dom, p), DomainError);
  CHECK(psi_integral(one(), Vec3{}, 0.0, dom, p) == 0.0);
  CHECK(psi_integral(ScalarField(), Vec3{}, 0.3, dom, p) == 0.0);
}

TEST_CASE("budget check") {
  const FluidParams p;
  auto dom = QuadratureDomain::ball(1.0);
  dom.n_r = 4;
  dom.n_theta = 3;
  dom.n_phi = 4;
  dom.n_time = 3;
  PsiOptions strict;
  strict.tolerance = 1e-12;
  // the point sits on the boundary, so a coarse rule cannot resolve the kink
  CHECK_THROWS_AS(psi_integral(one(), Vec3{1.0, 0.0, 0.0}, 0.2, dom, p, strict), QuadratureBudgetError);
  PsiOptions loose;
  loose.tolerance = 1e-6;
  CHECK_NOTHROW(psi_integral(one(), Vec3{}, 0.01, QuadratureDomain::ball(2.0), p, loose));
}

TEST_CASE("heat operator of the potential returns the density") {
  const FluidParams p;
  auto dom = QuadratureDomain::ball(2.0);
  const ScalarField px = x_field(TimeKind::constant(), 1.0) + 0.5 * one();
  const Vec3 x{0.1, 0.05, -0.05};
  const double t = 0.01, h = 2e-3, ht = 1e-4;
  auto psi = [&](const Vec3& y, double s) { return psi_integral(px, y, s, dom, p); };
  const double c = psi(x, t);
  double lap = 0.0;
  for (int k = 0; k < 3; ++k) {
    Vec3 e;
    e[k] = h;
    lap += (psi(x + e, t) - 2.0 * c + psi(x - e, t)) / (h * h);
  }
  const double dt = (psi(x, t + ht) - psi(x, t - ht)) / (2.0 * ht);
  CHECK(std::abs(lap - dt / p.nu - px.eval(x, t)) < 1e-3);
}

TEST_CASE("split of psi into harmonic and heat-type parts") {
  testing::RandomFields rf(41);
  const auto probes = probe_points({0.5, 1.5}, 16);
  for (int trial = 0; trial < 10; ++trial) {
    const FluidParams p = rf.params();
    std::vector<ScalarMode> harm, heat;
    for (int k = 0; k < 2; ++k) {
      harm.push_back(rf.harmonic_mode(true, 0, 3));
      heat.push_back(rf.heat_mode(p, 0, 3));
    }
    const ScalarField series = solve_heat_poisson(ScalarField({rf.harmonic_mode(false, 0, 3)}), p);
    const ScalarField psi = ScalarField(harm) + ScalarField(heat) + series;
    const PsiSplit s = split_psi(psi, p);
    CHECK(max_abs(psi - s.psi1 - s.psi2, probes) < 1e-12);
    CHECK(max_abs(exact_laplacian(s.psi1), probes) < 1e-10);
    CHECK(max_abs(heat_op(s.psi2, p), probes) < 1e-10);
  }
}

TEST_CASE("pressure from the harmonic part") {
  const FluidParams p = FluidParams::create(0.5, 1.5, 3.0);
  const ScalarField psi = x_field(TimeKind::poly(1), -p.mu * p.nu);
  const PsiSplit s = split_psi(psi, p);
  const auto probes = probe_points({0.5, 1.5}, 10);
  CHECK(max_abs(s.psi2, probes) < 1e-14);
  CHECK(max_abs(pressure_from_psi1(s.psi1, p) - x_field(TimeKind::constant(), p.mu), probes) < 1e-14);
  const ScalarField bad = ScalarField::single({0, 0}, radial::power_series(4, {1.0}), TimeKind::constant(), 1.0);
  CHECK_THROWS_AS(split_psi(bad, p), SpecError);
}
