#include <doctest.h>

#include <cmath>
#include <string>

#include "support/random_fields.hpp"
#include "ustokes/constructors.hpp"
#include "ustokes/errors.hpp"
#include "ustokes/operators.hpp"

using namespace ustokes;

namespace {

const double kX = std::sqrt(4.0 * kPi / 3.0);  // x = kX r Y_1^1

// Max FD residual of rho dV/dt + grad p - mu lap V - f and of div V on a few points.
std::pair<double, double> fd_residuals(const FlowSolution& s, unsigned seed) {
  testing::RandomFields rf(seed);
  const auto v = s.velocity.evaluator();
  const ScalarEvaluator p = [&s](const Vec3& x, double t) { return s.pressure_at(x, t); };
  double mom = 0.0, cont = 0.0;
  for (int i = 0; i < 12; ++i) {
    const Vec3 x = to_cartesian({rf.uniform(0.6, 1.4), rf.uniform(0.2, 2.9), rf.uniform(0.0, 6.2)});
    const double t = rf.uniform(0.0, 0.5);
    const Vec3 r = s.params.rho * fd_dt(v, x, t) + fd_gradient(p, x, t) - s.params.mu * fd_vector_laplacian(v, x, t) -
                   s.force.eval(x, t);
    mom = std::max(mom, norm(r));
    cont = std::max(cont, std::abs(fd_divergence(v, x, t)));
  }
  return {mom, cont};
}

ScalarField x_field(TimeKind tk, double c) {
  return ScalarField::single({1, 1}, radial::solid_growing(), tk, c * kX);
}

}  // namespace

TEST_CASE("heat Poisson solve inverts mu times the heat operator") {
  testing::RandomFields rf(31);
  const auto probes = probe_points({0.5, 1.5}, 16);
  for (int trial = 0; trial < 20; ++trial) {
    const FluidParams p = rf.params();
    const ScalarField g = rf.field(3, &testing::RandomFields::generic_mode, 0, 3);
    const ScalarField F = solve_heat_poisson(g, p);
    const double scale = std::max(1.0, max_abs(g, probes));
    CHECK(max_abs(p.mu * heat_op(F, p) - g, probes) < 1e-10 * scale);
  }
}

TEST_CASE("heat Poisson solutions checked by finite differences") {
  const FluidParams p = FluidParams::create(0.9, 1.8, 2.0);
  const ScalarField g({{{2, 1}, radial::power_series(2, {1.0, -0.5}), TimeKind::exp(0.7), 1.0},
                       {{1, 0}, radial::bessel_j(1.3), TimeKind::poly(2), 0.8},
                       {{3, -2}, radial::modified_i(0.6), TimeKind::exp(-0.2), -1.1}});
  const ScalarField F = solve_heat_poisson(g, p);
  const ScalarEvaluator f = [F](const Vec3& x, double t) { return F.eval(x, t); };
  for (const auto& pr : probe_points({0.5, 1.5}, 10)) {
    const Vec3 x = to_cartesian(pr.point);
    const double lhs = p.mu * (fd_laplacian(f, x, pr.t) - fd_scalar_dt(f, x, pr.t) / p.nu);
    CHECK(std::abs(lhs - g.eval(x, pr.t)) < 1e-5);
  }
}

TEST_CASE("ascending series stays accurate out to the requested radius") {
  const FluidParams p;
  const auto g = ScalarField::single({1, 0}, radial::power_series(1, {1.0}), TimeKind::exp(2.0), 1.0);
  const ScalarField F = solve_heat_poisson(g, p, {3.0, 1e-17});
  const auto probes = probe_points({0.5, 3.0}, 20);
  CHECK(max_abs(heat_op(F, p) - g, probes) < 1e-10 * std::max(1.0, max_abs(g, probes)));
}

TEST_CASE("resonant right-hand sides are rejected") {
  const FluidParams p = FluidParams::create(0.5, 1.0, 2.0);
  // heat-type forcing has no particular solution in the family
  const auto heat = ScalarField::single({2, 0}, radial::bessel_j(1.5), TimeKind::exp(-0.5 * 2.25), 1.0);
  CHECK_THROWS_AS(solve_heat_poisson(heat, p), ResonanceError);
  // steady r^(n-2) would need a logarithm
  const auto log_case = ScalarField::single({2, 0}, radial::power_series(0, {1.0}), TimeKind::constant(), 1.0);
  CHECK_THROWS_AS(solve_heat_poisson(log_case, p), ResonanceError);
  // a steady harmonic forcing gives a plain power
  const auto steady = ScalarField::single({2, 0}, radial::solid_growing(), TimeKind::constant(), 1.0);
  CHECK_NOTHROW(solve_heat_poisson(steady, p));
}

TEST_CASE("particular A and B satisfy their constraints") {
  testing::RandomFields rf(32);
  const auto probes = probe_points({0.5, 1.5}, 16);
  for (int trial = 0; trial < 10; ++trial) {
    const FlowSpec s = rf.flow_spec();
    const double sa = std::max(1.0, max_abs(exact_laplacian(s.P), probes));
    const double sb = std::max(1.0, max_abs(s.T, probes));
    CHECK(max_abs(a_constraint_residual(s), probes) < 1e-10 * sa);
    CHECK(max_abs(b_constraint_residual(s), probes) < 1e-10 * sb);
  }
}

TEST_CASE("built flows satisfy momentum and continuity by finite differences") {
  testing::RandomFields rf(33);
  for (int trial = 0; trial < 8; ++trial) {
    const FlowSpec s = rf.flow_spec(trial % 2 == 0);
    const FlowSolution sol = build_flow(s);
    CHECK(sol.provenance == "build_flow");
    CHECK(sol.pressure_offset == s.p0);
    const auto [mom, cont] = fd_residuals(sol, 600 + trial);
    CHECK(mom < 1e-4);
    CHECK(cont < 1e-8);
  }
}

TEST_CASE("constraint violations name the failing equation") {
  FlowSpec s;
  s.A = ScalarField::single({2, 0}, radial::power_series(6, {1.0}), TimeKind::constant(), 1.0);
  try {
    build_flow(s);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("A equation") != std::string::npos);
  }
  FlowSpec b;
  b.T = ScalarField::single({1, 0}, radial::solid_growing(), TimeKind::constant(), 1.0);
  try {
    build_flow(b);
    FAIL("expected SpecError");
  } catch (const SpecError& e) {
    CHECK(std::string(e.what()).find("B equation") != std::string::npos);
  }
}

TEST_CASE("Naghdi-Hsu construction") {
  const FluidParams p = FluidParams::create(0.8, 1.6, 2.0);
  const double lam = 1.3;
  const ScalarField heat({{{2, 1}, radial::bessel_j(lam), TimeKind::exp(-p.nu * lam * lam), 0.9}});
  const ScalarField steady({{{3, -1}, radial::solid_growing(), TimeKind::constant(), 0.4}});
  const VectorField Phi = VectorField::curl_r(heat) + VectorField::curl_curl_r(heat) + VectorField::gradient(steady);
  const ScalarField psi1 = x_field(TimeKind::poly(1), -p.mu * p.nu);
  const FlowSolution sol = naghdi_hsu(Phi, psi1, p);
  const auto probes = probe_points({0.5, 1.5}, 10);
  CHECK(max_abs(sol.pressure - x_field(TimeKind::constant(), p.mu), probes) < 1e-14);
  const auto [mom, cont] = fd_residuals(sol, 700);
  CHECK(mom < 1e-4);
  CHECK(cont < 1e-8);

  SUBCASE("preconditions") {
    const ScalarField nonharm = ScalarField::single({1, 0}, radial::bessel_j(1.0), TimeKind::constant(), 1.0);
    CHECK_THROWS_AS(naghdi_hsu(Phi, nonharm, p), PreconditionError);
    const VectorField not_heat =
        VectorField::curl_r(ScalarField::single({1, 0}, radial::bessel_j(1.0), TimeKind::constant(), 1.0));
    CHECK_THROWS_AS(naghdi_hsu(not_heat, psi1, p), PreconditionError);
    const VectorField divergent = VectorField::radial_times(
        ScalarField::single({0, 0}, radial::solid_growing(), TimeKind::constant(), 1.0));
    CHECK_THROWS_AS(naghdi_hsu(divergent, psi1, p), PreconditionError);
    CHECK_THROWS_AS(naghdi_hsu(VectorField::sampled([](const Vec3& x, double) { return x; }), psi1, p),
                    PreconditionError);
  }
}

TEST_CASE("harmonic pressure flows") {
  testing::RandomFields rf(34);
  const auto probes = probe_points({0.5, 1.5}, 10);
  for (int trial = 0; trial < 6; ++trial) {
    const FluidParams p = rf.params();
    std::vector<ScalarMode> modes;
    for (int k = 0; k < 3; ++k) modes.push_back(rf.harmonic_mode(true, 0, 3));
    const ScalarField pressure(modes);
    const FlowSolution sol = harmonic_pressure_flow(pressure, p);
    CHECK(sol.provenance == "harmonic_pressure_flow");
    CHECK(max_abs(sol.pressure - pressure, probes) < 1e-10);
    const auto [mom, cont] = fd_residuals(sol, 800 + trial);
    CHECK(mom < 1e-4);
    CHECK(cont < 1e-8);
  }
  const FluidParams p;
  CHECK_THROWS_AS(
      harmonic_pressure_flow(ScalarField::single({0, 0}, radial::solid_decaying(), TimeKind::constant(), 1.0), p),
      MonopoleError);
  CHECK_THROWS_AS(
      harmonic_pressure_flow(ScalarField::single({1, 0}, radial::bessel_j(1.0), TimeKind::constant(), 1.0), p),
      PreconditionError);
}
