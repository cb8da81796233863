#include <doctest.h>

#include <cmath>

#include "support/random_fields.hpp"
#include "ustokes/errors.hpp"
#include "ustokes/verify.hpp"

using namespace ustokes;

namespace {

const double kX = std::sqrt(4.0 * kPi / 3.0);

ScalarField x_field(double c) { return ScalarField::single({1, 1}, radial::solid_growing(), TimeKind::constant(), c * kX); }

}  // namespace

TEST_CASE("report helpers") {
  ResidualReport a, b;
  a.entries.push_back({"momentum", "exact", 1e-12, 1e-13, {}, 0.0, {1e-12}, 1e-8, true});
  b.entries.push_back({"momentum", "fd", 1e-3, 1e-4, {}, 0.0, {1e-3}, 1e-4, false});
  CHECK(a.pass());
  a.append(b);
  CHECK_FALSE(a.pass());
  REQUIRE(a.find("momentum", "fd") != nullptr);
  CHECK(a.find("momentum", "fd")->max_abs == 1e-3);
  CHECK(a.find("continuity") == nullptr);
}

TEST_CASE("built flows verify on both paths") {
  testing::RandomFields rf(71);
  const ShellGrid g = ShellGrid::make_default();
  for (int trial = 0; trial < 4; ++trial) {
    const FlowSolution sol = build_flow(rf.flow_spec(trial % 2 == 1));
    const ResidualReport rep = verify_flow(sol, g);
    for (const auto& e : rep.entries) {
      INFO(e.name, " ", e.path, " ", e.max_abs);
      CHECK(e.pass);
    }
    for (const char* name : {"momentum", "continuity"}) {
      REQUIRE(rep.find(name) != nullptr);
      REQUIRE(rep.find(name, "fd") != nullptr);
      CHECK(rep.find(name)->max_abs < 1e-8);
      CHECK(rep.find(name, "fd")->max_abs < 1e-4);
      CHECK(rep.find(name)->max_per_time.size() == g.times.size());
    }
    CHECK((rep.find("biharmonic") != nullptr) == sol.force.is_zero());
  }
}

TEST_CASE("a wrong pressure is caught and located") {
  testing::RandomFields rf(72);
  const FlowSolution sol = build_flow(rf.flow_spec(true));
  const ShellGrid g = ShellGrid::make_default();
  const Pressure bad = Pressure::of(sol.pressure + x_field(0.5), sol.pressure_offset);
  const ResidualReport rep = momentum_residual(sol.velocity, bad, sol.force, g, sol.params);
  REQUIRE(rep.find("momentum") != nullptr);
  CHECK(rep.find("momentum")->max_abs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.find("momentum", "fd")->max_abs == doctest::Approx(0.5).epsilon(1e-4));
  CHECK_FALSE(rep.pass());
}

TEST_CASE("black-box pressure uses the FD path only") {
  testing::RandomFields rf(73);
  const FlowSolution sol = build_flow(rf.flow_spec(true));
  const ShellGrid g = ShellGrid::make(0.5, 1.5, 3, 4, 8, {0.0, 0.5});
  const Pressure bb = Pressure::black_box([&sol](const Vec3& x, double t) { return sol.pressure_at(x, t); });
  const ResidualReport rep = momentum_residual(sol.velocity, bb, sol.force, g, sol.params);
  CHECK(rep.find("momentum") == nullptr);
  REQUIRE(rep.find("momentum", "fd") != nullptr);
  CHECK(rep.find("momentum", "fd")->max_abs < 1e-4);
}

TEST_CASE("exact-zero residuals report the lexicographically first point") {
  const ShellGrid g = ShellGrid::make_default();
  const VectorField v = VectorField::curl_r(x_field(1.0));
  VerifyOptions o;
  o.run_fd = false;
  const ResidualReport rep = continuity_residual(v, g, o);
  const auto* e = rep.find("continuity");
  REQUIRE(e != nullptr);
  CHECK(e->max_abs == 0.0);
  CHECK(e->worst_point.r == g.r_nodes.front());
  CHECK(e->worst_point.theta == g.theta_nodes.front());
  CHECK(e->worst_point.phi == g.phi_nodes.front());
  CHECK(e->worst_time == g.times.front());
}

TEST_CASE("counterexample: solenoidal and biharmonic-heat but not a Stokes flow") {
  const FluidParams p = FluidParams::create(0.7, 0.7, 1.0);
  const VectorField v = counterexample_velocity(p);
  const Vec3 x{0.3, -0.8, 0.4};
  const Vec3 expect = Vec3{x.y, -x.x, 0.0} * std::exp(p.nu * 0.4);
  CHECK(norm(v.eval(x, 0.4) - expect) < 1e-14);
  const ShellGrid g = ShellGrid::make(0.5, 1.5, 5, 6, 12, {0.0, 1.0});
  CHECK(continuity_residual(v, g).pass());
  CHECK(biharmonic_heat_residual(v, g, p).pass());
  const ResidualReport cond = condition_residual(v, g, p);
  for (const char* path : {"exact", "fd"}) {
    const auto* e = cond.find("condition", path);
    REQUIRE(e != nullptr);
    for (std::size_t ti = 0; ti < g.times.size(); ++ti) {
      CHECK(e->max_per_time[ti] == doctest::Approx(2.0 * std::exp(p.nu * g.times[ti])).epsilon(1e-6));
    }
  }
  const auto loops = loop_integrals(pressure_gradient_candidate(v, p), g.shell(), 1.0);
  CHECK(loops[0] == doctest::Approx(2.0 * kPi * p.mu * std::exp(p.nu)).epsilon(1e-10));
  CHECK(std::abs(loops[1]) < 1e-12);
  CHECK(std::abs(loops[2]) < 1e-12);
  try {
    recover_pressure(v, g, p);
    FAIL("expected PathDependenceError");
  } catch (const PathDependenceError& e) {
    CHECK(std::abs(e.loop_value()) == doctest::Approx(2.0 * kPi * p.mu * std::exp(p.nu)).epsilon(1e-8));
  }
}

TEST_CASE("pressure recovery reproduces a built pressure") {
  testing::RandomFields rf(74);
  const ShellGrid g = ShellGrid::make(0.5, 1.5, 3, 4, 8, {0.0, 0.5});
  for (int trial = 0; trial < 3; ++trial) {
    const FlowSolution sol = build_flow(rf.flow_spec(true));
    const RecoveredPressure rp = recover_pressure(sol.velocity, g, sol.params);
    for (double t : {0.0, 0.5}) {
      const double ref = sol.pressure_at(rp.base(), t);
      for (const auto& s : g.points()) {
        const Vec3 x = to_cartesian(s);
        const double want = sol.pressure_at(x, t) - ref;
        CHECK(std::abs(rp.at(x, t) - want) < 1e-8 * std::max(1.0, std::abs(want)));
        CHECK(std::abs(rp.along(2, x, t) - want) < 1e-8 * std::max(1.0, std::abs(want)));
      }
    }
    CHECK(rp.values.size() == rp.times.size() * rp.points.size());
  }
}

TEST_CASE("loops of a gradient vanish") {
  const ScalarField phi({{{2, 1}, radial::bessel_j(1.1), TimeKind::exp(-0.3), 1.0},
                         {{3, -2}, radial::solid_growing(), TimeKind::constant(), 0.5}});
  const VectorField g = VectorField::gradient(phi);
  for (double l : loop_integrals(g.evaluator(), {0.5, 1.5}, 0.2)) CHECK(std::abs(l) < 1e-12);
}
