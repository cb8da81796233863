#include <doctest.h>

#include <cmath>

#include "support/random_fields.hpp"
#include "ustokes/errors.hpp"
#include "ustokes/io.hpp"

using namespace ustokes;

namespace {

bool same_modes(const ScalarField& a, const ScalarField& b) {
  if (a.modes().size() != b.modes().size()) return false;
  for (std::size_t k = 0; k < a.modes().size(); ++k) {
    const auto &x = a.modes()[k], &y = b.modes()[k];
    if (!(x.index == y.index && x.radial == y.radial && x.time == y.time && x.coeff == y.coeff)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("mode schema round trip") {
  const std::vector<ScalarMode> modes{
      {{1, 0}, radial::solid_growing(), TimeKind::constant(), 1.5},
      {{2, -1}, radial::solid_decaying(), TimeKind::exp(-0.25), -0.5},
      {{3, 2}, radial::bessel_j(1.2), TimeKind::poly(2), 0.1},
      {{1, 1}, radial::bessel_y(0.7), TimeKind::constant(), 2.0},
      {{2, 2}, radial::modified_i(1.1), TimeKind::exp(0.3), 1.0},
      {{0, 0}, radial::modified_k(0.9), TimeKind::constant(), 1.0},
      {{2, 0}, radial::power_series(4, {1.0, 0.0, -2.5}), TimeKind::poly(1), 0.75},
  };
  for (const auto& m : modes) {
    const ScalarMode back = mode_from_json(json::parse(to_json(m).dump()));
    CHECK(back.index == m.index);
    CHECK(back.radial == m.radial);
    CHECK(back.time == m.time);
    CHECK(back.coeff == m.coeff);
  }
}

TEST_CASE("documented mode example parses") {
  const json j = json::parse(
      R"({"n":1,"m":0,"radial":{"kind":"solid_growing"},"time":{"kind":"exp","sigma":0.0},"coeff":1.0})");
  const ScalarMode m = mode_from_json(j);
  CHECK(m.index == SphIndex{1, 0});
  CHECK(m.time == TimeKind::constant());
}

TEST_CASE("malformed modes are rejected") {
  CHECK_THROWS_AS(mode_from_json(json::parse(R"({"n":1,"m":2,"radial":{"kind":"solid_growing"}})")), Error);
  CHECK_THROWS_AS(mode_from_json(json::parse(R"({"n":1,"m":0,"radial":{"kind":"hankel"}})")), ParseError);
  CHECK_THROWS_AS(mode_from_json(json::parse(R"({"m":0})")), ParseError);
  CHECK_THROWS_AS(mode_from_json(json::parse(R"({"n":1,"m":0,"radial":{"kind":"bessel_j","lambda":-1}})")),
                  InvalidArgument);
}

TEST_CASE("flow spec round trip") {
  testing::RandomFields rf(81);
  const FlowSpec s = rf.flow_spec();
  const FlowSpec back = flowspec_from_json(json::parse(to_json(s).dump()));
  CHECK(back.params.nu == s.params.nu);
  CHECK(back.params.mu == s.params.mu);
  CHECK(back.p0 == s.p0);
  CHECK(same_modes(back.A, s.A));
  CHECK(same_modes(back.B, s.B));
  CHECK(same_modes(back.T, s.T));
}

TEST_CASE("viscosity parameters") {
  const FlowSpec a = flowspec_from_json(json::parse(R"({"mu":2.0,"rho":4.0})"));
  CHECK(a.params.nu == doctest::Approx(0.5));
  const FlowSpec b = flowspec_from_json(json::parse(R"({"nu":0.5,"mu":1.0})"));
  CHECK(b.params.rho == doctest::Approx(2.0));
  CHECK_THROWS_AS(flowspec_from_json(json::parse(R"({"nu":1.0})")), ParseError);
  CHECK_THROWS_AS(flowspec_from_json(json::parse(R"({"nu":1.0,"mu":1.0,"rho":3.0})")), InvalidArgument);
}

TEST_CASE("files") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/spec.json"), ParseError);
  const json j = read_json_file(USTOKES_SPECS_DIR "/general_flow.json");
  CHECK_NOTHROW(flowspec_from_json(j));
}

TEST_CASE("report serialization") {
  ResidualReport r;
  r.entries.push_back({"momentum", "exact", 1e-12, 1e-13, {0.5, 1.0, 2.0}, 0.1, {1e-12}, 1e-8, true});
  r.entries.push_back({"momentum", "fd", 2e-3, 1e-4, {0.5, 1.0, 2.0}, 0.1, {2e-3}, 1e-4, false});
  const json j = to_json(r);
  CHECK(j["pass"] == false);
  CHECK(j["residuals"]["momentum"]["max"] == 1e-12);
  CHECK(j["residuals"]["momentum_fd"]["pass"] == false);
  CHECK(j["residuals"]["momentum"]["worst_point"].size() == 3);
  CHECK(to_json(r).dump() == j.dump());
}

TEST_CASE("solution serialization") {
  testing::RandomFields rf(82);
  const FlowSolution sol = build_flow(rf.flow_spec(true));
  const json j = to_json(sol);
  CHECK(j.contains("pressure"));
  const ScalarField p = field_from_json(j["pressure"]);
  CHECK(same_modes(p, sol.pressure));
}
