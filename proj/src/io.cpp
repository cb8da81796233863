#include "ustokes/io.hpp"

#include <cmath>
#include <fstream>

#include "ustokes/errors.hpp"

namespace ustokes {

namespace {

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("missing integer field '") + key + "'");
  }
  return j.at(key).get<int>();
}

RadialKind radial_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw ParseError("radial needs a 'kind'");
  const std::string k = j.at("kind").get<std::string>();
  if (k == "solid_growing") return radial::solid_growing();
  if (k == "solid_decaying") return radial::solid_decaying();
  if (k == "bessel_j") return radial::bessel_j(get_number(j, "lambda"));
  if (k == "bessel_y") return radial::bessel_y(get_number(j, "lambda"));
  if (k == "modified_i") return radial::modified_i(get_number(j, "lambda"));
  if (k == "modified_k") return radial::modified_k(get_number(j, "lambda"));
  if (k == "power_series") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw ParseError("power_series needs 'coeffs'");
    std::vector<double> c;
    for (const auto& v : j.at("coeffs")) {
      if (!v.is_number()) throw ParseError("power_series coefficients must be numbers");
      c.push_back(v.get<double>());
    }
    return radial::power_series(get_int(j, "base"), std::move(c));
  }
  throw ParseError("unknown radial kind '" + k + "'");
}

json radial_to_json(const RadialKind& r) {
  if (std::holds_alternative<SolidGrowing>(r)) return {{"kind", "solid_growing"}};
  if (std::holds_alternative<SolidDecaying>(r)) return {{"kind", "solid_decaying"}};
  if (const auto* b = std::get_if<BesselRadial>(&r)) {
    static const char* names[] = {"bessel_j", "bessel_y", "modified_i", "modified_k"};
    return {{"kind", names[static_cast<int>(b->kind)]}, {"lambda", b->lambda}};
  }
  const auto& s = std::get<PowerSeries>(r);
  return {{"kind", "power_series"}, {"base", s.base}, {"coeffs", s.coeffs}};
}

TimeKind time_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) throw ParseError("time needs a 'kind'");
  const std::string k = j.at("kind").get<std::string>();
  if (k == "constant") return TimeKind::constant();
  if (k == "exp") return TimeKind::exp(get_number(j, "sigma"));
  if (k == "poly") return TimeKind::poly(get_int(j, "degree"));
  throw ParseError("unknown time kind '" + k + "'");
}

json time_to_json(const TimeKind& t) {
  switch (t.tag()) {
    case TimeKind::Tag::Constant:
      return {{"kind", "constant"}};
    case TimeKind::Tag::Exp:
      return {{"kind", "exp"}, {"sigma", t.sigma()}};
    case TimeKind::Tag::Poly:
      return {{"kind", "poly"}, {"degree", t.degree()}};
  }
  return {};
}

json entry_to_json(const ResidualEntry& e) {
  return {{"max", e.max_abs},
          {"rms", e.rms},
          {"path", e.path},
          {"tol", e.tol},
          {"pass", e.pass},
          {"max_per_time", e.max_per_time},
          {"worst_point", {{"r", e.worst_point.r}, {"theta", e.worst_point.theta}, {"phi", e.worst_point.phi}}},
          {"worst_time", e.worst_time}};
}

}  // namespace

ScalarMode mode_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("mode must be an object");
  ScalarMode m;
  m.index = {get_int(j, "n"), get_int(j, "m")};
  m.index.validate();
  m.radial = j.contains("radial") ? radial_from_json(j.at("radial")) : radial::solid_growing();
  validate_radial(m.radial);
  m.time = j.contains("time") ? time_from_json(j.at("time")) : TimeKind::constant();
  m.coeff = j.contains("coeff") ? get_number(j, "coeff") : 1.0;
  return m;
}

json to_json(const ScalarMode& m) {
  return {{"n", m.index.n}, {"m", m.index.m}, {"radial", radial_to_json(m.radial)}, {"time", time_to_json(m.time)},
          {"coeff", m.coeff}};
}

ScalarField field_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("modes")) throw ParseError("field object needs 'modes'");
    arr = &j.at("modes");
  }
  if (j.is_null()) return {};
  if (!arr->is_array()) throw ParseError("field must be an array of modes");
  std::vector<ScalarMode> modes;
  for (const auto& m : *arr) modes.push_back(mode_from_json(m));
  return ScalarField(std::move(modes));
}

json to_json(const ScalarField& f) {
  json arr = json::array();
  for (const auto& m : f.modes()) arr.push_back(to_json(m));
  return arr;
}

FlowSpec flowspec_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("flow spec must be a JSON object");
  const bool has_nu = j.contains("nu"), has_mu = j.contains("mu"), has_rho = j.contains("rho");
  if (has_nu + has_mu + has_rho < 2) throw ParseError("flow spec needs at least two of nu, mu, rho");
  const double nu = has_nu ? get_number(j, "nu") : get_number(j, "mu") / get_number(j, "rho");
  const double mu = has_mu ? get_number(j, "mu") : get_number(j, "rho") * nu;
  const double rho = has_rho ? get_number(j, "rho") : mu / nu;
  FlowSpec s;
  s.params = FluidParams::create(nu, mu, rho);
  s.p0 = j.contains("p0") ? get_number(j, "p0") : 0.0;
  const auto field = [&](const char* key) { return j.contains(key) ? field_from_json(j.at(key)) : ScalarField(); };
  s.A = field("A");
  s.B = field("B");
  s.chi = field("chi");
  s.P = field("P");
  s.T = field("T");
  return s;
}

json to_json(const FlowSpec& s) {
  return {{"nu", s.params.nu}, {"mu", s.params.mu}, {"rho", s.params.rho}, {"p0", s.p0},
          {"A", to_json(s.A)},   {"B", to_json(s.B)},   {"chi", to_json(s.chi)},
          {"P", to_json(s.P)},   {"T", to_json(s.T)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

json to_json(const ResidualReport& r) {
  json res = json::object();
  for (const auto& e : r.entries) res[e.path == "exact" ? e.name : e.name + "_fd"] = entry_to_json(e);
  return {{"residuals", res}, {"pass", r.pass()}};
}

json to_json(const Decomposition& d, double coeff_floor) {
  const auto slices = [&](const ShtCoefficients& c) {
    json out = json::array();
    for (std::size_t ti = 0; ti < c.times.size(); ++ti) {
      for (std::size_t ri = 0; ri < c.radii.size(); ++ri) {
        json coeffs = json::array();
        for (int n = 1; n <= c.lmax; ++n) {
          for (int m = -n; m <= n; ++m) {
            const double v = c.at(static_cast<int>(ti), static_cast<int>(ri), {n, m});
            if (std::abs(v) > coeff_floor) coeffs.push_back({{"n", n}, {"m", m}, {"value", v}});
          }
        }
        out.push_back({{"t", c.times[ti]}, {"r", c.radii[ri]}, {"coeffs", coeffs}});
      }
    }
    return out;
  };
  return {{"lmax", d.A.lmax},
          {"field_scale", d.field_scale},
          {"divergence_max", d.divergence_max},
          {"monopole", d.monopole_flux},
          {"A", slices(d.A)},
          {"B", slices(d.B)}};
}

json to_json(const FlowSolution& s) {
  json v = json::array();
  const auto collect = [&](const VectorField& f, auto&& self) -> void {
    switch (f.kind()) {
      case VectorField::Kind::Sum:
        for (const auto& t : f.terms()) self(t, self);
        return;
      case VectorField::Kind::CurlCurlR:
        v.push_back({{"form", "curl_curl_r"}, {"scalar", to_json(f.scalar())}});
        return;
      case VectorField::Kind::CurlR:
        v.push_back({{"form", "curl_r"}, {"scalar", to_json(f.scalar())}});
        return;
      case VectorField::Kind::Gradient:
        v.push_back({{"form", "gradient"}, {"scalar", to_json(f.scalar())}});
        return;
      case VectorField::Kind::RadialTimes:
        v.push_back({{"form", "radial_times"}, {"scalar", to_json(f.scalar())}});
        return;
      case VectorField::Kind::Scaled:
        v.push_back({{"form", "scaled"}, {"factor", f.factor()}});
        self(f.terms().front(), self);
        return;
      case VectorField::Kind::Sampled:
        v.push_back({{"form", "sampled"}});
        return;
    }
  };
  collect(s.velocity, collect);
  return {{"provenance", s.provenance},
          {"params", {{"nu", s.params.nu}, {"mu", s.params.mu}, {"rho", s.params.rho}}},
          {"velocity", v},
          {"pressure", {{"offset", s.pressure_offset}, {"modes", to_json(s.pressure)}}}};
}

}  // namespace ustokes
