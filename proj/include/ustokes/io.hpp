#pragma once

#include <string>

#include <json.hpp>

#include "ustokes/constructors.hpp"
#include "ustokes/decompose.hpp"
#include "ustokes/verify.hpp"

namespace ustokes {

using json = nlohmann::json;

/// Mode schema:
///   {"n":1,"m":0,"radial":{"kind":"solid_growing"},"time":{"kind":"exp","sigma":0.0},"coeff":1.0}
/// radial kinds: solid_growing, solid_decaying, bessel_j, bessel_y, modified_i,
/// modified_k (with "lambda"), power_series (with "base", "coeffs").
/// time kinds: constant, exp (with "sigma"), poly (with "degree").
/// Harmonics are real, orthonormal, without the Condon-Shortley phase.
ScalarMode mode_from_json(const json& j);
json to_json(const ScalarMode& m);

/// A field is an array of modes, or an object with a "modes" array.
ScalarField field_from_json(const json& j);
json to_json(const ScalarField& f);

/// {"nu":..,"mu":..,"rho":..,"p0":..,"A":[..],"B":[..],"chi":[..],"P":[..],"T":[..]}
/// Any two of nu, mu, rho determine the third. Throws ParseError or InvalidArgument.
FlowSpec flowspec_from_json(const json& j);
json to_json(const FlowSpec& s);

/// Reads and parses a JSON file; ParseError on I/O or syntax errors.
json read_json_file(const std::string& path);

/// {"residuals":{"momentum":{"max":..,"rms":..,...},"momentum_fd":{..}},"pass":true}
json to_json(const ResidualReport& r);
json to_json(const Decomposition& d, double coeff_floor = 0.0);
json to_json(const FlowSolution& s);

}  // namespace ustokes
