#pragma once

#include <string>

#include "ustokes/fields.hpp"
#include "ustokes/vector_field.hpp"

namespace ustokes {

/// Generating scalars of a general flow, plus the pressure constant p0.
struct FlowSpec {
  FluidParams params;
  ScalarField A, B, chi, P, T;
  double p0 = 0.0;
};

/// Velocity/pressure pair with the body force it was built for.
struct FlowSolution {
  FluidParams params;
  VectorField velocity;
  ScalarField pressure;
  double pressure_offset = 0.0;
  VectorField force;  ///< zero unless built from a FlowSpec with chi, P or T
  std::string provenance;

  double pressure_at(const Vec3& x, double t) const { return pressure_offset + pressure.eval(x, t); }
};

/// Options for the series-based particular solutions.
struct SolveOptions {
  /// Largest radius at which truncated series must be accurate; the field's
  /// domain hint takes precedence when present.
  double r_max = 4.0;
  /// Relative truncation threshold for infinite ascending series.
  double truncation = 1e-17;
};

/// Residual fields of the two constraint equations
///   mu lap (lap - (1/nu) d/dt) A + lap P   and   mu (lap - (1/nu) d/dt) B + T.
ScalarField a_constraint_residual(const FlowSpec& spec);
ScalarField b_constraint_residual(const FlowSpec& spec);

/// V = curl curl(r A) + curl(r B),
/// p = p0 + chi + d/dr { r [P + mu (lap - (1/nu) d/dt) A] }.
/// Throws SpecError if either constraint residual exceeds 1e-10 (relative to
/// the size of its terms) on probe points.
FlowSolution build_flow(const FlowSpec& spec);

/// F with mu (lap - (1/nu) d/dt) F = g, mode by mode in closed form.
/// Throws ResonanceError when a mode has no particular solution inside the
/// mode family (the recurrence divides by zero).
ScalarField solve_heat_poisson(const ScalarField& g, const FluidParams& params, const SolveOptions& opts = {});

/// Particular A for a given P (harmonic part of P contributes nothing).
ScalarField solve_A_for_P(const ScalarField& P, const FluidParams& params, const SolveOptions& opts = {});
/// Particular B for a given T.
ScalarField solve_B_for_T(const ScalarField& T, const FluidParams& params, const SolveOptions& opts = {});

/// V = Phi + (1/mu) grad psi1 - nu grad integral_0^t div Phi ds, p = -(1/nu) d psi1/dt.
/// Phi must be heat-type with div Phi = 0 at t = 0, psi1 harmonic; otherwise
/// PreconditionError.
FlowSolution naghdi_hsu(const VectorField& Phi, const ScalarField& psi1, const FluidParams& params,
                        const Shell& check_shell = {});

/// Flow whose pressure is the given harmonic field.
/// Throws MonopoleError for a decaying n = 0 mode, PreconditionError for a
/// non-harmonic mode.
FlowSolution harmonic_pressure_flow(const ScalarField& p, const FluidParams& params);

}  // namespace ustokes
