#pragma once

#include <functional>

#include "ustokes/fields.hpp"
#include "ustokes/vector_field.hpp"

namespace ustokes {

using ScalarEvaluator = std::function<double(const Vec3&, double)>;

/// Central finite-difference stencil. With `relative` the step is
/// h * max(1, |x|) in space and h * max(1, |t|) in time; with `proportional`
/// it is h * |x|, for nested stencils on fields that steepen towards the origin.
struct StencilSpec {
  double h = 1e-3;
  int order = 4;
  bool relative = true;
  bool proportional = false;

  void validate() const;
  double step_at(double scale) const;

  static StencilSpec space() { return {1e-3, 4, true}; }
  static StencilSpec time() { return {1e-4, 4, true}; }
};

// Finite-difference oracles. All work in Cartesian components.

Vec3 fd_gradient(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s = StencilSpec::space());
double fd_laplacian(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s = StencilSpec::space());
double fd_scalar_dt(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s = StencilSpec::time());

double fd_divergence(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s = StencilSpec::space());
Vec3 fd_curl(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s = StencilSpec::space());
Vec3 fd_vector_laplacian(const VectorEvaluator& v, const Vec3& x, double t,
                         const StencilSpec& s = StencilSpec::space());
Vec3 fd_dt(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s = StencilSpec::time());

/// (lap - (1/nu) d/dt) v by finite differences.
Vec3 fd_heat_op(const VectorEvaluator& v, const Vec3& x, double t, const FluidParams& params,
                const StencilSpec& space = StencilSpec::space(), const StencilSpec& time = StencilSpec::time());

/// Body force grad(chi) + curl curl(r P) + curl(r T).
VectorField body_force(const ScalarField& chi, const ScalarField& P, const ScalarField& T);

/// The same force written as grad(chi) + grad(P + r dP/dr) - r lap P + curl(r T).
/// The middle gradient is evaluated pointwise, so the result is not analytic.
VectorField body_force_expanded(const ScalarField& chi, const ScalarField& P, const ScalarField& T);

/// grad(P + r dP/dr) at one point.
Vec3 euler_gradient(const ScalarField& P, const Vec3& x, double t);

}  // namespace ustokes
