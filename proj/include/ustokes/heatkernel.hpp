#pragma once

#include <optional>
#include <utility>

#include "ustokes/fields.hpp"

namespace ustokes {

/// Integration region (ball or shell centred at the origin) and node budget.
struct QuadratureDomain {
  enum class Shape { Ball, Shell };
  Shape shape = Shape::Ball;
  double r_inner = 0.0;  ///< shell only
  double r_outer = 1.0;
  int n_r = 48;
  int n_theta = 24;
  int n_phi = 48;
  int n_time = 32;

  static QuadratureDomain ball(double R) { return {Shape::Ball, 0.0, R}; }
  static QuadratureDomain shell(double r1, double r2) { return {Shape::Shell, r1, r2}; }
  bool contains(const Vec3& x) const;
  void validate() const;
};

/// Which kernel normalization to integrate against.
///   UnitMassDuhamel: psi = -nu int_0^t int_D G(x - xi, nu (t - tau)) p dxi dtau,
///                    G the unit-mass Gaussian, so (lap - (1/nu) d/dt) psi = p
///                    away from the boundary of D.
///   Literal:         int_0^t int_D exp(-r^2 / (4 nu (t - tau))) / (nu^(1/2) [4 (t - tau)]^(3/2)) p,
///                    which equals -pi^(3/2) times the result above.
enum class KernelForm { UnitMassDuhamel, Literal };

struct PsiOptions {
  KernelForm kernel = KernelForm::UnitMassDuhamel;
  /// Cutoff of the Gaussian radius variable q = |x - xi| / (2 sqrt(nu (t - tau))).
  double q_max = 7.0;
  /// If set, the integral is repeated with every node count halved and
  /// QuadratureBudgetError is thrown when the two differ by more than this.
  std::optional<double> tolerance;
};

/// Heat potential of p at (x, t). p vanishes outside the domain. Thread-safe.
double psi_integral(const ScalarField& p, const Vec3& x, double t, const QuadratureDomain& dom,
                    const FluidParams& params, const PsiOptions& opts = {});

struct PsiSplit {
  ScalarField psi1;  ///< harmonic
  ScalarField psi2;  ///< heat-type
};

/// psi' = (lap - (1/nu) d/dt) psi, psi1 = -nu int_0^t psi' ds, psi2 = psi - psi1.
/// Throws SpecError unless lap (lap - (1/nu) d/dt) psi vanishes.
PsiSplit split_psi(const ScalarField& psi, const FluidParams& params, const Shell& check_shell = {});

/// p = -(1/nu) d psi1/dt.
ScalarField pressure_from_psi1(const ScalarField& psi1, const FluidParams& params);

}  // namespace ustokes
