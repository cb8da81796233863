#pragma once

/// \file fields.hpp
/// Separable scalar fields: finite sums of modes
///   coeff * R(r) * Y_nm(theta, phi) * T(t)
/// with closed-form spatial/temporal derivatives. Every operator in this file
/// maps the mode family into itself, so residuals of the governing equations
/// can be formed symbolically and evaluated to round-off.

#include <optional>
#include <variant>
#include <vector>

#include "ustokes/geometry.hpp"
#include "ustokes/special.hpp"

namespace ustokes {

/// Fluid constants. rho * nu must equal mu.
struct FluidParams {
  double nu = 1.0;   ///< kinematic viscosity
  double mu = 1.0;   ///< dynamic viscosity
  double rho = 1.0;  ///< density

  /// Validating factory; throws InvalidArgument.
  static FluidParams create(double nu, double mu, double rho);
  static FluidParams from_viscosity(double mu, double rho) { return create(mu / rho, mu, rho); }
  void validate() const;
};

/// Spherical shell r1 <= r <= r2.
struct Shell {
  double r1 = 0.5;
  double r2 = 1.5;
};

// ---------------------------------------------------------------------------
// Radial profiles

struct SolidGrowing {  ///< r^n
  friend bool operator==(const SolidGrowing&, const SolidGrowing&) = default;
};
struct SolidDecaying {  ///< r^(-n-1)
  friend bool operator==(const SolidDecaying&, const SolidDecaying&) = default;
};
/// One of j_n, y_n, i_n, k_n evaluated at lambda * r.
struct BesselRadial {
  SphBessel kind = SphBessel::J;
  double lambda = 1.0;
  friend bool operator==(const BesselRadial&, const BesselRadial&) = default;
};
/// sum_k coeffs[k] r^(base + 2k)
struct PowerSeries {
  int base = 0;
  std::vector<double> coeffs;
  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;
};

using RadialKind = std::variant<SolidGrowing, SolidDecaying, BesselRadial, PowerSeries>;

namespace radial {
inline RadialKind solid_growing() { return SolidGrowing{}; }
inline RadialKind solid_decaying() { return SolidDecaying{}; }
inline RadialKind bessel_j(double lambda) { return BesselRadial{SphBessel::J, lambda}; }
inline RadialKind bessel_y(double lambda) { return BesselRadial{SphBessel::Y, lambda}; }
inline RadialKind modified_i(double lambda) { return BesselRadial{SphBessel::I, lambda}; }
inline RadialKind modified_k(double lambda) { return BesselRadial{SphBessel::K, lambda}; }
inline RadialKind power_series(int base, std::vector<double> coeffs) {
  return PowerSeries{base, std::move(coeffs)};
}
}  // namespace radial

/// R(r) and R'(r) for a profile attached to degree n.
ValueAndSlope eval_radial(const RadialKind& kind, int n, double r);

/// R''(r).
double eval_radial_second(const RadialKind& kind, int n, double r);

/// Throws InvalidArgument if lambda <= 0 or a power series is empty/has a zero tail.
void validate_radial(const RadialKind& kind);

/// True if the profile blows up at r = 0.
bool singular_at_origin(const RadialKind& kind, int n);

// ---------------------------------------------------------------------------
// Time factors

class TimeKind {
 public:
  enum class Tag { Constant, Exp, Poly };

  static TimeKind constant() { return TimeKind(Tag::Constant, 0.0, 0); }
  /// exp(sigma t); exp(0 t) collapses to constant().
  static TimeKind exp(double sigma);
  /// t^degree, degree >= 1.
  static TimeKind poly(int degree);

  Tag tag() const { return tag_; }
  double sigma() const { return sigma_; }
  int degree() const { return degree_; }
  double eval(double t) const;

  friend bool operator==(const TimeKind&, const TimeKind&) = default;

 private:
  TimeKind(Tag tag, double sigma, int degree) : tag_(tag), sigma_(sigma), degree_(degree) {}
  Tag tag_;
  double sigma_;
  int degree_;
};

// ---------------------------------------------------------------------------

struct ScalarMode {
  SphIndex index;
  RadialKind radial = SolidGrowing{};
  TimeKind time = TimeKind::constant();
  double coeff = 1.0;
};

/// Spatial Laplacian vanishes identically.
bool is_harmonic(const ScalarMode& mode);
/// Annihilated by the heat operator (lap - (1/nu) d/dt).
bool is_heat_type(const ScalarMode& mode, const FluidParams& params);

/// Value plus the first derivatives needed by the vector forms, at one point.
struct ScalarJet {
  double value = 0.0;
  double d_r = 0.0;
  double d_theta = 0.0;          ///< df/dtheta
  double d_phis = 0.0;           ///< (1/sin theta) df/dphi
  double d_theta_over_r = 0.0;   ///< df/dtheta / r (limit at r = 0)
  double d_phis_over_r = 0.0;
  double dr_d_theta = 0.0;       ///< d/dr of df/dtheta
  double dr_d_phis = 0.0;
  double minus_l_over_r = 0.0;   ///< -L f / r = sum n(n+1) f_mode / r
};

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(std::vector<ScalarMode> modes, std::optional<Shell> domain_hint = {});

  static ScalarField single(SphIndex idx, RadialKind radial, TimeKind time, double coeff);

  const std::vector<ScalarMode>& modes() const { return modes_; }
  const std::optional<Shell>& domain_hint() const { return hint_; }
  ScalarField with_hint(std::optional<Shell> hint) const;
  bool empty() const { return modes_.empty(); }
  int max_degree() const;

  double eval(const Spherical& p, double t) const;
  double eval(const Vec3& x, double t) const { return eval(to_spherical(x), t); }
  ScalarJet jet(const Spherical& p, double t) const;
  /// Cartesian gradient.
  Vec3 gradient(const Vec3& x, double t) const;

 private:
  std::vector<ScalarMode> modes_;
  std::optional<Shell> hint_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& f);

/// Merge like modes and drop coefficients that cancelled to round-off.
ScalarField simplify(const ScalarField& f);

ScalarField exact_laplacian(const ScalarField& f);
ScalarField exact_dt(const ScalarField& f);
/// (lap - (1/nu) d/dt) f
ScalarField heat_op(const ScalarField& f, const FluidParams& params);
/// Angular part of r^2 lap: each mode scaled by -n(n+1).
ScalarField transverse_L(const ScalarField& f);
/// integral_0^t f ds
ScalarField integrate_time(const ScalarField& f);
/// d/dr (r f). Bessel profiles leave the family; they are dropped if their
/// coefficient is at most drop_tol, otherwise InvalidArgument is thrown.
ScalarField radial_euler(const ScalarField& f, double drop_tol = 0.0);
/// Modes that are not harmonic; power-series terms r^n and r^(-n-1) removed.
ScalarField non_harmonic_part(const ScalarField& f);

/// Deterministic probe points inside a shell, used for symbolic-residual checks.
struct Probe {
  Spherical point;
  double t = 0.0;
};
std::vector<Probe> probe_points(const Shell& shell, int count, std::vector<double> times = {0.0, 0.25, 0.5, 1.0});

/// max |f| over probe points.
double max_abs(const ScalarField& f, const std::vector<Probe>& probes);

}  // namespace ustokes
