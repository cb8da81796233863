#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ustokes/fields.hpp"

namespace ustokes {

/// Black-box velocity: Cartesian point and time to Cartesian vector.
using VectorEvaluator = std::function<Vec3(const Vec3&, double)>;

/// Symbolic vector field built from scalar fields:
///   Gradient(S)    grad S
///   CurlR(S)       curl(r S)
///   CurlCurlR(S)   curl curl(r S)
///   RadialTimes(S) r S   (position vector times S)
/// plus sums, scalings and sampled black boxes. Immutable; copies share nodes.
class VectorField {
 public:
  enum class Kind { Gradient, CurlR, CurlCurlR, RadialTimes, Sum, Scaled, Sampled };

  /// The zero field (an empty sum).
  VectorField();

  static VectorField gradient(ScalarField s);
  static VectorField curl_r(ScalarField s);
  static VectorField curl_curl_r(ScalarField s);
  static VectorField radial_times(ScalarField s);
  static VectorField sum(std::vector<VectorField> terms);
  static VectorField scaled(double factor, VectorField v);
  static VectorField sampled(VectorEvaluator f);

  Kind kind() const;
  /// Scalar operand of the four leaf kinds.
  const ScalarField& scalar() const;
  const std::vector<VectorField>& terms() const;
  double factor() const;

  /// False if any node is Sampled.
  bool is_analytic() const;
  bool is_zero() const;

  Vec3 eval(const Vec3& x, double t) const;
  Vec3 eval(const Spherical& p, double t) const;
  /// Components (v_r, v_theta, v_phi) in the local frame at p.
  Vec3 eval_spherical(const Spherical& p, double t) const;

  VectorEvaluator evaluator() const;

 private:
  struct Node;
  explicit VectorField(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& v);

// Exact operators; each throws NotAnalytic on Sampled input.

VectorField exact_laplacian(const VectorField& v);
VectorField exact_dt(const VectorField& v);
VectorField exact_curl(const VectorField& v);
/// (lap - (1/nu) d/dt) v
VectorField heat_op(const VectorField& v, const FluidParams& params);
double exact_divergence(const VectorField& v, const Vec3& x, double t);
/// Divergence as a scalar field, when it stays in the mode family.
std::optional<ScalarField> divergence_field(const VectorField& v);

}  // namespace ustokes
