#include "ustokes/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ustokes/errors.hpp"

namespace ustokes {

void StencilSpec::validate() const {
  if (!(h > 0.0)) throw InvalidArgument("stencil step must be positive");
  if (order != 2 && order != 4 && order != 6 && order != 8) {
    throw InvalidArgument("stencil order must be 2, 4, 6 or 8");
  }
}

double StencilSpec::step_at(double scale) const {
  if (proportional && scale > 0.0) return h * std::abs(scale);
  return relative ? h * std::max(1.0, std::abs(scale)) : h;
}

namespace {

// Central weights for offsets 1..order/2; first derivatives are odd, second even.
struct Weights {
  std::array<double, 4> first;
  std::array<double, 4> second;
  double centre;
};

const Weights& weights(int order) {
  static const Weights w2{{1.0 / 2.0}, {1.0}, -2.0};
  static const Weights w4{{2.0 / 3.0, -1.0 / 12.0}, {4.0 / 3.0, -1.0 / 12.0}, -5.0 / 2.0};
  static const Weights w6{{3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0}, {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0}, -49.0 / 18.0};
  static const Weights w8{{4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0},
                          {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0},
                          -205.0 / 72.0};
  switch (order) {
    case 2:
      return w2;
    case 4:
      return w4;
    case 6:
      return w6;
    default:
      return w8;
  }
}

// First derivative along an offset parameter s, f(s) sampled at s = +-h, ..., +-(order/2) h.
template <class F>
auto diff1(F&& f, double h, int order) {
  const Weights& w = weights(order);
  auto acc = w.first[0] * (f(h) - f(-h));
  for (int k = 2; k <= order / 2; ++k) acc = acc + w.first[k - 1] * (f(k * h) - f(-k * h));
  return acc * (1.0 / h);
}

// Second derivative, center value supplied separately.
template <class F, class T>
T diff2(F&& f, const T& center, double h, int order) {
  const Weights& w = weights(order);
  T acc = w.centre * center + w.second[0] * (f(h) + f(-h));
  for (int k = 2; k <= order / 2; ++k) acc = acc + w.second[k - 1] * (f(k * h) + f(-k * h));
  return acc * (1.0 / (h * h));
}

Vec3 axis(int k) {
  Vec3 e;
  e[k] = 1.0;
  return e;
}

}  // namespace

Vec3 fd_gradient(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  const double h = s.step_at(norm(x));
  Vec3 g;
  for (int k = 0; k < 3; ++k) {
    g[k] = diff1([&](double d) { return f(x + d * axis(k), t); }, h, s.order);
  }
  return g;
}

double fd_laplacian(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  const double h = s.step_at(norm(x));
  const double c = f(x, t);
  double lap = 0.0;
  for (int k = 0; k < 3; ++k) {
    lap += diff2([&](double d) { return f(x + d * axis(k), t); }, c, h, s.order);
  }
  return lap;
}

double fd_scalar_dt(const ScalarEvaluator& f, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  return diff1([&](double d) { return f(x, t + d); }, s.step_at(t), s.order);
}

double fd_divergence(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  const double h = s.step_at(norm(x));
  double div = 0.0;
  for (int k = 0; k < 3; ++k) {
    div += diff1([&](double d) { return v(x + d * axis(k), t)[k]; }, h, s.order);
  }
  return div;
}

Vec3 fd_curl(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  const double h = s.step_at(norm(x));
  // jac[k] = dV/dx_k
  Vec3 jac[3];
  for (int k = 0; k < 3; ++k) {
    jac[k] = diff1([&](double d) { return v(x + d * axis(k), t); }, h, s.order);
  }
  return {jac[1].z - jac[2].y, jac[2].x - jac[0].z, jac[0].y - jac[1].x};
}

Vec3 fd_vector_laplacian(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  const double h = s.step_at(norm(x));
  const Vec3 c = v(x, t);
  Vec3 lap;
  for (int k = 0; k < 3; ++k) {
    lap += diff2([&](double d) { return v(x + d * axis(k), t); }, c, h, s.order);
  }
  return lap;
}

Vec3 fd_dt(const VectorEvaluator& v, const Vec3& x, double t, const StencilSpec& s) {
  s.validate();
  return diff1([&](double d) { return v(x, t + d); }, s.step_at(t), s.order);
}

Vec3 fd_heat_op(const VectorEvaluator& v, const Vec3& x, double t, const FluidParams& params,
                const StencilSpec& space, const StencilSpec& time) {
  return fd_vector_laplacian(v, x, t, space) - (1.0 / params.nu) * fd_dt(v, x, t, time);
}

// ---------------------------------------------------------------------------

VectorField body_force(const ScalarField& chi, const ScalarField& P, const ScalarField& T) {
  return VectorField::sum({VectorField::gradient(chi), VectorField::curl_curl_r(P), VectorField::curl_r(T)});
}

Vec3 euler_gradient(const ScalarField& P, const Vec3& x, double t) {
  if (P.empty()) return {};
  const Spherical p = to_spherical(x);
  if (p.r <= 0.0) throw DomainError("euler_gradient needs r > 0");
  const YlmTable ylm(P.max_degree(), p.theta, p.phi);
  // Q = R + r R', dQ/dr = 2 R' + r R''
  double q_r = 0.0, q_t = 0.0, q_p = 0.0;
  for (const auto& m : P.modes()) {
    const int n = m.index.n;
    const auto rad = eval_radial(m.radial, n, p.r);
    const double r2 = eval_radial_second(m.radial, n, p.r);
    const double w = m.coeff * m.time.eval(t);
    const double q = rad.value + p.r * rad.slope;
    q_r += w * (2.0 * rad.slope + p.r * r2) * ylm.value(n, m.index.m);
    q_t += w * q / p.r * ylm.d_theta(n, m.index.m);
    q_p += w * q / p.r * ylm.d_phi_over_sin(n, m.index.m);
  }
  return SphericalFrame::at(p.theta, p.phi).to_cartesian(q_r, q_t, q_p);
}

VectorField body_force_expanded(const ScalarField& chi, const ScalarField& P, const ScalarField& T) {
  ScalarField p_copy = P;
  auto euler = VectorField::sampled([p_copy](const Vec3& x, double t) { return euler_gradient(p_copy, x, t); });
  return VectorField::sum({VectorField::gradient(chi), euler,
                           VectorField::radial_times(-1.0 * exact_laplacian(P)), VectorField::curl_r(T)});
}

}  // namespace ustokes
