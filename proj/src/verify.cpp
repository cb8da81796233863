#include "ustokes/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <tuple>

#include "ustokes/errors.hpp"

namespace ustokes {

bool ResidualReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) { return e.pass; });
}

const ResidualEntry* ResidualReport::find(const std::string& name, const std::string& path) const {
  for (const auto& e : entries) {
    if (e.name == name && e.path == path) return &e;
  }
  return nullptr;
}

void ResidualReport::append(const ResidualReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
}

namespace {

using PointFn = std::function<double(const Spherical&, const Vec3&, double)>;

ResidualEntry sample(const std::string& name, const std::string& path, double tol, const ShellGrid& grid,
                     const PointFn& fn) {
  ResidualEntry e;
  e.name = name;
  e.path = path;
  e.tol = tol;
  const auto pts = grid.points();
  double sum_sq = 0.0;
  std::size_t count = 0;
  bool first = true;
  for (double t : grid.times) {
    double tmax = 0.0;
    for (const auto& p : pts) {
      const double v = std::abs(fn(p, to_cartesian(p), t));
      tmax = std::max(tmax, v);
      sum_sq += v * v;
      ++count;
      const auto key = std::make_tuple(p.r, p.theta, p.phi, t);
      const auto best = std::make_tuple(e.worst_point.r, e.worst_point.theta, e.worst_point.phi, e.worst_time);
      if (first || v > e.max_abs || (v == e.max_abs && key < best) || std::isnan(v)) {
        e.max_abs = v;
        e.worst_point = p;
        e.worst_time = t;
        first = false;
      }
    }
    e.max_per_time.push_back(tmax);
  }
  e.rms = count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
  e.pass = e.max_abs < tol;  // false for NaN
  return e;
}

Vec3 eval_force(const VectorField& f, const Spherical& p, const Vec3& x, double t) {
  return f.kind() == VectorField::Kind::Sampled ? f.eval(x, t) : f.eval(p, t);
}

Vec3 pressure_gradient(const Pressure& p, const Vec3& x, double t, const StencilSpec& s) {
  if (p.field) return p.field->gradient(x, t);
  return fd_gradient(p.sampled, x, t, s);
}

}  // namespace

ResidualReport momentum_residual(const VectorField& V, const Pressure& p, const VectorField& f,
                                 const ShellGrid& grid, const FluidParams& params, const VerifyOptions& opts) {
  ResidualReport rep;
  if (V.is_analytic() && p.analytic()) {
    // rho dV/dt - mu lap V = -mu (lap - (1/nu) d/dt) V
    const VectorField lhs = VectorField::gradient(*p.field) - params.mu * heat_op(V, params);
    rep.entries.push_back(sample("momentum", "exact", opts.exact_tol, grid,
                                 [&](const Spherical& sp, const Vec3& x, double t) {
                                   return norm(lhs.eval(sp, t) - eval_force(f, sp, x, t));
                                 }));
  }
  if (opts.run_fd || rep.entries.empty()) {
    const VectorEvaluator v = V.evaluator();
    const StencilSpec grad_step = p.analytic() ? opts.space : StencilSpec{1e-2, 4, true};
    rep.entries.push_back(sample("momentum", "fd", opts.fd_tol, grid, [&](const Spherical& sp, const Vec3& x, double t) {
      const Vec3 r = params.rho * fd_dt(v, x, t, opts.time) + pressure_gradient(p, x, t, grad_step) -
                     params.mu * fd_vector_laplacian(v, x, t, opts.space) - eval_force(f, sp, x, t);
      return norm(r);
    }));
  }
  return rep;
}

ResidualReport continuity_residual(const VectorField& V, const ShellGrid& grid, const VerifyOptions& opts) {
  ResidualReport rep;
  if (V.is_analytic()) {
    rep.entries.push_back(sample("continuity", "exact", opts.exact_tol, grid,
                                 [&](const Spherical&, const Vec3& x, double t) { return exact_divergence(V, x, t); }));
  }
  if (opts.run_fd || rep.entries.empty()) {
    const VectorEvaluator v = V.evaluator();
    rep.entries.push_back(sample("continuity", "fd", opts.fd_tol, grid, [&](const Spherical&, const Vec3& x, double t) {
      return fd_divergence(v, x, t, opts.space);
    }));
  }
  return rep;
}

ResidualReport biharmonic_heat_residual(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                        const VerifyOptions& opts) {
  ResidualReport rep;
  if (V.is_analytic()) {
    const VectorField r = exact_laplacian(heat_op(V, params));
    rep.entries.push_back(sample("biharmonic", "exact", opts.exact_tol, grid,
                                 [&](const Spherical& sp, const Vec3&, double t) { return norm(r.eval(sp, t)); }));
  }
  if (opts.run_fd || rep.entries.empty()) {
    const VectorEvaluator v = V.evaluator();
    const VectorEvaluator inner = [&](const Vec3& x, double t) {
      return fd_heat_op(v, x, t, params, opts.biharmonic_inner, opts.time);
    };
    double tol = opts.fd_tol;
    if (opts.biharmonic_fd_scaled) {
      double scale = 1.0;
      for (double t : grid.times) {
        for (const auto& p : grid.points()) scale = std::max(scale, norm(V.eval(p, t)));
      }
      tol *= scale;
    }
    rep.entries.push_back(sample("biharmonic", "fd", tol, grid, [&](const Spherical&, const Vec3& x, double t) {
      return norm(fd_vector_laplacian(inner, x, t, opts.biharmonic_outer));
    }));
  }
  return rep;
}

ResidualReport condition_residual(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                  const VerifyOptions& opts) {
  ResidualReport rep;
  if (V.is_analytic()) {
    const VectorField r = heat_op(exact_curl(V), params);
    rep.entries.push_back(sample("condition", "exact", opts.exact_tol, grid,
                                 [&](const Spherical& sp, const Vec3&, double t) { return norm(r.eval(sp, t)); }));
  }
  if (opts.run_fd || rep.entries.empty()) {
    const VectorEvaluator v = V.evaluator();
    const VectorEvaluator curl = [&](const Vec3& x, double t) { return fd_curl(v, x, t, opts.condition_inner); };
    rep.entries.push_back(sample("condition", "fd", opts.fd_tol, grid, [&](const Spherical&, const Vec3& x, double t) {
      return norm(fd_heat_op(curl, x, t, params, opts.condition_outer, opts.time));
    }));
  }
  return rep;
}

ResidualReport verify_flow(const VectorField& V, const Pressure& p, const VectorField& f, const ShellGrid& grid,
                           const FluidParams& params, const VerifyOptions& opts) {
  ResidualReport rep = momentum_residual(V, p, f, grid, params, opts);
  rep.append(continuity_residual(V, grid, opts));
  if (f.is_zero()) {
    rep.append(biharmonic_heat_residual(V, grid, params, opts));
    rep.append(condition_residual(V, grid, params, opts));
  }
  return rep;
}

ResidualReport verify_flow(const FlowSolution& s, const ShellGrid& grid, const VerifyOptions& opts) {
  return verify_flow(s.velocity, Pressure::of(s), s.force, grid, s.params, opts);
}

// ---------------------------------------------------------------------------

namespace {

// Curve given as spherical coordinates of s in [0, 1].
using Curve = std::function<Spherical(double)>;

// int_0^1 G(X(s)) . X'(s) ds with composite Gauss-Legendre; X' by a 4th-order difference in s.
double curve_integral(const VectorEvaluator& G, double t, const Curve& c, int panels, int nodes) {
  static thread_local GaussLegendre gl;
  if (static_cast<int>(gl.nodes.size()) != nodes) gl = gauss_legendre(nodes);
  const double hs = 1e-4;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = static_cast<double>(k) / panels, half = 0.5 / panels;
    for (int j = 0; j < nodes; ++j) {
      const double s = a + half * (gl.nodes[static_cast<std::size_t>(j)] + 1.0);
      const auto X = [&](double u) { return to_cartesian(c(u)); };
      const Vec3 d = (X(s - 2 * hs) - 8.0 * X(s - hs) + 8.0 * X(s + hs) - X(s + 2 * hs)) * (1.0 / (12.0 * hs));
      total += half * gl.weights[static_cast<std::size_t>(j)] * dot(G(X(s), t), d);
    }
  }
  return total;
}

double lerp(double a, double b, double s) { return a + (b - a) * s; }

}  // namespace

RecoveredPressure::RecoveredPressure(VectorEvaluator gradient, Vec3 base, Shell shell, RecoverOptions opts)
    : gradient_(std::move(gradient)), base_(base), shell_(shell), opts_(opts) {}

double RecoveredPressure::at(const Vec3& x, double t) const { return along(0, x, t); }

double RecoveredPressure::along(int path, const Vec3& x, double t) const {
  const Spherical b = to_spherical(base_);
  const Spherical e = to_spherical(x);
  const double dphi = std::remainder(e.phi - b.phi, 2.0 * kPi);
  const int pn = opts_.panels, nn = opts_.nodes;
  double total = 0.0;
  if (path == 0) {
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{lerp(b.r, e.r, s), b.theta, b.phi}; }, pn, nn);
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{e.r, lerp(b.theta, e.theta, s), b.phi}; }, pn, nn);
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{e.r, e.theta, b.phi + dphi * s}; }, pn, nn);
  } else if (path == 1) {
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{b.r, b.theta, b.phi + dphi * s}; }, pn, nn);
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{b.r, lerp(b.theta, e.theta, s), b.phi + dphi}; }, pn, nn);
    total += curve_integral(gradient_, t, [&](double s) { return Spherical{lerp(b.r, e.r, s), e.theta, b.phi + dphi}; }, pn, nn);
  } else {
    std::mt19937 rng(opts_.seed);
    std::uniform_real_distribution<double> uni(-0.9, 0.9);
    const double ar = uni(rng), at = uni(rng), ap = uni(rng);
    const double r_margin = std::max(0.0, std::min({b.r - shell_.r1, e.r - shell_.r1, shell_.r2 - b.r, shell_.r2 - e.r}));
    const double t_margin = std::max(0.0, std::min({b.theta, e.theta, kPi - b.theta, kPi - e.theta}));
    total += curve_integral(gradient_, t, [&](double s) {
      const double w = std::sin(kPi * s);
      return Spherical{lerp(b.r, e.r, s) + ar * r_margin * w, lerp(b.theta, e.theta, s) + at * t_margin * w,
                       b.phi + dphi * s + ap * w};
    }, 2 * pn, nn);
  }
  return total;
}

std::vector<double> loop_integrals(const VectorEvaluator& G, const Shell& shell, double t, int nodes) {
  const double rho = std::clamp(1.0, shell.r1, shell.r2);
  std::vector<double> out(3, 0.0);
  for (int k = 0; k < nodes; ++k) {
    const double a = 2.0 * kPi * k / nodes, c = std::cos(a), s = std::sin(a);
    const double w = 2.0 * kPi * rho / nodes;
    out[0] += w * dot(G({rho * c, rho * s, 0.0}, t), {-s, c, 0.0});
    out[1] += w * dot(G({rho * s, 0.0, rho * c}, t), {c, 0.0, -s});
    out[2] += w * dot(G({0.0, rho * c, rho * s}, t), {0.0, -s, c});
  }
  return out;
}

VectorEvaluator pressure_gradient_candidate(const VectorField& V, const FluidParams& params,
                                            const VerifyOptions& opts) {
  if (V.is_analytic()) {
    const VectorField g = params.mu * heat_op(V, params);
    return [g](const Vec3& x, double t) { return g.eval(x, t); };
  }
  const VectorEvaluator v = V.evaluator();
  return [v, params, opts](const Vec3& x, double t) {
    return params.mu * fd_heat_op(v, x, t, params, opts.space, opts.time);
  };
}

RecoveredPressure recover_pressure(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                   std::optional<Vec3> base_point, const RecoverOptions& opts) {
  params.validate();
  const VectorEvaluator G = pressure_gradient_candidate(V, params);
  const Shell shell = grid.shell();
  const Vec3 base = base_point.value_or(to_cartesian({0.5 * (shell.r1 + shell.r2), 0.5 * kPi, 0.0}));

  const auto pts = grid.points();
  double scale = 0.0;
  for (double t : grid.times) {
    for (const auto& p : pts) scale = std::max(scale, norm(V.eval(p, t)));
  }
  const double tol = opts.loop_rel_tol * params.mu * scale;

  double worst = 0.0, worst_t = 0.0;
  for (double t : grid.times) {
    for (double l : loop_integrals(G, shell, t)) {
      if (std::abs(l) > std::abs(worst)) {
        worst = l;
        worst_t = t;
      }
    }
  }
  if (std::abs(worst) > tol) {
    std::ostringstream os;
    os << "pressure gradient candidate is not a gradient: loop integral " << worst << " at t = " << worst_t;
    throw PathDependenceError(os.str(), worst);
  }

  RecoveredPressure out(G, base, shell, opts);
  out.times = grid.times;
  out.points = pts;
  out.values.reserve(pts.size() * grid.times.size());
  for (double t : grid.times) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const Vec3 x = to_cartesian(pts[j]);
      const double v = out.along(0, x, t);
      out.values.push_back(v);
      if (opts.check_stride > 0 && j % static_cast<std::size_t>(opts.check_stride) == 0) {
        for (int path = 1; path < 3; ++path) {
          const double diff = out.along(path, x, t) - v;
          if (std::abs(diff) > tol * std::max(1.0, pts[j].r)) {
            std::ostringstream os;
            os << "line integrals of the pressure gradient candidate depend on the path (difference " << diff << ")";
            throw PathDependenceError(os.str(), diff);
          }
        }
      }
    }
  }
  return out;
}

VectorField counterexample_velocity(const FluidParams& params) {
  return VectorField::curl_r(
      ScalarField::single({1, 0}, radial::solid_growing(), TimeKind::exp(params.nu), -std::sqrt(4.0 * kPi / 3.0)));
}

}  // namespace ustokes
