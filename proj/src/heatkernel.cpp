#include "ustokes/heatkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ustokes/errors.hpp"

namespace ustokes {

bool QuadratureDomain::contains(const Vec3& x) const {
  const double r = norm(x);
  return r < r_outer && (shape == Shape::Ball || r > r_inner);
}

void QuadratureDomain::validate() const {
  if (!(r_outer > 0.0)) throw InvalidArgument("domain radius must be positive");
  if (shape == Shape::Shell && !(r_inner > 0.0 && r_inner < r_outer)) {
    throw InvalidArgument("shell needs 0 < r1 < r2");
  }
  if (n_r < 2 || n_theta < 2 || n_phi < 2 || n_time < 2) throw InvalidArgument("node counts must be >= 2");
}

namespace {

struct Interval {
  double lo, hi;
};

// Parameter range rho >= 0 with |x + rho w| <= R; empty if none.
std::optional<Interval> ray_in_ball(const Vec3& x, const Vec3& w, double R) {
  const double b = dot(x, w);
  const double c = dot(x, x) - R * R;
  const double disc = b * b - c;
  if (disc <= 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  const double lo = std::max(0.0, -b - s);
  const double hi = -b + s;
  if (hi <= lo) return std::nullopt;
  return Interval{lo, hi};
}

int ray_intervals(const QuadratureDomain& dom, const Vec3& x, const Vec3& w, Interval out[2]) {
  const auto outer = ray_in_ball(x, w, dom.r_outer);
  if (!outer) return 0;
  if (dom.shape == QuadratureDomain::Shape::Ball) {
    out[0] = *outer;
    return 1;
  }
  const auto inner = ray_in_ball(x, w, dom.r_inner);
  if (!inner || inner->hi <= outer->lo || inner->lo >= outer->hi) {
    out[0] = *outer;
    return 1;
  }
  int k = 0;
  if (inner->lo > outer->lo) out[k++] = {outer->lo, inner->lo};
  if (inner->hi < outer->hi) out[k++] = {inner->hi, outer->hi};
  return k;
}

// int_0^t int_D G p with the unit-mass kernel.
double unit_mass_integral(const ScalarField& p, const Vec3& x, double t, const QuadratureDomain& dom,
                          const FluidParams& params, double q_max) {
  const GaussLegendre gu = gauss_legendre(dom.n_time);
  const GaussLegendre gq = gauss_legendre(dom.n_r);
  const GaussLegendre gc = gauss_legendre(dom.n_theta);
  const double su = std::sqrt(t);

  // Ray directions and angular weights are independent of time.
  std::vector<Vec3> dirs;
  std::vector<double> dir_w;
  for (int i = 0; i < dom.n_theta; ++i) {
    const double c = gc.nodes[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int k = 0; k < dom.n_phi; ++k) {
      const double ph = 2.0 * kPi * k / dom.n_phi;
      dirs.push_back({s * std::cos(ph), s * std::sin(ph), c});
      dir_w.push_back(gc.weights[static_cast<std::size_t>(i)] * 2.0 * kPi / dom.n_phi);
    }
  }

  double total = 0.0;
  for (int a = 0; a < dom.n_time; ++a) {
    // u = sqrt(t - tau), dtau = 2 u du
    const double u = 0.5 * su * (gu.nodes[static_cast<std::size_t>(a)] + 1.0);
    const double wu = 0.5 * su * gu.weights[static_cast<std::size_t>(a)];
    const double tau = t - u * u;
    const double scale = 2.0 * std::sqrt(params.nu) * u;  // rho = scale * q
    if (scale <= 0.0) continue;
    double ang_sum = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      Interval iv[2];
      const int count = ray_intervals(dom, x, dirs[d], iv);
      double radial = 0.0;
      for (int j = 0; j < count; ++j) {
        const double qa = iv[j].lo / scale;
        const double qb = std::min(iv[j].hi / scale, q_max);
        if (qb <= qa) continue;
        const double half = 0.5 * (qb - qa);
        for (int b = 0; b < dom.n_r; ++b) {
          const double q = qa + half * (gq.nodes[static_cast<std::size_t>(b)] + 1.0);
          const double wq = half * gq.weights[static_cast<std::size_t>(b)];
          radial += wq * q * q * std::exp(-q * q) * p.eval(x + (scale * q) * dirs[d], tau);
        }
      }
      ang_sum += dir_w[d] * radial;
    }
    // (2 sqrt(s))^3 q^2 dq / (4 pi s)^(3/2) = pi^(-3/2) q^2 dq
    total += wu * 2.0 * u * ang_sum;
  }
  return total / std::pow(kPi, 1.5);
}

}  // namespace

double psi_integral(const ScalarField& p, const Vec3& x, double t, const QuadratureDomain& dom,
                    const FluidParams& params, const PsiOptions& opts) {
  dom.validate();
  params.validate();
  if (t < 0.0) throw DomainError("psi_integral needs t >= 0");
  if (t == 0.0 || p.empty()) return 0.0;

  const double factor = opts.kernel == KernelForm::Literal ? std::pow(kPi, 1.5) * params.nu : -params.nu;
  const double value = factor * unit_mass_integral(p, x, t, dom, params, opts.q_max);
  if (opts.tolerance) {
    QuadratureDomain coarse = dom;
    coarse.n_r = std::max(2, dom.n_r / 2);
    coarse.n_theta = std::max(2, dom.n_theta / 2);
    coarse.n_phi = std::max(2, dom.n_phi / 2);
    coarse.n_time = std::max(2, dom.n_time / 2);
    const double rough = factor * unit_mass_integral(p, x, t, coarse, params, opts.q_max);
    if (std::abs(value - rough) > *opts.tolerance) {
      std::ostringstream os;
      os << "quadrature estimate " << std::abs(value - rough) << " exceeds tolerance " << *opts.tolerance;
      throw QuadratureBudgetError(os.str());
    }
  }
  return value;
}

PsiSplit split_psi(const ScalarField& psi, const FluidParams& params, const Shell& check_shell) {
  params.validate();
  const auto probes = probe_points(check_shell, 24);
  const ScalarField prime = heat_op(psi, params);
  const double res = max_abs(exact_laplacian(prime), probes);
  if (res > 1e-10 * std::max(1.0, max_abs(prime, probes))) {
    std::ostringstream os;
    os << "psi must satisfy lap (lap - (1/nu) d/dt) psi = 0; max residual " << res;
    throw SpecError(os.str());
  }
  PsiSplit out;
  out.psi1 = simplify((-params.nu) * integrate_time(prime));
  out.psi2 = simplify(psi - out.psi1);
  return out;
}

ScalarField pressure_from_psi1(const ScalarField& psi1, const FluidParams& params) {
  params.validate();
  return simplify((-1.0 / params.nu) * exact_dt(psi1));
}

}  // namespace ustokes
