#include "ustokes/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ustokes/errors.hpp"

namespace ustokes {

namespace {

constexpr double kSnap = 64.0 * std::numeric_limits<double>::epsilon();

double ipow(double x, int p) {
  if (p == 0) return 1.0;
  if (x == 0.0) {
    if (p < 0) throw DomainError("negative power evaluated at r = 0");
    return 0.0;
  }
  return std::pow(x, p);
}

// Eigenvalue of the Helmholtz-type radial profile under the Laplacian.
double bessel_eigen(const BesselRadial& b) {
  const double l2 = b.lambda * b.lambda;
  return (b.kind == SphBessel::J || b.kind == SphBessel::Y) ? -l2 : l2;
}

}  // namespace

// ---------------------------------------------------------------------------

FluidParams FluidParams::create(double nu, double mu, double rho) {
  FluidParams p{nu, mu, rho};
  p.validate();
  return p;
}

void FluidParams::validate() const {
  if (!(nu > 0.0) || !(mu > 0.0) || !(rho > 0.0)) {
    throw InvalidArgument("fluid parameters nu, mu, rho must be positive");
  }
  if (std::abs(rho * nu - mu) > 1e-12 * mu) {
    throw InvalidArgument("fluid parameters inconsistent: rho * nu != mu");
  }
}

// ---------------------------------------------------------------------------

ValueAndSlope eval_radial(const RadialKind& kind, int n, double r) {
  if (r < 0.0) throw DomainError("negative radius");
  return std::visit(
      [n, r](const auto& k) -> ValueAndSlope {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SolidGrowing>) {
          return {ipow(r, n), n == 0 ? 0.0 : n * ipow(r, n - 1)};
        } else if constexpr (std::is_same_v<K, SolidDecaying>) {
          if (r == 0.0) throw DomainError("decaying solid harmonic evaluated at r = 0");
          return {ipow(r, -n - 1), (-n - 1.0) * ipow(r, -n - 2)};
        } else if constexpr (std::is_same_v<K, BesselRadial>) {
          if (r == 0.0 && is_singular(k.kind)) throw DomainError("singular Bessel profile at r = 0");
          const auto b = spherical_bessel_d(k.kind, n, k.lambda * r);
          return {b.value, k.lambda * b.slope};
        } else {
          ValueAndSlope out;
          for (std::size_t j = 0; j < k.coeffs.size(); ++j) {
            const int p = k.base + 2 * static_cast<int>(j);
            out.value += k.coeffs[j] * ipow(r, p);
            if (p != 0) out.slope += k.coeffs[j] * p * ipow(r, p - 1);
          }
          return out;
        }
      },
      kind);
}

double eval_radial_second(const RadialKind& kind, int n, double r) {
  if (r <= 0.0) throw DomainError("second radial derivative needs r > 0");
  return std::visit(
      [n, r](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SolidGrowing>) {
          return n < 2 ? 0.0 : n * (n - 1.0) * ipow(r, n - 2);
        } else if constexpr (std::is_same_v<K, SolidDecaying>) {
          return (n + 1.0) * (n + 2.0) * ipow(r, -n - 3);
        } else if constexpr (std::is_same_v<K, BesselRadial>) {
          // x^2 f'' + 2x f' + (s x^2 - n(n+1)) f = 0 with s = +1 for j, y and -1 for i, k
          const double x = k.lambda * r;
          const auto b = spherical_bessel_d(k.kind, n, x);
          const double s = (k.kind == SphBessel::J || k.kind == SphBessel::Y) ? 1.0 : -1.0;
          const double f2 = -2.0 * b.slope / x - (s - n * (n + 1.0) / (x * x)) * b.value;
          return k.lambda * k.lambda * f2;
        } else {
          double out = 0.0;
          for (std::size_t j = 0; j < k.coeffs.size(); ++j) {
            const int p = k.base + 2 * static_cast<int>(j);
            if (p != 0 && p != 1) out += k.coeffs[j] * p * (p - 1.0) * ipow(r, p - 2);
          }
          return out;
        }
      },
      kind);
}

void validate_radial(const RadialKind& kind) {
  if (const auto* b = std::get_if<BesselRadial>(&kind)) {
    if (!(b->lambda > 0.0)) throw InvalidArgument("Bessel radial profile needs lambda > 0");
  }
  if (const auto* s = std::get_if<PowerSeries>(&kind)) {
    if (s->coeffs.empty() || s->coeffs.back() == 0.0) {
      throw InvalidArgument("power series needs a nonzero trailing coefficient");
    }
  }
}

bool singular_at_origin(const RadialKind& kind, int n) {
  if (std::holds_alternative<SolidDecaying>(kind)) return true;
  if (const auto* b = std::get_if<BesselRadial>(&kind)) return is_singular(b->kind);
  if (const auto* s = std::get_if<PowerSeries>(&kind)) return s->base < 0 || (s->base < n);
  return false;
}

// ---------------------------------------------------------------------------

TimeKind TimeKind::exp(double sigma) {
  if (sigma == 0.0) return constant();
  return TimeKind(Tag::Exp, sigma, 0);
}

TimeKind TimeKind::poly(int degree) {
  if (degree < 1) throw InvalidArgument("polynomial time factor needs degree >= 1");
  return TimeKind(Tag::Poly, 0.0, degree);
}

double TimeKind::eval(double t) const {
  switch (tag_) {
    case Tag::Constant:
      return 1.0;
    case Tag::Exp:
      return std::exp(sigma_ * t);
    case Tag::Poly:
      return std::pow(t, degree_);
  }
  return 1.0;
}

// ---------------------------------------------------------------------------

bool is_harmonic(const ScalarMode& mode) {
  return std::holds_alternative<SolidGrowing>(mode.radial) ||
         std::holds_alternative<SolidDecaying>(mode.radial);
}

bool is_heat_type(const ScalarMode& mode, const FluidParams& params) {
  if (is_harmonic(mode)) return mode.time.tag() == TimeKind::Tag::Constant;
  const auto* b = std::get_if<BesselRadial>(&mode.radial);
  if (b == nullptr || mode.time.tag() != TimeKind::Tag::Exp) return false;
  const double target = params.nu * bessel_eigen(*b);
  return std::abs(mode.time.sigma() - target) <= 1e-12 * std::abs(target);
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(std::vector<ScalarMode> modes, std::optional<Shell> domain_hint)
    : modes_(std::move(modes)), hint_(domain_hint) {
  for (const auto& m : modes_) {
    m.index.validate();
    validate_radial(m.radial);
  }
}

ScalarField ScalarField::single(SphIndex idx, RadialKind radial, TimeKind time, double coeff) {
  return ScalarField({ScalarMode{idx, std::move(radial), time, coeff}});
}

ScalarField ScalarField::with_hint(std::optional<Shell> hint) const {
  ScalarField out = *this;
  out.hint_ = hint;
  return out;
}

int ScalarField::max_degree() const {
  int n = 0;
  for (const auto& m : modes_) n = std::max(n, m.index.n);
  return n;
}

double ScalarField::eval(const Spherical& p, double t) const {
  if (modes_.empty()) return 0.0;
  const YlmTable ylm(max_degree(), p.theta, p.phi);
  double sum = 0.0;
  for (const auto& m : modes_) {
    const double r = eval_radial(m.radial, m.index.n, p.r).value;
    sum += m.coeff * r * ylm.value(m.index.n, m.index.m) * m.time.eval(t);
  }
  return sum;
}

ScalarJet ScalarField::jet(const Spherical& p, double t) const {
  ScalarJet j;
  if (modes_.empty()) return j;
  const YlmTable ylm(max_degree(), p.theta, p.phi);
  for (const auto& m : modes_) {
    const int n = m.index.n;
    const auto rad = eval_radial(m.radial, n, p.r);
    double over_r = 0.0;
    if (p.r > 0.0) {
      over_r = rad.value / p.r;
    } else if (n > 0) {
      if (rad.value != 0.0) throw DomainError("profile not regular at r = 0 for degree >= 1");
      over_r = rad.slope;
    }
    const double w = m.coeff * m.time.eval(t);
    const double y = ylm.value(n, m.index.m);
    const double yt = ylm.d_theta(n, m.index.m);
    const double yp = ylm.d_phi_over_sin(n, m.index.m);
    j.value += w * rad.value * y;
    j.d_r += w * rad.slope * y;
    j.d_theta += w * rad.value * yt;
    j.d_phis += w * rad.value * yp;
    j.d_theta_over_r += w * over_r * yt;
    j.d_phis_over_r += w * over_r * yp;
    j.dr_d_theta += w * rad.slope * yt;
    j.dr_d_phis += w * rad.slope * yp;
    j.minus_l_over_r += w * n * (n + 1.0) * over_r * y;
  }
  return j;
}

Vec3 ScalarField::gradient(const Vec3& x, double t) const {
  const Spherical p = to_spherical(x);
  const ScalarJet j = jet(p, t);
  return SphericalFrame::at(p.theta, p.phi).to_cartesian(j.d_r, j.d_theta_over_r, j.d_phis_over_r);
}

// ---------------------------------------------------------------------------
// Mode arithmetic

namespace {

std::optional<Shell> first_hint(const ScalarField& a, const ScalarField& b) {
  return a.domain_hint() ? a.domain_hint() : b.domain_hint();
}

bool same_radial_family(const RadialKind& a, const RadialKind& b) {
  if (a.index() != b.index()) return false;
  if (const auto* pa = std::get_if<PowerSeries>(&a)) {
    const auto& pb = std::get<PowerSeries>(b);
    return (pa->base - pb.base) % 2 == 0;
  }
  return a == b;
}

struct Accum {
  ScalarMode mode;
  double mag = 0.0;               // non-series: sum of |contributions|
  std::vector<double> term_mag;   // series: per-term sum of |contributions|
};

void fold_series(Accum& acc, const PowerSeries& s, double coeff) {
  auto& dst = std::get<PowerSeries>(acc.mode.radial);
  const int new_base = std::min(dst.base, s.base);
  if (new_base < dst.base) {
    const std::size_t shift = static_cast<std::size_t>((dst.base - new_base) / 2);
    dst.coeffs.insert(dst.coeffs.begin(), shift, 0.0);
    acc.term_mag.insert(acc.term_mag.begin(), shift, 0.0);
    dst.base = new_base;
  }
  const std::size_t off = static_cast<std::size_t>((s.base - dst.base) / 2);
  if (dst.coeffs.size() < off + s.coeffs.size()) {
    dst.coeffs.resize(off + s.coeffs.size(), 0.0);
    acc.term_mag.resize(off + s.coeffs.size(), 0.0);
  }
  for (std::size_t k = 0; k < s.coeffs.size(); ++k) {
    dst.coeffs[off + k] += coeff * s.coeffs[k];
    acc.term_mag[off + k] += std::abs(coeff * s.coeffs[k]);
  }
}

std::vector<ScalarMode> simplify_modes(const std::vector<ScalarMode>& in) {
  std::vector<Accum> acc;
  for (const auto& m : in) {
    if (m.coeff == 0.0) continue;
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Accum& a) {
      return a.mode.index == m.index && a.mode.time == m.time && same_radial_family(a.mode.radial, m.radial);
    });
    if (const auto* s = std::get_if<PowerSeries>(&m.radial)) {
      if (it == acc.end()) {
        Accum a;
        a.mode = ScalarMode{m.index, PowerSeries{s->base, {}}, m.time, 1.0};
        acc.push_back(std::move(a));
        it = acc.end() - 1;
      }
      fold_series(*it, *s, m.coeff);
      continue;
    }
    if (it == acc.end()) {
      acc.push_back(Accum{m, std::abs(m.coeff), {}});
    } else {
      it->mode.coeff += m.coeff;
      it->mag += std::abs(m.coeff);
    }
  }

  std::vector<ScalarMode> out;
  out.reserve(acc.size());
  for (auto& a : acc) {
    if (auto* s = std::get_if<PowerSeries>(&a.mode.radial)) {
      for (std::size_t k = 0; k < s->coeffs.size(); ++k) {
        if (std::abs(s->coeffs[k]) <= kSnap * a.term_mag[k]) s->coeffs[k] = 0.0;
      }
      while (!s->coeffs.empty() && s->coeffs.back() == 0.0) s->coeffs.pop_back();
      std::size_t lead = 0;
      while (lead < s->coeffs.size() && s->coeffs[lead] == 0.0) ++lead;
      if (lead == s->coeffs.size()) continue;
      s->coeffs.erase(s->coeffs.begin(), s->coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
      s->base += 2 * static_cast<int>(lead);
      out.push_back(std::move(a.mode));
    } else {
      if (std::abs(a.mode.coeff) <= kSnap * a.mag) continue;
      out.push_back(std::move(a.mode));
    }
  }
  return out;
}

std::vector<ScalarMode> laplacian_modes(const std::vector<ScalarMode>& in) {
  std::vector<ScalarMode> out;
  for (const auto& m : in) {
    const int n = m.index.n;
    if (const auto* b = std::get_if<BesselRadial>(&m.radial)) {
      out.push_back({m.index, m.radial, m.time, m.coeff * bessel_eigen(*b)});
    } else if (const auto* s = std::get_if<PowerSeries>(&m.radial)) {
      PowerSeries lap{s->base - 2, s->coeffs};
      for (std::size_t k = 0; k < lap.coeffs.size(); ++k) {
        const double p = s->base + 2.0 * static_cast<double>(k);
        lap.coeffs[k] *= p * (p + 1.0) - n * (n + 1.0);
      }
      out.push_back({m.index, std::move(lap), m.time, m.coeff});
    }
  }
  return out;
}

std::vector<ScalarMode> dt_modes(const std::vector<ScalarMode>& in) {
  std::vector<ScalarMode> out;
  for (const auto& m : in) {
    switch (m.time.tag()) {
      case TimeKind::Tag::Constant:
        break;
      case TimeKind::Tag::Exp:
        out.push_back({m.index, m.radial, m.time, m.coeff * m.time.sigma()});
        break;
      case TimeKind::Tag::Poly: {
        const int k = m.time.degree();
        out.push_back({m.index, m.radial, k == 1 ? TimeKind::constant() : TimeKind::poly(k - 1), m.coeff * k});
        break;
      }
    }
  }
  return out;
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  std::vector<ScalarMode> modes = a.modes();
  modes.insert(modes.end(), b.modes().begin(), b.modes().end());
  return ScalarField(std::move(modes), first_hint(a, b));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) { return a + (-1.0) * b; }

ScalarField operator*(double s, const ScalarField& f) {
  std::vector<ScalarMode> modes = f.modes();
  for (auto& m : modes) m.coeff *= s;
  return ScalarField(std::move(modes), f.domain_hint());
}

ScalarField simplify(const ScalarField& f) { return ScalarField(simplify_modes(f.modes()), f.domain_hint()); }

ScalarField exact_laplacian(const ScalarField& f) {
  return ScalarField(simplify_modes(laplacian_modes(f.modes())), f.domain_hint());
}

ScalarField exact_dt(const ScalarField& f) {
  return ScalarField(simplify_modes(dt_modes(f.modes())), f.domain_hint());
}

ScalarField heat_op(const ScalarField& f, const FluidParams& params) {
  auto modes = laplacian_modes(f.modes());
  for (auto m : dt_modes(f.modes())) {
    m.coeff *= -1.0 / params.nu;
    modes.push_back(std::move(m));
  }
  return ScalarField(simplify_modes(modes), f.domain_hint());
}

ScalarField transverse_L(const ScalarField& f) {
  std::vector<ScalarMode> modes;
  for (const auto& m : f.modes()) {
    if (m.index.n == 0) continue;
    modes.push_back({m.index, m.radial, m.time, -m.index.n * (m.index.n + 1.0) * m.coeff});
  }
  return ScalarField(std::move(modes), f.domain_hint());
}

ScalarField integrate_time(const ScalarField& f) {
  std::vector<ScalarMode> modes;
  for (const auto& m : f.modes()) {
    switch (m.time.tag()) {
      case TimeKind::Tag::Constant:
        modes.push_back({m.index, m.radial, TimeKind::poly(1), m.coeff});
        break;
      case TimeKind::Tag::Poly: {
        const int k = m.time.degree();
        modes.push_back({m.index, m.radial, TimeKind::poly(k + 1), m.coeff / (k + 1.0)});
        break;
      }
      case TimeKind::Tag::Exp: {
        const double s = m.time.sigma();
        modes.push_back({m.index, m.radial, m.time, m.coeff / s});
        modes.push_back({m.index, m.radial, TimeKind::constant(), -m.coeff / s});
        break;
      }
    }
  }
  return ScalarField(simplify_modes(modes), f.domain_hint());
}

ScalarField radial_euler(const ScalarField& f, double drop_tol) {
  std::vector<ScalarMode> modes;
  for (const auto& m : f.modes()) {
    const int n = m.index.n;
    if (std::holds_alternative<SolidGrowing>(m.radial)) {
      modes.push_back({m.index, m.radial, m.time, (n + 1.0) * m.coeff});
    } else if (std::holds_alternative<SolidDecaying>(m.radial)) {
      if (n > 0) modes.push_back({m.index, m.radial, m.time, -n * m.coeff});
    } else if (const auto* s = std::get_if<PowerSeries>(&m.radial)) {
      PowerSeries out{s->base, s->coeffs};
      for (std::size_t k = 0; k < out.coeffs.size(); ++k) out.coeffs[k] *= s->base + 2.0 * static_cast<double>(k) + 1.0;
      modes.push_back({m.index, std::move(out), m.time, m.coeff});
    } else if (std::abs(m.coeff) > drop_tol) {
      throw InvalidArgument("d/dr(r f) of a Bessel profile is outside the mode family");
    }
  }
  return ScalarField(simplify_modes(modes), f.domain_hint());
}

ScalarField non_harmonic_part(const ScalarField& f) {
  std::vector<ScalarMode> modes;
  for (const auto& m : f.modes()) {
    if (is_harmonic(m)) continue;
    if (const auto* s = std::get_if<PowerSeries>(&m.radial)) {
      PowerSeries out = *s;
      const int n = m.index.n;
      for (std::size_t k = 0; k < out.coeffs.size(); ++k) {
        const int p = out.base + 2 * static_cast<int>(k);
        if (p == n || p == -n - 1) out.coeffs[k] = 0.0;
      }
      modes.push_back({m.index, std::move(out), m.time, m.coeff});
    } else {
      modes.push_back(m);
    }
  }
  return ScalarField(simplify_modes(modes), f.domain_hint());
}

// ---------------------------------------------------------------------------

std::vector<Probe> probe_points(const Shell& shell, int count, std::vector<double> times) {
  std::vector<Probe> probes;
  probes.reserve(static_cast<std::size_t>(count) * times.size());
  const auto frac = [](double v) { return v - std::floor(v); };
  for (int i = 0; i < count; ++i) {
    const double u = frac(0.5 + i * 0.6180339887498949);
    const double v = frac(0.5 + i * 0.7548776662466927);
    const double w = frac(0.5 + i * 0.5698402909980532);
    const Spherical p{shell.r1 + (shell.r2 - shell.r1) * u, std::acos(1.0 - 2.0 * v), 2.0 * kPi * w};
    for (double t : times) probes.push_back({p, t});
  }
  return probes;
}

double max_abs(const ScalarField& f, const std::vector<Probe>& probes) {
  double m = 0.0;
  for (const auto& pr : probes) m = std::max(m, std::abs(f.eval(pr.point, pr.t)));
  return m;
}

}  // namespace ustokes
