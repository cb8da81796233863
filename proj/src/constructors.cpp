#include "ustokes/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ustokes/errors.hpp"

namespace ustokes {

namespace {

using Terms = std::map<int, double>;  // exponent -> coefficient

Terms power_terms(const ScalarMode& m) {
  const int n = m.index.n;
  Terms out;
  if (std::holds_alternative<SolidGrowing>(m.radial)) {
    out[n] = m.coeff;
  } else if (std::holds_alternative<SolidDecaying>(m.radial)) {
    out[-n - 1] = m.coeff;
  } else if (const auto* s = std::get_if<PowerSeries>(&m.radial)) {
    for (std::size_t k = 0; k < s->coeffs.size(); ++k) {
      if (s->coeffs[k] != 0.0) out[s->base + 2 * static_cast<int>(k)] += m.coeff * s->coeffs[k];
    }
  }
  return out;
}

// lap(r^q Y_n) = c(q) r^(q-2) Y_n
double lap_factor(int q, int n) { return q * (q + 1.0) - n * (n + 1.0); }

double checked_lap_factor(int q, int n) {
  const double c = lap_factor(q, n);
  if (c == 0.0) {
    std::ostringstream os;
    os << "no particular solution in the mode family: r^" << q << " is harmonic for degree " << n;
    throw ResonanceError(os.str());
  }
  return c;
}

// Solution of lap F = terms.
Terms inverse_laplacian(const Terms& terms, int n) {
  Terms out;
  for (const auto& [q, a] : terms) out[q + 2] += a / checked_lap_factor(q + 2, n);
  return out;
}

ScalarMode series_mode(SphIndex idx, const Terms& terms, TimeKind time) {
  const int base = terms.begin()->first;
  const int top = terms.rbegin()->first;
  std::vector<double> coeffs(static_cast<std::size_t>((top - base) / 2 + 1), 0.0);
  for (const auto& [q, a] : terms) coeffs[static_cast<std::size_t>((q - base) / 2)] = a;
  return ScalarMode{idx, PowerSeries{base, std::move(coeffs)}, time, 1.0};
}

void solve_series_mode(const ScalarMode& g, const FluidParams& params, double r_max, double trunc,
                       std::vector<ScalarMode>& out) {
  const int n = g.index.n;
  Terms src = power_terms(g);
  if (src.empty()) return;
  for (auto& [q, a] : src) a /= params.mu;

  switch (g.time.tag()) {
    case TimeKind::Tag::Constant:
      out.push_back(series_mode(g.index, inverse_laplacian(src, n), g.time));
      return;
    case TimeKind::Tag::Poly: {
      const int K = g.time.degree();
      Terms r = inverse_laplacian(src, n);
      out.push_back(series_mode(g.index, r, g.time));
      for (int j = 1; j <= K; ++j) {
        for (auto& [q, a] : r) a *= (K - j + 1.0) / params.nu;
        r = inverse_laplacian(r, n);
        const int deg = K - j;
        out.push_back(series_mode(g.index, r, deg == 0 ? TimeKind::constant() : TimeKind::poly(deg)));
      }
      return;
    }
    case TimeKind::Tag::Exp: {
      // lap a_k r^(q+2k+2) - (sigma/nu) a_{k-1} r^(q+2k) = 0 beyond the first term
      const double ratio = g.time.sigma() / params.nu;
      Terms acc;
      for (const auto& [q0, g0] : src) {
        double a = g0 / checked_lap_factor(q0 + 2, n);
        int q = q0 + 2;
        double biggest = 0.0;
        for (int k = 0; k < 400; ++k) {
          acc[q] += a;
          const double size = std::abs(a) * std::pow(r_max, q);
          biggest = std::max(biggest, size);
          if (k > 0 && size <= trunc * biggest) break;
          q += 2;
          a = ratio * a / checked_lap_factor(q, n);
        }
      }
      out.push_back(series_mode(g.index, acc, g.time));
      return;
    }
  }
}

void solve_bessel_mode(const ScalarMode& g, const BesselRadial& b, const FluidParams& params,
                       std::vector<ScalarMode>& out) {
  const double kappa = (b.kind == SphBessel::J || b.kind == SphBessel::Y ? -1.0 : 1.0) * b.lambda * b.lambda;
  switch (g.time.tag()) {
    case TimeKind::Tag::Constant:
    case TimeKind::Tag::Exp: {
      const double denom = params.mu * (kappa - g.time.sigma() / params.nu);
      if (std::abs(denom) <= 1e-13 * params.mu * std::abs(kappa)) {
        throw ResonanceError("source mode is heat-type; the particular solution grows like t exp(sigma t)");
      }
      out.push_back({g.index, g.radial, g.time, g.coeff / denom});
      return;
    }
    case TimeKind::Tag::Poly: {
      const int K = g.time.degree();
      double c = 1.0 / (params.mu * kappa);
      out.push_back({g.index, g.radial, g.time, g.coeff * c});
      for (int q = K - 1; q >= 0; --q) {
        c = (q + 1.0) * c / (params.nu * kappa);
        out.push_back({g.index, g.radial, q == 0 ? TimeKind::constant() : TimeKind::poly(q), g.coeff * c});
      }
      return;
    }
  }
}

double scale_of(std::initializer_list<const ScalarField*> fields, const std::vector<Probe>& probes) {
  double s = 0.0;
  for (const auto* f : fields) s = std::max(s, max_abs(*f, probes));
  return s;
}

Shell shell_for(const FlowSpec& spec) {
  for (const auto* f : {&spec.A, &spec.B, &spec.chi, &spec.P, &spec.T}) {
    if (f->domain_hint()) return *f->domain_hint();
  }
  return Shell{};
}

}  // namespace

ScalarField solve_heat_poisson(const ScalarField& g, const FluidParams& params, const SolveOptions& opts) {
  params.validate();
  const double r_max = g.domain_hint() ? g.domain_hint()->r2 : opts.r_max;
  std::vector<ScalarMode> out;
  const ScalarField source = simplify(g);
  for (const auto& m : source.modes()) {
    if (const auto* b = std::get_if<BesselRadial>(&m.radial)) {
      solve_bessel_mode(m, *b, params, out);
    } else {
      solve_series_mode(m, params, r_max, opts.truncation, out);
    }
  }
  return simplify(ScalarField(std::move(out), g.domain_hint()));
}

ScalarField solve_A_for_P(const ScalarField& P, const FluidParams& params, const SolveOptions& opts) {
  return solve_heat_poisson(-1.0 * non_harmonic_part(P), params, opts);
}

ScalarField solve_B_for_T(const ScalarField& T, const FluidParams& params, const SolveOptions& opts) {
  return solve_heat_poisson(-1.0 * T, params, opts);
}

ScalarField a_constraint_residual(const FlowSpec& spec) {
  return simplify(spec.params.mu * exact_laplacian(heat_op(spec.A, spec.params)) + exact_laplacian(spec.P));
}

ScalarField b_constraint_residual(const FlowSpec& spec) {
  return simplify(spec.params.mu * heat_op(spec.B, spec.params) + spec.T);
}

FlowSolution build_flow(const FlowSpec& spec) {
  spec.params.validate();
  const auto probes = probe_points(shell_for(spec), 24);
  const FluidParams& pr = spec.params;

  {
    const ScalarField lhs = pr.mu * exact_laplacian(heat_op(spec.A, pr));
    const ScalarField rhs = exact_laplacian(spec.P);
    const double scale = scale_of({&lhs, &rhs}, probes);
    const double res = max_abs(a_constraint_residual(spec), probes);
    if (res > 1e-10 * std::max(1.0, scale)) {
      std::ostringstream os;
      os << "A equation violated: mu lap (lap - (1/nu) d/dt) A + lap P = 0 has max residual " << res;
      throw SpecError(os.str());
    }
  }
  {
    const ScalarField lhs = pr.mu * heat_op(spec.B, pr);
    const double scale = scale_of({&lhs, &spec.T}, probes);
    const double res = max_abs(b_constraint_residual(spec), probes);
    if (res > 1e-10 * std::max(1.0, scale)) {
      std::ostringstream os;
      os << "B equation violated: mu (lap - (1/nu) d/dt) B + T = 0 has max residual " << res;
      throw SpecError(os.str());
    }
  }

  FlowSolution sol;
  sol.params = pr;
  sol.velocity = VectorField::curl_curl_r(spec.A) + VectorField::curl_r(spec.B);

  // Bessel parts of P and mu heat_op(A) cancel by the A equation; drop what is left at round-off.
  const ScalarField inner = simplify(spec.P + pr.mu * heat_op(spec.A, pr));
  double drop_tol = 0.0;
  const ScalarField raw = spec.P + pr.mu * heat_op(spec.A, pr);
  for (const auto& m : raw.modes()) {
    if (std::holds_alternative<BesselRadial>(m.radial)) drop_tol = std::max(drop_tol, std::abs(m.coeff));
  }
  drop_tol *= 1e-10;
  sol.pressure = simplify(spec.chi + radial_euler(inner, drop_tol));
  sol.pressure_offset = spec.p0;
  sol.force = VectorField::sum({VectorField::gradient(spec.chi), VectorField::curl_curl_r(spec.P),
                                VectorField::curl_r(spec.T)});
  sol.provenance = "build_flow";
  return sol;
}

// ---------------------------------------------------------------------------

FlowSolution naghdi_hsu(const VectorField& Phi, const ScalarField& psi1, const FluidParams& params,
                        const Shell& check_shell) {
  params.validate();
  constexpr double kTol = 1e-8;
  const auto probes = probe_points(check_shell, 50, {0.0});
  const auto timed = probe_points(check_shell, 50, {0.0, 0.5});

  for (const auto& m : psi1.modes()) {
    if (!is_harmonic(m) && !std::holds_alternative<PowerSeries>(m.radial)) {
      throw PreconditionError("psi1 must be harmonic");
    }
  }
  if (max_abs(exact_laplacian(psi1), timed) > kTol * std::max(1.0, max_abs(psi1, timed))) {
    throw PreconditionError("psi1 must be harmonic");
  }

  if (!Phi.is_analytic()) throw PreconditionError("Phi must be mode-based so its divergence can be integrated in time");
  const VectorField heat = heat_op(Phi, params);
  double phi_scale = 0.0, heat_max = 0.0;
  for (const auto& pr : timed) {
    phi_scale = std::max(phi_scale, norm(Phi.eval(pr.point, pr.t)));
    heat_max = std::max(heat_max, norm(heat.eval(pr.point, pr.t)));
  }
  if (heat_max > kTol * std::max(1.0, phi_scale)) {
    throw PreconditionError("Phi is not heat-type: (lap - (1/nu) d/dt) Phi does not vanish");
  }

  const auto div = divergence_field(Phi);
  if (!div) throw PreconditionError("div Phi leaves the mode family");
  if (max_abs(*div, probes) > kTol * std::max(1.0, phi_scale)) {
    throw PreconditionError("div Phi must vanish at t = 0");
  }

  FlowSolution sol;
  sol.params = params;
  sol.velocity = VectorField::sum({Phi, VectorField::gradient((1.0 / params.mu) * psi1),
                                   VectorField::gradient((-params.nu) * integrate_time(*div))});
  sol.pressure = simplify((-1.0 / params.nu) * exact_dt(psi1));
  sol.provenance = "naghdi_hsu";
  return sol;
}

FlowSolution harmonic_pressure_flow(const ScalarField& p, const FluidParams& params) {
  params.validate();
  std::vector<ScalarMode> phi;
  const ScalarField simplified = simplify(p);
  for (const auto& m : simplified.modes()) {
    const int n = m.index.n;
    if (std::holds_alternative<SolidGrowing>(m.radial)) {
      phi.push_back({m.index, m.radial, m.time, m.coeff / (n + 1.0)});
    } else if (std::holds_alternative<SolidDecaying>(m.radial)) {
      if (n == 0) throw MonopoleError("1/r pressure mode: its potential needs log r");
      phi.push_back({m.index, m.radial, m.time, -m.coeff / n});
    } else {
      throw PreconditionError("harmonic_pressure_flow accepts solid harmonic modes only");
    }
  }
  FlowSpec spec;
  spec.params = params;
  spec.A = solve_heat_poisson(ScalarField(std::move(phi), p.domain_hint()), params);
  FlowSolution sol = build_flow(spec);
  sol.provenance = "harmonic_pressure_flow";
  return sol;
}

}  // namespace ustokes
