#include "random_fields.hpp"

#include <cmath>

namespace ustokes::testing {

FluidParams RandomFields::params() {
  const double nu = uniform(0.5, 1.5);
  const double rho = uniform(0.5, 2.0);
  return FluidParams::create(nu, rho * nu, rho);
}

SphIndex RandomFields::index(int n_lo, int n_hi) {
  const int n = integer(n_lo, n_hi);
  return {n, integer(-n, n)};
}

RadialKind RandomFields::regular_radial(int n) {
  switch (integer(0, 3)) {
    case 0:
      return radial::solid_growing();
    case 1:
      return radial::bessel_j(uniform(0.5, 2.0));
    case 2:
      return radial::modified_i(uniform(0.5, 2.0));
    default: {
      std::vector<double> c{coeff()};
      if (integer(0, 1)) c.push_back(coeff());
      return radial::power_series(n + 2 * integer(0, 1), std::move(c));
    }
  }
}

TimeKind RandomFields::any_time() {
  switch (integer(0, 2)) {
    case 0:
      return TimeKind::constant();
    case 1:
      return TimeKind::exp(uniform(-1.0, 1.0));
    default:
      return TimeKind::poly(integer(1, 2));
  }
}

ScalarMode RandomFields::generic_mode(int n_lo, int n_hi) {
  const SphIndex idx = index(n_lo, n_hi);
  return {idx, regular_radial(idx.n), any_time(), coeff()};
}

ScalarMode RandomFields::heat_mode(const FluidParams& p, int n_lo, int n_hi) {
  const SphIndex idx = index(n_lo, n_hi);
  const double lambda = uniform(0.5, 2.0);
  switch (integer(0, 2)) {
    case 0:
      return {idx, radial::bessel_j(lambda), TimeKind::exp(-p.nu * lambda * lambda), coeff()};
    case 1:
      return {idx, radial::modified_i(lambda), TimeKind::exp(p.nu * lambda * lambda), coeff()};
    default:
      return {idx, radial::solid_growing(), TimeKind::constant(), coeff()};
  }
}

ScalarMode RandomFields::harmonic_mode(bool allow_decaying, int n_lo, int n_hi) {
  const SphIndex idx = index(n_lo, n_hi);
  const bool decaying = allow_decaying && integer(0, 1) && idx.n > 0;
  return {idx, decaying ? radial::solid_decaying() : radial::solid_growing(), any_time(), coeff()};
}

ScalarField RandomFields::field(int count, ScalarMode (RandomFields::*make)(int, int), int n_lo, int n_hi) {
  std::vector<ScalarMode> modes;
  for (int i = 0; i < count; ++i) modes.push_back((this->*make)(n_lo, n_hi));
  return ScalarField(std::move(modes));
}

FlowSpec RandomFields::flow_spec(bool homogeneous) {
  FlowSpec s;
  s.params = params();
  s.p0 = uniform(-1.0, 1.0);
  if (!homogeneous) {
    s.P = field(integer(1, 2), &RandomFields::generic_mode);
    s.T = field(integer(1, 2), &RandomFields::generic_mode);
    s.chi = field(1, &RandomFields::generic_mode);
  }
  std::vector<ScalarMode> a, b;
  a.push_back(harmonic_mode(false, 1, 3));
  a.push_back(heat_mode(s.params));
  b.push_back(heat_mode(s.params));
  if (integer(0, 1)) b.push_back(heat_mode(s.params));
  if (integer(0, 1)) a.push_back(heat_mode(s.params));
  s.A = ScalarField(a) + solve_A_for_P(s.P, s.params);
  s.B = ScalarField(b) + solve_B_for_T(s.T, s.params);
  return s;
}

}  // namespace ustokes::testing
