#include <doctest.h>

#include <cmath>
#include <vector>

#include "ustokes/errors.hpp"
#include "ustokes/geometry.hpp"
#include "ustokes/special.hpp"

using namespace ustokes;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

// Independent oracles from the standard library.
double oracle(SphBessel kind, int n, double x) {
  switch (kind) {
    case SphBessel::J:
      return std::sph_bessel(static_cast<unsigned>(n), x);
    case SphBessel::Y:
      return std::sph_neumann(static_cast<unsigned>(n), x);
    case SphBessel::I:
      return std::sqrt(kPi / (2.0 * x)) * std::cyl_bessel_i(n + 0.5, x);
    case SphBessel::K:
      return std::sqrt(2.0 / (kPi * x)) * std::cyl_bessel_k(n + 0.5, x);
  }
  return 0.0;
}

// Real orthonormal harmonic from std::assoc_legendre, which has no Condon-Shortley phase.
double oracle_ylm(int n, int m, double theta, double phi) {
  const int am = std::abs(m);
  const double norm = std::sqrt((2.0 * n + 1.0) / (4.0 * kPi) * std::tgamma(n - am + 1.0) / std::tgamma(n + am + 1.0));
  const double p = std::assoc_legendre(static_cast<unsigned>(n), static_cast<unsigned>(am), std::cos(theta));
  if (m == 0) return norm * p;
  return std::sqrt(2.0) * norm * p * (m > 0 ? std::cos(am * phi) : std::sin(am * phi));
}

}  // namespace

TEST_CASE("spherical Bessel functions match library oracles") {
  const std::vector<double> xs{1e-3, 0.1, 0.5, 1.0, 2.5, 5.0, 10.0, 20.0};
  for (auto kind : {SphBessel::J, SphBessel::Y, SphBessel::I, SphBessel::K}) {
    for (int n = 0; n <= 8; ++n) {
      for (double x : xs) {
        const double want = oracle(kind, n, x);
        if (kind == SphBessel::J && std::abs(want) < 1e-280) continue;
        if (kind == SphBessel::J && x > n + 1.0) {
          // Upward recurrence loses relative accuracy near zeros; check absolutely.
          CHECK(std::abs(spherical_bessel(kind, n, x) - want) < 1e-13);
        } else {
          INFO("kind " << static_cast<int>(kind) << " n " << n << " x " << x);
          CHECK(rel_err(spherical_bessel(kind, n, x), want) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("spherical Bessel reference values") {
  CHECK(std::abs(spherical_bessel(SphBessel::J, 0, kPi)) < 1e-14);
  CHECK(rel_err(spherical_bessel(SphBessel::J, 1, 1e-4), 1e-4 / 3.0) < 1e-8);
  CHECK(rel_err(spherical_bessel(SphBessel::I, 0, 1.0), std::sinh(1.0)) < 1e-12);
  CHECK(rel_err(spherical_bessel(SphBessel::K, 0, 2.0), std::exp(-2.0) / 2.0) < 1e-12);
  CHECK(spherical_bessel(SphBessel::J, 0, 0.0) == 1.0);
  CHECK(spherical_bessel(SphBessel::J, 3, 0.0) == 0.0);
  CHECK(spherical_bessel(SphBessel::I, 2, 0.0) == 0.0);
}

TEST_CASE("singular kinds reject the origin and negative arguments") {
  CHECK_THROWS_AS(spherical_bessel(SphBessel::Y, 0, 0.0), DomainError);
  CHECK_THROWS_AS(spherical_bessel(SphBessel::K, 2, 0.0), DomainError);
  CHECK_THROWS_AS(spherical_bessel(SphBessel::J, 1, -1.0), DomainError);
  CHECK(is_singular(SphBessel::Y));
  CHECK_FALSE(is_singular(SphBessel::I));
}

TEST_CASE("spherical Bessel derivatives agree with central differences") {
  for (auto kind : {SphBessel::J, SphBessel::Y, SphBessel::I, SphBessel::K}) {
    for (int n = 0; n <= 5; ++n) {
      for (double x : {0.3, 1.0, 3.7, 9.0}) {
        const double h = 1e-4;
        const double fd = (spherical_bessel(kind, n, x - 2 * h) - 8 * spherical_bessel(kind, n, x - h) +
                           8 * spherical_bessel(kind, n, x + h) - spherical_bessel(kind, n, x + 2 * h)) /
                          (12 * h);
        const auto d = spherical_bessel_d(kind, n, x);
        CHECK(d.value == doctest::Approx(spherical_bessel(kind, n, x)).epsilon(1e-14));
        CHECK(std::abs(d.slope - fd) < 1e-8 * std::max(1.0, std::abs(fd)));
      }
    }
  }
}

TEST_CASE("real harmonics: reference values and library oracle") {
  CHECK(eval_ylm({0, 0}, 0.3, 1.2) == doctest::Approx(0.2820947918).epsilon(1e-10));
  CHECK(eval_ylm({1, 0}, 0.0, 0.0) == doctest::Approx(0.4886025119).epsilon(1e-10));
  for (int n = 0; n <= 8; ++n) {
    for (int m = -n; m <= n; ++m) {
      for (double th : {0.0, 0.2, 1.1, 2.0, kPi}) {
        for (double ph : {0.0, 0.7, 4.0}) {
          CHECK(std::abs(eval_ylm({n, m}, th, ph) - oracle_ylm(n, m, th, ph)) < 1e-12);
        }
      }
    }
  }
  CHECK_THROWS_AS(eval_ylm({2, 3}, 0.1, 0.1), InvalidIndex);
  CHECK_THROWS_AS(eval_ylm({-1, 0}, 0.1, 0.1), InvalidIndex);
}

TEST_CASE("harmonic table derivatives") {
  const double h = 1e-5;
  for (double th : {0.3, 1.4, 2.9}) {
    const double ph = 0.8;
    const YlmTable tab(6, th, ph);
    for (int n = 0; n <= 6; ++n) {
      for (int m = -n; m <= n; ++m) {
        const double dth = (eval_ylm({n, m}, th + h, ph) - eval_ylm({n, m}, th - h, ph)) / (2 * h);
        const double dph = (eval_ylm({n, m}, th, ph + h) - eval_ylm({n, m}, th, ph - h)) / (2 * h);
        CHECK(tab.value(n, m) == doctest::Approx(eval_ylm({n, m}, th, ph)).epsilon(1e-13));
        CHECK(std::abs(tab.d_theta(n, m) - dth) < 1e-8);
        CHECK(std::abs(tab.d_phi_over_sin(n, m) - dph / std::sin(th)) < 1e-8);
      }
    }
  }
  // finite on the axis
  const YlmTable pole(5, 0.0, 0.3);
  for (int k = 0; k < sph_count(5); ++k) {
    const SphIndex idx = SphIndex::from_flat(k);
    CHECK(std::isfinite(pole.d_phi_over_sin(idx.n, idx.m)));
  }
}

TEST_CASE("orthonormality under Gauss-Legendre x uniform quadrature") {
  const int lmax = 8;
  const GaussLegendre gl = gauss_legendre(lmax + 1);
  const int nphi = 2 * (lmax + 1);
  std::vector<double> gram(static_cast<std::size_t>(sph_count(lmax) * sph_count(lmax)), 0.0);
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    for (int k = 0; k < nphi; ++k) {
      const YlmTable t(lmax, std::acos(gl.nodes[i]), 2 * kPi * k / nphi);
      const double w = gl.weights[i] * 2 * kPi / nphi;
      for (int a = 0; a < sph_count(lmax); ++a) {
        for (int b = 0; b < sph_count(lmax); ++b) {
          const auto ia = SphIndex::from_flat(a), ib = SphIndex::from_flat(b);
          gram[static_cast<std::size_t>(a * sph_count(lmax) + b)] += w * t.value(ia.n, ia.m) * t.value(ib.n, ib.m);
        }
      }
    }
  }
  double worst = 0.0;
  for (int a = 0; a < sph_count(lmax); ++a) {
    for (int b = 0; b < sph_count(lmax); ++b) {
      worst = std::max(worst, std::abs(gram[static_cast<std::size_t>(a * sph_count(lmax) + b)] - (a == b ? 1.0 : 0.0)));
    }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Gauss-Legendre rules") {
  const auto g3 = gauss_legendre(3);
  CHECK(g3.nodes[0] == doctest::Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(g3.nodes[1] == doctest::Approx(0.0));
  CHECK(g3.weights[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
  for (int n : {1, 2, 5, 12, 48}) {
    const auto g = gauss_legendre(n);
    double w = 0.0, moment = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      w += g.weights[i];
      moment += g.weights[i] * std::pow(g.nodes[i], 2 * n - 2);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(moment == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("index helpers") {
  for (int k = 0; k < sph_count(6); ++k) CHECK(SphIndex::from_flat(k).flat() == k);
  CHECK(sph_count(3) == 16);
  CHECK_NOTHROW((SphIndex{3, -3}.validate()));
  CHECK_THROWS_AS((SphIndex{1, 2}.validate()), InvalidIndex);
}
