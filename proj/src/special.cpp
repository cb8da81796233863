#include "ustokes/special.hpp"

#include <cmath>
#include <string>

#include "ustokes/errors.hpp"
#include "ustokes/geometry.hpp"

namespace ustokes {

void SphIndex::validate() const {
  if (n < 0 || m < -n || m > n) {
    throw InvalidIndex("spherical harmonic index out of range: n=" + std::to_string(n) +
                       " m=" + std::to_string(m));
  }
}

SphIndex SphIndex::from_flat(int k) {
  const int n = static_cast<int>(std::sqrt(static_cast<double>(k)));
  return {n, k - n * n - n};
}

namespace {

// x^n/(2n+1)!! * sum_k (sign x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))
// sign = -1 gives j_n, sign = +1 gives i_n.
double bessel_series(int n, double x, double sign) {
  double lead = 1.0;
  for (int k = 1; k <= n; ++k) lead *= x / (2.0 * k + 1.0);
  const double q = sign * 0.5 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 4000; ++k) {
    term *= q / (k * (2.0 * n + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

// Values for orders 0..nmax.
std::vector<double> bessel_orders(SphBessel kind, int nmax, double x) {
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("spherical Bessel argument must be >= 0");
  std::vector<double> f(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    if (is_singular(kind)) throw DomainError("spherical Bessel y/k singular at x = 0");
    f[0] = 1.0;
    return f;
  }
  switch (kind) {
    case SphBessel::J:
      if (x < nmax + 1.0) {
        for (int n = 0; n <= nmax; ++n) f[n] = bessel_series(n, x, -1.0);
      } else {
        f[0] = std::sin(x) / x;
        if (nmax >= 1) f[1] = std::sin(x) / (x * x) - std::cos(x) / x;
        for (int n = 1; n < nmax; ++n) f[n + 1] = (2.0 * n + 1.0) / x * f[n] - f[n - 1];
      }
      break;
    case SphBessel::I:
      for (int n = 0; n <= nmax; ++n) f[n] = bessel_series(n, x, +1.0);
      break;
    case SphBessel::Y:
      f[0] = -std::cos(x) / x;
      if (nmax >= 1) f[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
      for (int n = 1; n < nmax; ++n) f[n + 1] = (2.0 * n + 1.0) / x * f[n] - f[n - 1];
      break;
    case SphBessel::K: {
      const double e = std::exp(-x);
      f[0] = e / x;
      if (nmax >= 1) f[1] = e * (1.0 / x + 1.0 / (x * x));
      for (int n = 1; n < nmax; ++n) f[n + 1] = f[n - 1] + (2.0 * n + 1.0) / x * f[n];
      break;
    }
  }
  return f;
}

}  // namespace

double spherical_bessel(SphBessel kind, int n, double x) {
  if (n < 0) throw InvalidIndex("spherical Bessel order must be >= 0");
  return bessel_orders(kind, n, x)[n];
}

ValueAndSlope spherical_bessel_d(SphBessel kind, int n, double x) {
  if (n < 0) throw InvalidIndex("spherical Bessel order must be >= 0");
  const auto f = bessel_orders(kind, n + 1, x);
  ValueAndSlope out{f[n], 0.0};
  if (n == 0) {
    out.slope = kind == SphBessel::I ? f[1] : -f[1];
    return out;
  }
  const double lo = n * f[n - 1];
  const double hi = (n + 1.0) * f[n + 1];
  switch (kind) {
    case SphBessel::J:
    case SphBessel::Y:
      out.slope = (lo - hi) / (2.0 * n + 1.0);
      break;
    case SphBessel::I:
      out.slope = (lo + hi) / (2.0 * n + 1.0);
      break;
    case SphBessel::K:
      out.slope = -(lo + hi) / (2.0 * n + 1.0);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------

YlmTable::YlmTable(int lmax, double theta, double phi) : lmax_(lmax) {
  if (lmax < 0) throw InvalidIndex("lmax must be >= 0");
  const int count = sph_count(lmax);
  y_.assign(count, 0.0);
  dth_.assign(count, 0.0);
  dph_.assign(count, 0.0);

  const double x = std::cos(theta);
  const double s = std::sin(theta);
  const auto at = [lmax](int n, int m) { return m * (lmax + 1) + n; };
  // p = P_n^m (no Condon-Shortley phase), q = P_n^m / sin(theta) for m >= 1.
  std::vector<double> p((lmax + 1) * (lmax + 1), 0.0), q(p.size(), 0.0);
  double dfact = 1.0;  // (2m-1)!!
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) dfact *= 2.0 * m - 1.0;
    const double qmm = m > 0 ? dfact * std::pow(s, m - 1) : 0.0;
    const double pmm = m > 0 ? qmm * s : 1.0;
    p[at(m, m)] = pmm;
    q[at(m, m)] = qmm;
    if (m + 1 <= lmax) {
      p[at(m + 1, m)] = x * (2.0 * m + 1.0) * pmm;
      q[at(m + 1, m)] = x * (2.0 * m + 1.0) * qmm;
    }
    for (int n = m + 2; n <= lmax; ++n) {
      p[at(n, m)] = ((2.0 * n - 1.0) * x * p[at(n - 1, m)] - (n + m - 1.0) * p[at(n - 2, m)]) / (n - m);
      q[at(n, m)] = ((2.0 * n - 1.0) * x * q[at(n - 1, m)] - (n + m - 1.0) * q[at(n - 2, m)]) / (n - m);
    }
  }

  for (int n = 0; n <= lmax; ++n) {
    for (int m = 0; m <= n; ++m) {
      const double norm = std::sqrt((2.0 * n + 1.0) / (4.0 * kPi) *
                                    std::exp(std::lgamma(n - m + 1.0) - std::lgamma(n + m + 1.0)));
      double dp = 0.0;
      if (m == 0) {
        dp = n >= 1 ? -p[at(n, 1)] : 0.0;
      } else {
        const double q_prev = n - 1 >= m ? q[at(n - 1, m)] : 0.0;
        dp = n * x * q[at(n, m)] - (n + m) * q_prev;
      }
      if (m == 0) {
        const int k = SphIndex{n, 0}.flat();
        y_[k] = norm * p[at(n, 0)];
        dth_[k] = norm * dp;
        dph_[k] = 0.0;
        continue;
      }
      const double c = std::sqrt(2.0) * norm;
      const double cm = std::cos(m * phi), sm = std::sin(m * phi);
      const int kc = SphIndex{n, m}.flat();
      const int ks = SphIndex{n, -m}.flat();
      y_[kc] = c * p[at(n, m)] * cm;
      dth_[kc] = c * dp * cm;
      dph_[kc] = -c * m * q[at(n, m)] * sm;
      y_[ks] = c * p[at(n, m)] * sm;
      dth_[ks] = c * dp * sm;
      dph_[ks] = c * m * q[at(n, m)] * cm;
    }
  }
}

double eval_ylm(SphIndex idx, double theta, double phi) {
  idx.validate();
  return YlmTable(idx.n, theta, phi).value(idx.n, idx.m);
}

// ---------------------------------------------------------------------------

GaussLegendre gauss_legendre(int count) {
  if (count < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  GaussLegendre rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (count == 1) p1 = z, p0 = 1.0;
      dp = count * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count == 1 ? 1.0 : count * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[count - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[count - 1 - i] = w;
  }
  return rule;
}

}  // namespace ustokes
