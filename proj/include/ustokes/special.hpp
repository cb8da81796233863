#pragma once

#include <vector>

namespace ustokes {

/// Degree/order of a real spherical harmonic.
struct SphIndex {
  int n = 0;
  int m = 0;

  /// Throws InvalidIndex unless 0 <= n and |m| <= n.
  void validate() const;
  /// Flat position in a degree-major table: n^2 + n + m.
  int flat() const { return n * n + n + m; }
  static SphIndex from_flat(int k);

  friend bool operator==(const SphIndex&, const SphIndex&) = default;
  friend auto operator<=>(const SphIndex&, const SphIndex&) = default;
};

/// Number of (n, m) pairs with n <= lmax.
inline int sph_count(int lmax) { return (lmax + 1) * (lmax + 1); }

// ---------------------------------------------------------------------------
// Spherical Bessel functions

/// j, y: spherical Bessel of first/second kind. i, k: modified spherical
/// Bessel, with k_n(x) = sqrt(2/(pi x)) K_{n+1/2}(x) so that k_0 = e^{-x}/x.
enum class SphBessel { J, Y, I, K };

/// Value of the spherical Bessel function of the given kind.
/// Throws DomainError for x = 0 with kinds y, k and for x < 0.
double spherical_bessel(SphBessel kind, int n, double x);

struct ValueAndSlope {
  double value = 0.0;
  double slope = 0.0;
};

/// Value and first derivative with respect to x.
ValueAndSlope spherical_bessel_d(SphBessel kind, int n, double x);

/// True for kinds singular at the origin.
constexpr bool is_singular(SphBessel kind) { return kind == SphBessel::Y || kind == SphBessel::K; }

// ---------------------------------------------------------------------------
// Real spherical harmonics
//
// Orthonormal on the unit sphere, no Condon-Shortley phase:
//   Y_n^0  = N_n0 P_n(cos theta)
//   Y_n^m  = sqrt(2) N_nm P_n^m(cos theta) cos(m phi),   m > 0
//   Y_n^-m = sqrt(2) N_nm P_n^m(cos theta) sin(m phi),   m > 0
// with N_nm = sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!).

/// Value of Y_nm. Throws InvalidIndex if |m| > n or n < 0.
double eval_ylm(SphIndex idx, double theta, double phi);

/// Y, dY/dtheta and (1/sin theta) dY/dphi for every (n, m) with n <= lmax at a
/// single direction. The last quantity is finite on the polar axis.
class YlmTable {
 public:
  YlmTable(int lmax, double theta, double phi);

  int lmax() const { return lmax_; }
  double value(int n, int m) const { return y_[SphIndex{n, m}.flat()]; }
  double d_theta(int n, int m) const { return dth_[SphIndex{n, m}.flat()]; }
  double d_phi_over_sin(int n, int m) const { return dph_[SphIndex{n, m}.flat()]; }

 private:
  int lmax_;
  std::vector<double> y_, dth_, dph_;
};

// ---------------------------------------------------------------------------

/// Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int count);

}  // namespace ustokes
