#pragma once

#include <iosfwd>
#include <vector>

#include "ustokes/grid.hpp"
#include "ustokes/vector_field.hpp"

namespace ustokes {

/// Spherical-harmonic coefficients of one scalar for every (time, radius)
/// slice of a grid, degree-major within a slice.
struct ShtCoefficients {
  int lmax = 0;
  std::vector<double> radii;
  std::vector<double> times;
  std::vector<double> data;

  ShtCoefficients() = default;
  ShtCoefficients(int lmax, std::vector<double> radii, std::vector<double> times);

  double& at(int ti, int ri, SphIndex idx) { return data[offset(ti, ri) + static_cast<std::size_t>(idx.flat())]; }
  double at(int ti, int ri, SphIndex idx) const {
    return data[offset(ti, ri) + static_cast<std::size_t>(idx.flat())];
  }
  std::size_t offset(int ti, int ri) const {
    return (static_cast<std::size_t>(ti) * radii.size() + static_cast<std::size_t>(ri)) *
           static_cast<std::size_t>(sph_count(lmax));
  }
};

/// Coefficients of one sphere of samples, values[i * nphi + k] at
/// (theta_i, phi_k). Exact for band-limited input with degree <= lmax.
/// Throws GridTooCoarse unless ntheta >= lmax + 1 and nphi >= 2 ntheta.
std::vector<double> sht_analyze(const std::vector<double>& values, const ShellGrid& grid, int lmax);

/// Velocity values tabulated on a grid (no evaluator available).
struct TabulatedVelocity {
  ShellGrid grid;
  /// index ((ti * nr + ri) * ntheta + i) * nphi + k
  std::vector<Vec3> values;

  const Vec3& at(int ti, int ri, int i, int k) const {
    return values[((static_cast<std::size_t>(ti) * grid.r_nodes.size() + static_cast<std::size_t>(ri)) *
                       grid.theta_nodes.size() + static_cast<std::size_t>(i)) *
                      grid.phi_nodes.size() + static_cast<std::size_t>(k)];
  }
};

/// Recovered scalars of V = curl curl(r A) + curl(r B):
/// A, B, and D = (1/r) d(r A)/dr (the poloidal tangential amplitude).
struct Decomposition {
  ShtCoefficients A, B, D;
  double monopole_flux = 0.0;   ///< largest n = 0 coefficient of r V_r or r (curl V)_r
  double field_scale = 0.0;     ///< max |V| over the grid
  double divergence_max = 0.0;  ///< max |div V| from the pre-check
};

struct DecomposeOptions {
  /// Divergence pre-check tolerance, relative to max(1, max |V|).
  double div_tol = 1e-6;
  /// Tolerance of the n = 0 coefficients, relative to the field scale.
  double monopole_tol = 1e-6;
};

/// Throws NotDivergenceFree or MonopoleFluxError.
Decomposition recover_AB(const VectorField& v, const ShellGrid& grid, int lmax, const DecomposeOptions& opts = {});

/// Same for tabulated data; vorticity content comes from the toroidal
/// projection, the divergence check from a radial spline of the spectra.
Decomposition recover_AB(const TabulatedVelocity& v, int lmax, const DecomposeOptions& opts = {});

/// Velocity rebuilt from recovered coefficients. t must be one of the grid
/// times and r inside the grid radii, otherwise ExtrapolationError.
Vec3 synthesize(const Decomposition& d, const Vec3& x, double t);

/// Tabulate v on the grid.
TabulatedVelocity tabulate(const VectorField& v, const ShellGrid& grid);

/// CSV with header r,theta,phi,t,vx,vy,vz. Rows in any order; the grid is
/// inferred and must be complete. Throws ParseError / InvalidArgument.
TabulatedVelocity read_samples_csv(std::istream& in);
void write_samples_csv(std::ostream& out, const TabulatedVelocity& v);

}  // namespace ustokes
