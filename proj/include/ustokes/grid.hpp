#pragma once

#include <vector>

#include "ustokes/fields.hpp"

namespace ustokes {

/// Sampling lattice on r1 <= r <= r2: uniform radii, Gauss-Legendre
/// colatitudes (ascending theta), uniform azimuths, and a list of times.
struct ShellGrid {
  std::vector<double> r_nodes;
  std::vector<double> theta_nodes;
  std::vector<double> theta_weights;  ///< Gauss-Legendre weights in cos(theta)
  std::vector<double> phi_nodes;
  std::vector<double> times;

  /// Throws InvalidArgument on bad counts or r1 <= 0 or r1 >= r2.
  static ShellGrid make(double r1, double r2, int nr, int ntheta, int nphi, std::vector<double> times);
  static ShellGrid make_default() { return make(0.5, 1.5, 5, 6, 12, {0.0, 0.1, 0.5}); }

  /// Rebuild with explicit node lists (used for grids read back from files).
  /// Checks that theta_nodes are the Gauss-Legendre nodes and phi_nodes uniform.
  static ShellGrid from_nodes(std::vector<double> r_nodes, std::vector<double> theta_nodes,
                              std::vector<double> phi_nodes, std::vector<double> times);

  double r1() const { return r_nodes.front(); }
  double r2() const { return r_nodes.back(); }
  Shell shell() const { return {r1(), r2()}; }
  int nr() const { return static_cast<int>(r_nodes.size()); }
  int ntheta() const { return static_cast<int>(theta_nodes.size()); }
  int nphi() const { return static_cast<int>(phi_nodes.size()); }
  int ntimes() const { return static_cast<int>(times.size()); }
  std::size_t point_count() const { return r_nodes.size() * theta_nodes.size() * phi_nodes.size(); }

  /// All spatial points, r-major then theta then phi.
  std::vector<Spherical> points() const;
};

}  // namespace ustokes
