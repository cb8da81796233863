#include "ustokes/grid.hpp"

#include <algorithm>
#include <cmath>

#include "ustokes/errors.hpp"

namespace ustokes {

ShellGrid ShellGrid::make(double r1, double r2, int nr, int ntheta, int nphi, std::vector<double> times) {
  if (!(r1 > 0.0) || !(r2 > r1)) throw InvalidArgument("grid needs 0 < r1 < r2");
  if (nr < 1 || ntheta < 1 || nphi < 1) throw InvalidArgument("grid node counts must be positive");
  if (times.empty()) throw InvalidArgument("grid needs at least one time");
  ShellGrid g;
  for (int i = 0; i < nr; ++i) {
    g.r_nodes.push_back(nr == 1 ? r1 : r1 + (r2 - r1) * i / (nr - 1.0));
  }
  // ascending theta means descending cos(theta)
  const GaussLegendre gl = gauss_legendre(ntheta);
  for (int i = ntheta - 1; i >= 0; --i) {
    g.theta_nodes.push_back(std::acos(gl.nodes[static_cast<std::size_t>(i)]));
    g.theta_weights.push_back(gl.weights[static_cast<std::size_t>(i)]);
  }
  for (int k = 0; k < nphi; ++k) g.phi_nodes.push_back(2.0 * kPi * k / nphi);
  g.times = std::move(times);
  return g;
}

ShellGrid ShellGrid::from_nodes(std::vector<double> r_nodes, std::vector<double> theta_nodes,
                                std::vector<double> phi_nodes, std::vector<double> times) {
  std::sort(r_nodes.begin(), r_nodes.end());
  std::sort(theta_nodes.begin(), theta_nodes.end());
  std::sort(phi_nodes.begin(), phi_nodes.end());
  std::sort(times.begin(), times.end());
  if (r_nodes.empty() || theta_nodes.empty() || phi_nodes.empty() || times.empty()) {
    throw InvalidArgument("grid has an empty axis");
  }
  if (!(r_nodes.front() > 0.0)) throw InvalidArgument("grid radii must be positive");
  ShellGrid ref = make(r_nodes.front(), r_nodes.size() > 1 ? r_nodes.back() : 2.0 * r_nodes.front(),
                       static_cast<int>(r_nodes.size()), static_cast<int>(theta_nodes.size()),
                       static_cast<int>(phi_nodes.size()), times);
  for (std::size_t i = 0; i < theta_nodes.size(); ++i) {
    if (std::abs(theta_nodes[i] - ref.theta_nodes[i]) > 1e-9) {
      throw InvalidArgument("theta nodes are not Gauss-Legendre nodes");
    }
  }
  for (std::size_t k = 0; k < phi_nodes.size(); ++k) {
    if (std::abs(phi_nodes[k] - ref.phi_nodes[k]) > 1e-9) throw InvalidArgument("phi nodes are not uniform");
  }
  ref.r_nodes = std::move(r_nodes);
  return ref;
}

std::vector<Spherical> ShellGrid::points() const {
  std::vector<Spherical> pts;
  pts.reserve(point_count());
  for (double r : r_nodes) {
    for (double th : theta_nodes) {
      for (double ph : phi_nodes) pts.push_back({r, th, ph});
    }
  }
  return pts;
}

}  // namespace ustokes
