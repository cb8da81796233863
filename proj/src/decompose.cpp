#include "ustokes/decompose.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "ustokes/errors.hpp"
#include "ustokes/operators.hpp"

namespace ustokes {

ShtCoefficients::ShtCoefficients(int l, std::vector<double> r, std::vector<double> t)
    : lmax(l), radii(std::move(r)), times(std::move(t)) {
  data.assign(radii.size() * times.size() * static_cast<std::size_t>(sph_count(lmax)), 0.0);
}

namespace {

void check_band_limit(const ShellGrid& grid, int lmax) {
  if (lmax < 0) throw InvalidArgument("lmax must be >= 0");
  if (grid.ntheta() < lmax + 1 || grid.nphi() < 2 * grid.ntheta()) {
    std::ostringstream os;
    os << "grid too coarse for lmax " << lmax << ": need ntheta >= " << lmax + 1 << " and nphi >= 2 ntheta";
    throw GridTooCoarse(os.str());
  }
}

// Harmonic tables and quadrature weights at every angular node.
struct AngularBasis {
  int lmax;
  int ntheta, nphi;
  std::vector<YlmTable> tables;  // i * nphi + k
  std::vector<double> weights;
  std::vector<SphericalFrame> frames;

  AngularBasis(const ShellGrid& grid, int l) : lmax(l), ntheta(grid.ntheta()), nphi(grid.nphi()) {
    check_band_limit(grid, l);
    for (int i = 0; i < ntheta; ++i) {
      for (int k = 0; k < nphi; ++k) {
        const double th = grid.theta_nodes[static_cast<std::size_t>(i)];
        const double ph = grid.phi_nodes[static_cast<std::size_t>(k)];
        tables.emplace_back(lmax, th, ph);
        weights.push_back(grid.theta_weights[static_cast<std::size_t>(i)] * 2.0 * kPi / nphi);
        frames.push_back(SphericalFrame::at(th, ph));
      }
    }
  }
  std::size_t size() const { return tables.size(); }
};

std::vector<double> analyze(const AngularBasis& basis, const std::vector<double>& values) {
  std::vector<double> c(static_cast<std::size_t>(sph_count(basis.lmax)), 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double wf = basis.weights[j] * values[j];
    for (int n = 0; n <= basis.lmax; ++n) {
      for (int m = -n; m <= n; ++m) c[static_cast<std::size_t>(SphIndex{n, m}.flat())] += wf * basis.tables[j].value(n, m);
    }
  }
  return c;
}

// Poloidal and toroidal tangential projections, each divided by n(n+1).
void analyze_tangential(const AngularBasis& basis, const std::vector<Vec3>& local, std::vector<double>& pol,
                        std::vector<double>& tor) {
  pol.assign(static_cast<std::size_t>(sph_count(basis.lmax)), 0.0);
  tor = pol;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double w = basis.weights[j];
    const double vt = local[j].y, vp = local[j].z;
    for (int n = 1; n <= basis.lmax; ++n) {
      for (int m = -n; m <= n; ++m) {
        const double yt = basis.tables[j].d_theta(n, m);
        const double yp = basis.tables[j].d_phi_over_sin(n, m);
        const auto f = static_cast<std::size_t>(SphIndex{n, m}.flat());
        pol[f] += w * (vt * yt + vp * yp);
        tor[f] += w * (vt * yp - vp * yt);
      }
    }
  }
  for (int n = 1; n <= basis.lmax; ++n) {
    for (int m = -n; m <= n; ++m) {
      const auto f = static_cast<std::size_t>(SphIndex{n, m}.flat());
      pol[f] /= n * (n + 1.0);
      tor[f] /= n * (n + 1.0);
    }
  }
}

// Not-a-knot cubic spline through (x_i, y_i); parabola for 3 nodes, line for 2.
class Spline {
 public:
  Spline(const std::vector<double>& x, std::vector<double> y) : x_(x), y_(std::move(y)), m_(x.size(), 0.0) {
    const std::size_t n = x_.size();
    if (n < 3) return;
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    auto h = [&](std::size_t i) { return x_[i + 1] - x_[i]; };
    for (std::size_t i = 1; i + 1 < n; ++i) {
      a[i][i - 1] = h(i - 1);
      a[i][i] = 2.0 * (h(i - 1) + h(i));
      a[i][i + 1] = h(i);
      a[i][n] = 6.0 * ((y_[i + 1] - y_[i]) / h(i) - (y_[i] - y_[i - 1]) / h(i - 1));
    }
    if (n == 3) {
      a[0][0] = 1.0;
      a[0][1] = -1.0;
      a[2][1] = 1.0;
      a[2][2] = -1.0;
    } else {
      a[0][0] = h(1);
      a[0][1] = -(h(0) + h(1));
      a[0][2] = h(0);
      a[n - 1][n - 3] = h(n - 2);
      a[n - 1][n - 2] = -(h(n - 3) + h(n - 2));
      a[n - 1][n - 1] = h(n - 3);
    }
    // Gaussian elimination with partial pivoting.
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      }
      std::swap(a[c], a[piv]);
      for (std::size_t r = c + 1; r < n; ++r) {
        const double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    for (std::size_t c = n; c-- > 0;) {
      double s = a[c][n];
      for (std::size_t k = c + 1; k < n; ++k) s -= a[c][k] * m_[k];
      m_[c] = s / a[c][c];
    }
  }

  ValueAndSlope eval(double x) const {
    if (x_.size() == 1) return {y_[0], 0.0};
    std::size_t i = static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin());
    i = std::clamp<std::size_t>(i, 1, x_.size() - 1) - 1;
    const double h = x_[i + 1] - x_[i];
    const double a = x_[i + 1] - x, b = x - x_[i];
    const double c0 = y_[i] / h - m_[i] * h / 6.0;
    const double c1 = y_[i + 1] / h - m_[i + 1] * h / 6.0;
    return {m_[i] * a * a * a / (6.0 * h) + m_[i + 1] * b * b * b / (6.0 * h) + c0 * a + c1 * b,
            -m_[i] * a * a / (2.0 * h) + m_[i + 1] * b * b / (2.0 * h) - c0 + c1};
  }

 private:
  std::vector<double> x_, y_, m_;
};

void check_monopole(const Decomposition& d, const DecomposeOptions& opts) {
  if (d.monopole_flux > opts.monopole_tol * d.field_scale && d.monopole_flux > 0.0) {
    std::ostringstream os;
    os << "n = 0 content: |(r V_r)_00| or |(r curl V_r)_00| = " << d.monopole_flux << " is not representable by curl curl(r A) + curl(r B)";
    throw MonopoleFluxError(os.str());
  }
}


// d/dr of samples at node `at`, from Fornberg weights on up to 7 neighbouring nodes.
double node_derivative(const std::vector<double>& x, const std::vector<double>& y, std::size_t at) {
  const std::size_t width = std::min<std::size_t>(7, x.size());
  const std::size_t lo = std::min(at >= width / 2 ? at - width / 2 : 0, x.size() - width);
  const double x0 = x[at];
  // c[j][k]: weight of node lo + j for the k-th derivative
  std::vector<std::array<double, 2>> c(width, {0.0, 0.0});
  c[0][0] = 1.0;
  double c1 = 1.0;
  for (std::size_t i = 1; i < width; ++i) {
    double c2 = 1.0;
    const double c4 = x[lo + i - 1] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[lo + i] - x[lo + j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - c4 * c[i - 1][1]) / c2;
        c[i][0] = -c1 * c4 * c[i - 1][0] / c2;
      }
      c[j][1] = ((x[lo + i] - x0) * c[j][1] - c[j][0]) / c3;
      c[j][0] = (x[lo + i] - x0) * c[j][0] / c3;
    }
    c1 = c2;
  }
  double d = 0.0;
  for (std::size_t j = 0; j < width; ++j) d += c[j][1] * y[lo + j];
  return d;
}

}  // namespace

std::vector<double> sht_analyze(const std::vector<double>& values, const ShellGrid& grid, int lmax) {
  const AngularBasis basis(grid, lmax);
  if (values.size() != basis.size()) throw InvalidArgument("sample count does not match the grid");
  return analyze(basis, values);
}

Decomposition recover_AB(const VectorField& v, const ShellGrid& grid, int lmax, const DecomposeOptions& opts) {
  const AngularBasis basis(grid, lmax);
  const VectorEvaluator eval = v.evaluator();
  const bool analytic = v.is_analytic();
  const VectorField vort = analytic ? exact_curl(v) : VectorField();

  Decomposition d;
  d.A = ShtCoefficients(lmax, grid.r_nodes, grid.times);
  d.B = d.A;
  d.D = d.A;

  // Divergence pre-check and field scale.
  for (double t : grid.times) {
    for (const auto& p : grid.points()) {
      const Vec3 x = to_cartesian(p);
      d.field_scale = std::max(d.field_scale, norm(eval(x, t)));
      d.divergence_max = std::max(d.divergence_max, std::abs(fd_divergence(eval, x, t)));
    }
  }
  if (d.divergence_max > opts.div_tol * std::max(1.0, d.field_scale)) {
    std::ostringstream os;
    os << "field is not divergence-free: max |div V| = " << d.divergence_max;
    throw NotDivergenceFree(os.str());
  }

  std::vector<Vec3> local(basis.size());
  std::vector<double> rv(basis.size()), rw(basis.size()), pol, tor;
  for (int ti = 0; ti < grid.ntimes(); ++ti) {
    const double t = grid.times[static_cast<std::size_t>(ti)];
    for (int ri = 0; ri < grid.nr(); ++ri) {
      const double r = grid.r_nodes[static_cast<std::size_t>(ri)];
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const int i = static_cast<int>(j) / basis.nphi, k = static_cast<int>(j) % basis.nphi;
        const Spherical p{r, grid.theta_nodes[static_cast<std::size_t>(i)], grid.phi_nodes[static_cast<std::size_t>(k)]};
        const Vec3 x = to_cartesian(p);
        local[j] = basis.frames[j].to_local(eval(x, t));
        rv[j] = r * local[j].x;
        const Vec3 w = analytic ? vort.eval(p, t) : fd_curl(eval, x, t);
        rw[j] = r * dot(w, basis.frames[j].e_r);
      }
      const auto q = analyze(basis, rv);
      const auto b = analyze(basis, rw);
      analyze_tangential(basis, local, pol, tor);
      d.monopole_flux = std::max({d.monopole_flux, std::abs(q[0]), std::abs(b[0])});
      for (int n = 1; n <= lmax; ++n) {
        for (int m = -n; m <= n; ++m) {
          const SphIndex idx{n, m};
          const auto f = static_cast<std::size_t>(idx.flat());
          d.A.at(ti, ri, idx) = q[f] / (n * (n + 1.0));
          d.B.at(ti, ri, idx) = b[f] / (n * (n + 1.0));
          d.D.at(ti, ri, idx) = pol[f];
        }
      }
    }
  }
  check_monopole(d, opts);
  return d;
}

Decomposition recover_AB(const TabulatedVelocity& v, int lmax, const DecomposeOptions& opts) {
  const ShellGrid& grid = v.grid;
  const AngularBasis basis(grid, lmax);
  Decomposition d;
  d.A = ShtCoefficients(lmax, grid.r_nodes, grid.times);
  d.B = d.A;
  d.D = d.A;
  ShtCoefficients vr = d.A;  // spectra of r^2 V_r, for the divergence check
  for (const auto& val : v.values) d.field_scale = std::max(d.field_scale, norm(val));

  std::vector<Vec3> local(basis.size());
  std::vector<double> rv(basis.size()), pol, tor;
  for (int ti = 0; ti < grid.ntimes(); ++ti) {
    for (int ri = 0; ri < grid.nr(); ++ri) {
      const double r = grid.r_nodes[static_cast<std::size_t>(ri)];
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const int i = static_cast<int>(j) / basis.nphi, k = static_cast<int>(j) % basis.nphi;
        local[j] = basis.frames[j].to_local(v.at(ti, ri, i, k));
        rv[j] = r * local[j].x;
      }
      const auto q = analyze(basis, rv);
      analyze_tangential(basis, local, pol, tor);
      d.monopole_flux = std::max(d.monopole_flux, std::abs(q[0]));
      for (int n = 0; n <= lmax; ++n) {
        for (int m = -n; m <= n; ++m) {
          const SphIndex idx{n, m};
          const auto f = static_cast<std::size_t>(idx.flat());
          vr.at(ti, ri, idx) = r * q[f];
          if (n == 0) continue;
          d.A.at(ti, ri, idx) = q[f] / (n * (n + 1.0));
          d.B.at(ti, ri, idx) = tor[f];
          d.D.at(ti, ri, idx) = pol[f];
        }
      }
    }
  }

  // div V per mode: (1/r^2) d(r^2 V_r)/dr - n(n+1) D / r
  if (grid.nr() >= 2) {
    for (int ti = 0; ti < grid.ntimes(); ++ti) {
      for (int n = 0; n <= lmax; ++n) {
        for (int m = -n; m <= n; ++m) {
          const SphIndex idx{n, m};
          std::vector<double> ys;
          for (int ri = 0; ri < grid.nr(); ++ri) ys.push_back(vr.at(ti, ri, idx));
          const double ymax = std::sqrt((2.0 * n + 1.0) / (2.0 * kPi));
          for (int ri = 0; ri < grid.nr(); ++ri) {
            const double r = grid.r_nodes[static_cast<std::size_t>(ri)];
            const double slope = node_derivative(grid.r_nodes, ys, static_cast<std::size_t>(ri));
            const double div = slope / (r * r) - n * (n + 1.0) * d.D.at(ti, ri, idx) / r;
            d.divergence_max = std::max(d.divergence_max, std::abs(div) * ymax);
          }
        }
      }
    }
  }
  if (d.divergence_max > opts.div_tol * std::max(1.0, d.field_scale)) {
    std::ostringstream os;
    os << "field is not divergence-free: spectral |div V| up to " << d.divergence_max;
    throw NotDivergenceFree(os.str());
  }
  check_monopole(d, opts);
  return d;
}

Vec3 synthesize(const Decomposition& d, const Vec3& x, double t) {
  const auto& times = d.A.times;
  const auto& radii = d.A.radii;
  const int lmax = d.A.lmax;
  int ti = -1;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) ti = static_cast<int>(i);
  }
  if (ti < 0) throw ExtrapolationError("time is not one of the sampled times");
  const Spherical p = to_spherical(x);
  const double eps = 1e-12 * std::max(1.0, radii.back());
  if (p.r < radii.front() - eps || p.r > radii.back() + eps) {
    throw ExtrapolationError("radius outside the sampled shell");
  }
  int node = -1;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (std::abs(radii[i] - p.r) <= eps) node = static_cast<int>(i);
  }

  const YlmTable ylm(lmax, p.theta, p.phi);
  Vec3 local;
  for (int n = 1; n <= lmax; ++n) {
    for (int m = -n; m <= n; ++m) {
      const SphIndex idx{n, m};
      double a, dd, b;
      if (node >= 0) {
        a = d.A.at(ti, node, idx);
        dd = d.D.at(ti, node, idx);
        b = d.B.at(ti, node, idx);
      } else {
        // cubic Hermite for A using A' = D - A / r; spline for B
        const std::size_t hi = static_cast<std::size_t>(std::upper_bound(radii.begin(), radii.end(), p.r) - radii.begin());
        const std::size_t lo = hi - 1;
        const double r0 = radii[lo], r1 = radii[hi], h = r1 - r0, s = (p.r - r0) / h;
        const double a0 = d.A.at(ti, static_cast<int>(lo), idx), a1 = d.A.at(ti, static_cast<int>(hi), idx);
        const double m0 = h * (d.D.at(ti, static_cast<int>(lo), idx) - a0 / r0);
        const double m1 = h * (d.D.at(ti, static_cast<int>(hi), idx) - a1 / r1);
        const double s2 = s * s, s3 = s2 * s;
        a = (2 * s3 - 3 * s2 + 1) * a0 + (s3 - 2 * s2 + s) * m0 + (-2 * s3 + 3 * s2) * a1 + (s3 - s2) * m1;
        const double da = ((6 * s2 - 6 * s) * a0 + (3 * s2 - 4 * s + 1) * m0 + (-6 * s2 + 6 * s) * a1 + (3 * s2 - 2 * s) * m1) / h;
        dd = a / p.r + da;
        std::vector<double> bs;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) bs.push_back(d.B.at(ti, static_cast<int>(ri), idx));
        b = Spline(radii, bs).eval(p.r).value;
      }
      const double y = ylm.value(n, m), yt = ylm.d_theta(n, m), yp = ylm.d_phi_over_sin(n, m);
      local.x += n * (n + 1.0) * a * y / p.r;
      local.y += dd * yt + b * yp;
      local.z += dd * yp - b * yt;
    }
  }
  return SphericalFrame::at(p.theta, p.phi).to_cartesian(local.x, local.y, local.z);
}

TabulatedVelocity tabulate(const VectorField& v, const ShellGrid& grid) {
  TabulatedVelocity out;
  out.grid = grid;
  const auto pts = grid.points();
  out.values.reserve(pts.size() * grid.times.size());
  for (double t : grid.times) {
    for (const auto& p : pts) out.values.push_back(v.eval(p, t));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || std::abs(x - out.back()) > 1e-10 * std::max(1.0, std::abs(x))) out.push_back(x);
  }
  return out;
}

std::size_t locate(const std::vector<double>& axis, double x) {
  auto it = std::lower_bound(axis.begin(), axis.end(), x - 1e-10 * std::max(1.0, std::abs(x)));
  return static_cast<std::size_t>(it - axis.begin());
}

}  // namespace

TabulatedVelocity read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty sample file");
  line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r'; }), line.end());
  if (line != "r,theta,phi,t,vx,vy,vz") throw ParseError("sample file header must be r,theta,phi,t,vx,vy,vz");

  std::vector<std::array<double, 7>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::array<double, 7> row{};
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= 7) throw ParseError("too many columns on line " + std::to_string(lineno));
      try {
        std::size_t used = 0;
        row[static_cast<std::size_t>(c)] = std::stod(cell, &used);
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + cell + "' on line " + std::to_string(lineno));
      }
      ++c;
    }
    if (c != 7) throw ParseError("expected 7 columns on line " + std::to_string(lineno));
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError("sample file has no data rows");

  std::vector<double> cols[4];
  for (const auto& r : rows) {
    for (int c = 0; c < 4; ++c) cols[c].push_back(r[static_cast<std::size_t>(c)]);
  }
  const auto rs = distinct(cols[0]), ths = distinct(cols[1]), phs = distinct(cols[2]), ts = distinct(cols[3]);
  TabulatedVelocity out;
  out.grid = ShellGrid::from_nodes(rs, ths, phs, ts);
  const std::size_t total = rs.size() * ths.size() * phs.size() * ts.size();
  if (rows.size() != total) throw InvalidArgument("samples do not form a complete grid");
  out.values.assign(total, Vec3{});
  std::vector<char> seen(total, 0);
  for (const auto& r : rows) {
    const std::size_t idx = ((locate(ts, r[3]) * rs.size() + locate(rs, r[0])) * ths.size() + locate(ths, r[1])) *
                                phs.size() + locate(phs, r[2]);
    if (seen[idx]) throw InvalidArgument("duplicate grid sample");
    seen[idx] = 1;
    out.values[idx] = {r[4], r[5], r[6]};
  }
  return out;
}

void write_samples_csv(std::ostream& out, const TabulatedVelocity& v) {
  const auto& g = v.grid;
  out << "r,theta,phi,t,vx,vy,vz\n" << std::setprecision(17);
  for (int ti = 0; ti < g.ntimes(); ++ti) {
    for (int ri = 0; ri < g.nr(); ++ri) {
      for (int i = 0; i < g.ntheta(); ++i) {
        for (int k = 0; k < g.nphi(); ++k) {
          const Vec3& val = v.at(ti, ri, i, k);
          out << g.r_nodes[static_cast<std::size_t>(ri)] << ',' << g.theta_nodes[static_cast<std::size_t>(i)] << ','
              << g.phi_nodes[static_cast<std::size_t>(k)] << ',' << g.times[static_cast<std::size_t>(ti)] << ','
              << val.x << ',' << val.y << ',' << val.z << '\n';
        }
      }
    }
  }
}

}  // namespace ustokes
