#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ustokes/constructors.hpp"
#include "ustokes/grid.hpp"
#include "ustokes/operators.hpp"

namespace ustokes {

/// One sampled residual. Vector residuals are measured by their Euclidean norm.
struct ResidualEntry {
  std::string name;
  std::string path;  ///< "exact" or "fd"
  double max_abs = 0.0;
  double rms = 0.0;
  Spherical worst_point;
  double worst_time = 0.0;
  std::vector<double> max_per_time;  ///< parallel to the grid times
  double tol = 0.0;
  bool pass = true;
};

struct ResidualReport {
  std::vector<ResidualEntry> entries;

  bool pass() const;
  /// Entry by name and path; nullptr if absent.
  const ResidualEntry* find(const std::string& name, const std::string& path = "exact") const;
  void append(const ResidualReport& other);
};

struct VerifyOptions {
  double exact_tol = 1e-8;
  double fd_tol = 1e-4;
  bool run_fd = true;
  StencilSpec space = StencilSpec::space();
  StencilSpec time = StencilSpec::time();
  /// Nested stencils (condition: outer heat operator over an FD curl;
  /// biharmonic: two heat/Laplacian layers) use high-order weights with steps
  /// proportional to |x|, so fields steepening towards the inner radius stay resolved.
  StencilSpec condition_inner = {1e-3, 6, false, true};
  StencilSpec condition_outer = {1e-2, 6, false, true};
  StencilSpec biharmonic_inner = {2e-2, 8, false, true};
  StencilSpec biharmonic_outer = {2e-2, 8, false, true};
  /// The biharmonic FD entry divides round-off by h^4, so its tolerance is
  /// fd_tol * max(1, max |V| over the grid).
  bool biharmonic_fd_scaled = true;
};

/// Pressure either in mode form (plus constant) or as a black box.
struct Pressure {
  std::optional<ScalarField> field;
  double offset = 0.0;
  std::function<double(const Vec3&, double)> sampled;

  static Pressure of(ScalarField f, double offset = 0.0) { return {std::move(f), offset, {}}; }
  static Pressure of(const FlowSolution& s) { return of(s.pressure, s.pressure_offset); }
  static Pressure black_box(std::function<double(const Vec3&, double)> f) { return {std::nullopt, 0.0, std::move(f)}; }

  bool analytic() const { return field.has_value(); }
  double eval(const Vec3& x, double t) const { return field ? offset + field->eval(x, t) : sampled(x, t); }
};

/// rho dV/dt + grad p - mu lap V - f. Exact entry when V, p and f are
/// mode-based; FD entry unless disabled.
ResidualReport momentum_residual(const VectorField& V, const Pressure& p, const VectorField& f,
                                 const ShellGrid& grid, const FluidParams& params, const VerifyOptions& opts = {});
/// div V
ResidualReport continuity_residual(const VectorField& V, const ShellGrid& grid, const VerifyOptions& opts = {});
/// lap (lap - (1/nu) d/dt) V
ResidualReport biharmonic_heat_residual(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                        const VerifyOptions& opts = {});
/// (lap - (1/nu) d/dt) curl V
ResidualReport condition_residual(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                  const VerifyOptions& opts = {});

/// Momentum and continuity always; biharmonic and condition when the
/// solution carries no body force.
ResidualReport verify_flow(const FlowSolution& solution, const ShellGrid& grid, const VerifyOptions& opts = {});
/// Same with an explicit velocity/pressure/force triple.
ResidualReport verify_flow(const VectorField& V, const Pressure& p, const VectorField& f, const ShellGrid& grid,
                           const FluidParams& params, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Pressure recovery

struct RecoverOptions {
  /// Gauss-Legendre nodes per panel and panels per path leg.
  int nodes = 10;
  int panels = 4;
  /// Loop tolerance is this times mu times max |V| over the grid.
  double loop_rel_tol = 1e-6;
  /// Consistency check between paths is run on every `check_stride`-th grid point.
  int check_stride = 7;
  unsigned seed = 12345;
};

/// Pressure recovered by line integration of G = mu (lap - (1/nu) d/dt) V,
/// normalised so that p(base) = 0 at every time.
class RecoveredPressure {
 public:
  RecoveredPressure(VectorEvaluator gradient, Vec3 base, Shell shell, RecoverOptions opts);

  /// Line integral of G from the base point to x (spherical staircase path).
  double at(const Vec3& x, double t) const;
  /// Same along the three path families: r-theta-phi, phi-theta-r, random smooth.
  double along(int path, const Vec3& x, double t) const;

  const Vec3& base() const { return base_; }
  std::vector<double> times;
  std::vector<Spherical> points;
  std::vector<double> values;  ///< values[ti * points.size() + j]

 private:
  VectorEvaluator gradient_;
  Vec3 base_;
  Shell shell_;
  RecoverOptions opts_;
};

/// Closed-loop integrals of G over circles of radius clamp(1, r1, r2) in the
/// xy, xz and yz planes (counter-clockwise about +z, +y, +x).
std::vector<double> loop_integrals(const VectorEvaluator& gradient, const Shell& shell, double t, int nodes = 128);

/// G = mu (lap - (1/nu) d/dt) V, exact for mode-based V.
VectorEvaluator pressure_gradient_candidate(const VectorField& V, const FluidParams& params,
                                            const VerifyOptions& opts = {});

/// Throws PathDependenceError (carrying the largest loop integral) when G is
/// not a gradient.
RecoveredPressure recover_pressure(const VectorField& V, const ShellGrid& grid, const FluidParams& params,
                                   std::optional<Vec3> base_point = std::nullopt, const RecoverOptions& opts = {});

// ---------------------------------------------------------------------------

/// V = (y, -x, 0) exp(nu t), i.e. curl(r B) with B = -z exp(nu t): divergence
/// free and satisfying lap (lap - (1/nu) d/dt) V = 0, but no pressure exists.
VectorField counterexample_velocity(const FluidParams& params);

}  // namespace ustokes
