// ustokes: construct, verify and decompose exact unsteady Stokes flows.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "ustokes/constructors.hpp"
#include "ustokes/decompose.hpp"
#include "ustokes/errors.hpp"
#include "ustokes/heatkernel.hpp"
#include "ustokes/io.hpp"
#include "ustokes/verify.hpp"

using namespace ustokes;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Common {
  std::string grid_text;
  std::vector<double> times{0.0, 0.1, 0.5};
  double tol = 1e-8;
  double fd_tol = 1e-4;
  int lmax = 4;
  unsigned seed = 12345;
  std::string out;
  bool json_out = false;
};

/// "r1=0.5,r2=1.5,nr=5,ntheta=6,nphi=12"; missing keys keep their defaults.
ShellGrid parse_grid(const std::string& text, const std::vector<double>& times) {
  std::map<std::string, double> kv{{"r1", 0.5}, {"r2", 1.5}, {"nr", 5}, {"ntheta", 6}, {"nphi", 12}};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("grid entry '" + item + "' is not key=value");
    const std::string key = item.substr(0, eq);
    if (!kv.count(key)) throw ParseError("unknown grid key '" + key + "'");
    try {
      kv[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("bad grid value in '" + item + "'");
    }
  }
  for (const char* k : {"nr", "ntheta", "nphi"}) {
    if (kv[k] != std::floor(kv[k])) throw ParseError(std::string("grid ") + k + " must be an integer");
  }
  return ShellGrid::make(kv["r1"], kv["r2"], static_cast<int>(kv["nr"]), static_cast<int>(kv["ntheta"]),
                         static_cast<int>(kv["nphi"]), times);
}

std::vector<double> parse_list(const std::string& text, std::size_t expected = 0) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ParseError("bad number '" + item + "'");
    }
  }
  if (expected && out.size() != expected) throw ParseError("expected " + std::to_string(expected) + " numbers in '" + text + "'");
  return out;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw ParseError("cannot write '" + c.out + "'");
  f << text;
}

template <class... Types>
std::string first_match(const Error& e, const char* const (&names)[sizeof...(Types)]) {
  const bool hits[] = {dynamic_cast<const Types*>(&e) != nullptr...};
  for (std::size_t k = 0; k < sizeof...(Types); ++k) {
    if (hits[k]) return names[k];
  }
  return "InputError";
}

std::string error_type(const Error& e) {
  static const char* const names[] = {"SpecError",       "ParseError",        "InvalidIndex",
                                      "DomainError",     "InvalidArgument",   "ResonanceError",
                                      "PreconditionError", "MonopoleError",   "QuadratureBudgetError",
                                      "GridTooCoarse",   "ExtrapolationError", "NotAnalytic"};
  return first_match<SpecError, ParseError, InvalidIndex, DomainError, InvalidArgument, ResonanceError,
                     PreconditionError, MonopoleError, QuadratureBudgetError, GridTooCoarse, ExtrapolationError,
                     NotAnalytic>(e, names);
}

std::string human_report(const ResidualReport& r) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& e : r.entries) {
    os << std::left << std::setw(12) << e.name << std::setw(7) << e.path << "max " << std::setw(14) << e.max_abs
       << "rms " << std::setw(14) << e.rms << "tol " << std::setw(14) << e.tol << (e.pass ? "PASS" : "FAIL") << '\n';
  }
  os << (r.pass() ? "overall PASS" : "overall FAIL") << '\n';
  return os.str();
}

VerifyOptions verify_options(const Common& c) {
  VerifyOptions o;
  o.exact_tol = c.tol;
  o.fd_tol = c.fd_tol;
  return o;
}

int input_error(const Common& c, const std::string& type, const std::string& what) {
  if (c.json_out) {
    std::cout << json{{"error", {{"type", type}, {"message", what}}}}.dump(2) << '\n';
  } else {
    std::cerr << "error (" << type << "): " << what << '\n';
  }
  return kInputError;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Common& c, const std::string& spec_path, bool with_solution) {
  const FlowSpec spec = flowspec_from_json(read_json_file(spec_path));
  const ShellGrid grid = parse_grid(c.grid_text, c.times);
  const FlowSolution sol = build_flow(spec);
  const ResidualReport rep = verify_flow(sol, grid, verify_options(c));
  if (c.json_out || !c.out.empty()) {
    json j = to_json(rep);
    if (with_solution) j["solution"] = to_json(sol);
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, human_report(rep));
  }
  return rep.pass() ? kPass : kFail;
}

int cmd_decompose(const Common& c, const std::string& samples, const std::string& spec_path) {
  Decomposition d;
  double roundtrip = 0.0;
  if (!samples.empty()) {
    std::ifstream in(samples);
    if (!in) throw ParseError("cannot open '" + samples + "'");
    const TabulatedVelocity tab = read_samples_csv(in);
    DecomposeOptions opts;
    opts.div_tol = 1e-4;
    d = recover_AB(tab, c.lmax, opts);
    for (int ti = 0; ti < tab.grid.ntimes(); ++ti) {
      for (int ri = 0; ri < tab.grid.nr(); ++ri) {
        for (int i = 0; i < tab.grid.ntheta(); ++i) {
          for (int k = 0; k < tab.grid.nphi(); ++k) {
            const Spherical p{tab.grid.r_nodes[ri], tab.grid.theta_nodes[i], tab.grid.phi_nodes[k]};
            const Vec3 s = synthesize(d, to_cartesian(p), tab.grid.times[ti]);
            roundtrip = std::max(roundtrip, norm(s - tab.at(ti, ri, i, k)));
          }
        }
      }
    }
  } else {
    const FlowSolution sol = build_flow(flowspec_from_json(read_json_file(spec_path)));
    const ShellGrid grid = parse_grid(c.grid_text, c.times);
    d = recover_AB(sol.velocity, grid, c.lmax);
    for (double t : grid.times) {
      for (const auto& p : grid.points()) {
        roundtrip = std::max(roundtrip, norm(synthesize(d, to_cartesian(p), t) - sol.velocity.eval(p, t)));
      }
    }
  }
  const bool pass = roundtrip <= 1e-6 * std::max(1.0, d.field_scale);
  if (c.json_out || !c.out.empty()) {
    json j = to_json(d, 1e-12 * std::max(1.0, d.field_scale));
    j["roundtrip_max"] = roundtrip;
    j["pass"] = pass;
    emit(c, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << std::setprecision(6) << "lmax " << d.A.lmax << ", field scale " << d.field_scale << ", max |div V| "
       << d.divergence_max << ", round-trip error " << roundtrip << '\n';
    const double floor = 1e-9 * std::max(1.0, d.field_scale);
    for (const auto* which : {&d.A, &d.B}) {
      os << (which == &d.A ? "A" : "B") << " coefficients above " << floor << ":\n";
      for (std::size_t ti = 0; ti < which->times.size(); ++ti) {
        for (std::size_t ri = 0; ri < which->radii.size(); ++ri) {
          for (int n = 1; n <= which->lmax; ++n) {
            for (int m = -n; m <= n; ++m) {
              const double v = which->at(static_cast<int>(ti), static_cast<int>(ri), {n, m});
              if (std::abs(v) > floor) {
                os << "  t=" << which->times[ti] << " r=" << which->radii[ri] << " (" << n << "," << m << ") " << v << '\n';
              }
            }
          }
        }
      }
    }
    os << (pass ? "round-trip PASS" : "round-trip FAIL") << '\n';
    emit(c, os.str());
  }
  return pass ? kPass : kFail;
}

struct PsiArgs {
  std::string pressure;
  double ball = 0.0;
  std::string shell;
  std::vector<std::string> points;
  double t = 0.0;
  double nu = 1.0;
  std::string budget;
  bool literal = false;
  double quad_tol = 0.0;
};

int cmd_psi(const Common& c, const PsiArgs& a) {
  const ScalarField p = field_from_json(read_json_file(a.pressure));
  QuadratureDomain dom;
  if (a.ball > 0.0 && a.shell.empty()) {
    dom = QuadratureDomain::ball(a.ball);
  } else if (!a.shell.empty() && a.ball == 0.0) {
    const auto s = parse_list(a.shell, 2);
    dom = QuadratureDomain::shell(s[0], s[1]);
  } else {
    throw ParseError("give exactly one of --ball R or --shell r1,r2");
  }
  if (!a.budget.empty()) {
    const auto b = parse_list(a.budget, 4);
    dom.n_time = static_cast<int>(b[0]);
    dom.n_r = static_cast<int>(b[1]);
    dom.n_theta = static_cast<int>(b[2]);
    dom.n_phi = static_cast<int>(b[3]);
  }
  dom.validate();
  if (a.points.empty()) throw ParseError("give at least one --point x,y,z");
  const FluidParams params = FluidParams::create(a.nu, a.nu, 1.0);
  PsiOptions opts;
  opts.kernel = a.literal ? KernelForm::Literal : KernelForm::UnitMassDuhamel;
  if (a.quad_tol > 0.0) opts.tolerance = a.quad_tol;

  json rows = json::array();
  std::ostringstream os;
  os << std::setprecision(6);
  for (const auto& text : a.points) {
    const auto v = parse_list(text, 3);
    const Vec3 x{v[0], v[1], v[2]};
    const double psi = psi_integral(p, x, a.t, dom, params, opts);
    rows.push_back({{"point", {x.x, x.y, x.z}}, {"t", a.t}, {"psi", psi}});
    os << "psi(" << x.x << ", " << x.y << ", " << x.z << "; t=" << a.t << ") = " << psi << '\n';
  }
  if (c.json_out || !c.out.empty()) {
    emit(c, json{{"kernel", a.literal ? "literal" : "unit_mass"}, {"values", rows}}.dump(2) + "\n");
  } else {
    emit(c, os.str());
  }
  return kPass;
}

int cmd_demo(const Common& c, double nu, double mu) {
  const FluidParams params = FluidParams::from_viscosity(mu, mu / nu);
  const ShellGrid grid = parse_grid(c.grid_text, c.times);
  const VectorField V = counterexample_velocity(params);
  VerifyOptions vo = verify_options(c);
  const ResidualReport rep = verify_flow(V, Pressure::of(ScalarField()), VectorField(), grid, params, vo);
  const ResidualEntry* cond = rep.find("condition");

  json loops = json::array();
  std::ostringstream os;
  os << std::setprecision(6);
  os << "velocity (y, -x, 0) exp(nu t), nu = " << params.nu << ", mu = " << params.mu << "\n";
  os << human_report(rep);
  const VectorEvaluator G = pressure_gradient_candidate(V, params);
  for (std::size_t i = 0; i < grid.times.size(); ++i) {
    const double t = grid.times[i];
    const double xy = loop_integrals(G, grid.shell(), t)[0];
    loops.push_back({{"t", t},
                     {"condition_max", cond->max_per_time[i]},
                     {"condition_expected", 2.0 * std::exp(params.nu * t)},
                     {"loop_xy", xy},
                     {"loop_expected", 2.0 * kPi * params.mu * std::exp(params.nu * t)}});
    os << "t = " << t << ": condition max " << cond->max_per_time[i] << " (2 exp(nu t) = "
       << 2.0 * std::exp(params.nu * t) << "), unit-circle loop " << xy << " (2 pi mu exp(nu t) = "
       << 2.0 * kPi * params.mu * std::exp(params.nu * t) << ")\n";
  }
  std::string error;
  try {
    RecoverOptions ro;
    ro.seed = c.seed;
    recover_pressure(V, grid, params, std::nullopt, ro);
  } catch (const PathDependenceError& e) {
    error = e.what();
  }
  os << "pressure recovery: " << (error.empty() ? "succeeded (unexpected)" : "PathDependenceError: " + error) << '\n';
  if (c.json_out || !c.out.empty()) {
    json j = to_json(rep);
    j["times"] = loops;
    j["path_dependence_error"] = error.empty() ? json(nullptr) : json(error);
    emit(c, j.dump(2) + "\n");
  } else {
    emit(c, os.str());
  }
  return kFail;
}

int cmd_sample(const Common& c, const std::string& spec_path) {
  const FlowSolution sol = build_flow(flowspec_from_json(read_json_file(spec_path)));
  const ShellGrid grid = parse_grid(c.grid_text, c.times);
  std::ostringstream os;
  write_samples_csv(os, tabulate(sol.velocity, grid));
  emit(c, os.str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solutions of the unsteady Stokes equations: construct, verify, decompose."};
  app.require_subcommand(1);
  Common c;
  std::string times_text;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--grid", c.grid_text, "r1=A,r2=B,nr=N,ntheta=N,nphi=N");
    sub->add_option("--times", times_text, "comma-separated sample times");
    sub->add_option("--tol", c.tol, "exact-path residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--fd-tol", c.fd_tol, "finite-difference residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--lmax", c.lmax, "band limit for decomposition")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", c.seed, "seed for randomized paths");
    sub->add_option("--out", c.out, "write output to a file instead of stdout");
    sub->add_flag("--json", c.json_out, "machine-readable output");
  };

  std::string spec_path, samples;
  auto* construct = app.add_subcommand("construct", "build a flow from a JSON spec and verify it");
  construct->add_option("--spec", spec_path, "flow spec JSON")->required();
  add_common(construct);

  auto* verify = app.add_subcommand("verify", "build a flow from a JSON spec and print its residual report");
  verify->add_option("--spec", spec_path, "flow spec JSON")->required();
  add_common(verify);

  auto* decompose = app.add_subcommand("decompose", "recover A, B from a sampled or constructed velocity");
  auto* samples_opt = decompose->add_option("--samples", samples, "CSV r,theta,phi,t,vx,vy,vz");
  auto* spec_opt = decompose->add_option("--spec", spec_path, "flow spec JSON");
  samples_opt->excludes(spec_opt);
  add_common(decompose);

  PsiArgs psi;
  auto* psi_cmd = app.add_subcommand("psi", "heat potential of a pressure field by quadrature");
  psi_cmd->add_option("--pressure", psi.pressure, "pressure field JSON (array of modes)")->required();
  psi_cmd->add_option("--ball", psi.ball, "ball radius")->check(CLI::PositiveNumber);
  psi_cmd->add_option("--shell", psi.shell, "r1,r2");
  psi_cmd->add_option("--point", psi.points, "x,y,z (repeatable)")->allow_extra_args(false);
  psi_cmd->add_option("--t", psi.t, "time")->required();
  psi_cmd->add_option("--nu", psi.nu, "kinematic viscosity")->check(CLI::PositiveNumber);
  psi_cmd->add_option("--budget", psi.budget, "n_time,n_r,n_theta,n_phi");
  psi_cmd->add_option("--quad-tol", psi.quad_tol, "fail if a half-budget estimate differs by more");
  psi_cmd->add_flag("--literal-kernel", psi.literal, "integrate the unnormalised kernel (comparison only)");
  add_common(psi_cmd);

  double demo_nu = 1.0, demo_mu = 1.0;
  auto* demo = app.add_subcommand("demo", "residuals and failed pressure recovery for (y, -x, 0) exp(nu t)");
  demo->add_option("--nu", demo_nu, "kinematic viscosity")->check(CLI::PositiveNumber);
  demo->add_option("--mu", demo_mu, "dynamic viscosity")->check(CLI::PositiveNumber);
  add_common(demo);

  auto* sample = app.add_subcommand("sample", "write the velocity of a spec on a grid as CSV");
  sample->add_option("--spec", spec_path, "flow spec JSON")->required();
  add_common(sample);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (!times_text.empty()) c.times = parse_list(times_text);
    if (demo->parsed() && times_text.empty()) c.times = {0.0, 1.0};
    if (construct->parsed()) return cmd_verify(c, spec_path, true);
    if (verify->parsed()) return cmd_verify(c, spec_path, false);
    if (decompose->parsed()) {
      if (samples.empty() && spec_path.empty()) throw ParseError("give --samples or --spec");
      return cmd_decompose(c, samples, spec_path);
    }
    if (psi_cmd->parsed()) return cmd_psi(c, psi);
    if (demo->parsed()) return cmd_demo(c, demo_nu, demo_mu);
    if (sample->parsed()) return cmd_sample(c, spec_path);
  } catch (const NotDivergenceFree& e) {
    std::cerr << "NotDivergenceFree: " << e.what() << '\n';
    return kFail;
  } catch (const MonopoleFluxError& e) {
    std::cerr << "MonopoleFluxError: " << e.what() << '\n';
    return kFail;
  } catch (const Error& e) {
    return input_error(c, error_type(e), e.what());
  }
  return kInputError;
}
