#include "tpds/cli.hpp"

#include "tpds/classify.hpp"
#include "tpds/compound.hpp"
#include "tpds/error.hpp"
#include "tpds/floquet.hpp"
#include "tpds/nonlinear.hpp"
#include "tpds/ode.hpp"
#include "tpds/specfile.hpp"
#include "tpds/total_positivity.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#ifndef TPDS_SPEC_DIR
#define TPDS_SPEC_DIR "specs"
#endif

namespace tpds::cli {
namespace {

namespace fs = std::filesystem;

// Raised while reading user input; always maps to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::UnknownFigure: return kParseError;
    case ErrorCode::IntegrationSuspect: return kNumericalSuspect;
    default: return kAnalysisFailure;
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const Vector& v, const char* sep = " ") {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? sep : "") + format_double(v(i));
  return s;
}

SystemSpec load_spec(const std::string& path) {
  try {
    return read_spec_file(path);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
}

MatrixText load_matrix(const std::string& path) {
  try {
    return read_matrix_file(path);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Vector to_vector(const std::vector<double>& v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

Vector initial_state(const std::vector<double>& flag, const std::optional<std::vector<double>>& fallback, int n,
                     const char* what) {
  std::vector<double> v = !flag.empty() ? flag : fallback.value_or(std::vector<double>{});
  if (v.empty()) throw InputError(std::string("no ") + what + " given (flag or experiment section)");
  if (static_cast<int>(v.size()) != n) {
    throw InputError(std::string(what) + " needs " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  }
  return to_vector(v);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidSystem, "cannot write " + path.string());
  f << content;
}

struct LinearRun {
  SystemClass cls;
  Trajectory traj;
};

// Shared by `simulate` and `reproduce sigma-switched`.
LinearRun simulate_spec(const SystemSpec& spec, const Vector& z0, std::optional<double> step,
                        std::optional<int> samples, std::optional<double> horizon) {
  const TimeVaryingSystem& sys = spec.linear();
  LinearRun run;
  run.cls = classify_time_varying(sys, spec.experiment.samples_per_segment.value_or(kDefaultSamplesPerSegment),
                                  spec.experiment.delta_floor.value_or(kDefaultDeltaFloor));
  SimulateOptions opts;
  opts.step = step ? step : spec.experiment.step;
  opts.assert_monotone = run.cls.verdict == Verdict::TPDS;
  const double len = horizon.value_or(spec.experiment.horizon.value_or(sys.b() - sys.a()));
  const int count = samples.value_or(spec.experiment.samples.value_or(1001));
  run.traj = simulate_linear(sys, z0, linspace(sys.a(), sys.a() + len, count), opts);
  return run;
}

std::string sigma_path(const Trajectory& tr) {
  std::string s;
  int last = -1;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!tr.in_V_flags[k] || tr.s_minus[k] == last) continue;
    s += (s.empty() ? "" : " -> ") + std::to_string(tr.s_minus[k]);
    last = tr.s_minus[k];
  }
  return s.empty() ? "undefined" : s;
}

std::string sigma_dat(const Trajectory& tr) {
  std::ostringstream o;
  o << "# t sigma s_minus s_plus (sigma = nan off V)\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    o << format_double(tr.times[k]) << ' ' << (tr.in_V_flags[k] ? std::to_string(tr.s_minus[k]) : "nan") << ' '
      << tr.s_minus[k] << ' ' << tr.s_plus[k] << '\n';
  }
  return o.str();
}

std::string csv(const Trajectory& tr) {
  std::ostringstream o;
  write_trajectory_csv(o, tr);
  return o.str();
}

// ---------------------------------------------------------------------------
// Commands

int cmd_check(const std::string& path, std::ostream& out) {
  const MatrixText m = load_matrix(path);
  const Classification c = classify(m.values);
  out << "TN " << yes_no(c.is_TN) << ", TP " << yes_no(c.is_TP) << ", SSR " << yes_no(c.is_SSR) << ", oscillatory "
      << yes_no(c.is_oscillatory) << ", M " << yes_no(in_M(m.values)) << ", M+ " << yes_no(in_M_plus(m.values)) << '\n';
  if (c.witness) {
    out << (c.is_TN ? "first non-positive minor: " : "first negative minor: ") << "rows " << c.witness->rows.to_string()
        << " cols " << c.witness->cols.to_string() << " = " << format_double(c.witness->value) << '\n';
  } else {
    out << "all minors positive\n";
  }
  return kOk;
}

int cmd_compound(const std::string& path, int p, bool additive, std::ostream& out) {
  const MatrixText m = load_matrix(path);
  const CompoundMatrix c = additive ? add_compound(m.values, p) : mult_compound(m.values, p);
  out << "# " << (additive ? "additive" : "multiplicative") << " compound of order " << p << "; labels:";
  for (const IndexTuple& t : c.index_map) out << ' ' << t.to_string();
  out << '\n';
  write_matrix_text(out, c.entries, m.integral && is_integral(c.entries));
  return kOk;
}

struct SimulateFlags {
  std::string spec;
  std::vector<double> z0;
  std::string out_file;
  std::optional<double> step;
  std::optional<int> samples;
  std::optional<double> horizon;
  bool derivative = false;
};

int cmd_simulate(const SimulateFlags& f, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = load_spec(f.spec);
  std::string body;
  std::ostringstream summary;
  if (spec.is_linear()) {
    const Vector z0 = initial_state(f.z0, spec.experiment.z0, spec.n, "z0");
    const LinearRun run = simulate_spec(spec, z0, f.step, f.samples, f.horizon);
    body = csv(run.traj);
    summary << spec.name << ": " << to_string(run.cls.verdict) << ", sigma " << sigma_path(run.traj) << ", "
            << run.traj.exceptional_times.size() << " exceptional cluster(s)"
            << (run.cls.verdict == Verdict::TPDS ? ", monotonicity checked" : "") << '\n';
  } else {
    const NonlinearSystem& sys = spec.nonlinear();
    const Vector x0 = initial_state(f.z0, spec.experiment.x0, spec.n, "x0");
    const double len = f.horizon.value_or(spec.experiment.horizon.value_or(spec.b - spec.a));
    const int count = f.samples.value_or(spec.experiment.samples.value_or(1001));
    const NonlinearRun run =
        simulate_nonlinear(sys, x0, linspace(0.0, len, count), f.step ? f.step : spec.experiment.step);
    body = csv(f.derivative ? run.derivative : run.state);
    summary << spec.name << ": sigma(x') " << sigma_path(run.derivative) << ", Jacobian in M+ "
            << yes_no(run.jacobian_in_M_plus) << ", monotonicity " << (run.sigma_checked ? "checked" : "not checked")
            << (sys.finite_difference_jacobian() ? " (finite-difference Jacobian)" : "") << '\n';
  }
  if (f.out_file.empty()) {
    out << body;
    err << summary.str();
  } else {
    write_file(f.out_file, body);
    out << summary.str() << "wrote " << f.out_file << '\n';
  }
  return kOk;
}

int cmd_classify(const std::string& path, std::optional<int> per_segment, std::optional<double> floor,
                 std::ostream& out) {
  const SystemSpec spec = load_spec(path);
  const TimeVaryingSystem& sys = spec.linear();
  const SystemClass c = classify_time_varying(
      sys, per_segment.value_or(spec.experiment.samples_per_segment.value_or(kDefaultSamplesPerSegment)),
      floor.value_or(spec.experiment.delta_floor.value_or(kDefaultDeltaFloor)));
  out << "verdict " << to_string(c.verdict) << '\n';
  out << "delta " << (c.delta ? format_double(*c.delta) : std::string("n/a")) << '\n';
  out << "samples per segment " << c.samples_per_segment << " (endpoints included; strictness skipped at t = "
      << format_double(sys.a()) << " and t = " << format_double(sys.b()) << ")\n";
  const std::size_t shown = std::min<std::size_t>(c.violations.size(), 10);
  for (std::size_t k = 0; k < shown; ++k)
    out << "violation t = " << format_double(c.violations[k].t) << ": " << c.violations[k].what << '\n';
  if (c.violations.size() > shown) out << "... " << c.violations.size() - shown << " more violations\n";

  if (sys.is_constant() && sys.n() <= kCrossCheckLimit) {
    const SystemClass k = classify_constant(sys.at(sys.a()));
    out << "constant-matrix cross-check:";
    for (const SampledCheck& s : k.samples)
      out << " t=" << format_double(s.t) << (s.tp ? " TP" : s.tn ? " TN" : " not-TN");
    out << (k.cross_check_agrees.value_or(false) ? " (agrees)" : " (DISAGREES)") << '\n';
    for (const NegativeMinor& w : k.negative_minors) {
      out << "a(" << w.i << "," << w.j << ") > 0 gives minor rows " << w.rows.to_string() << " cols "
          << w.cols.to_string() << " = " << format_double(w.value) << " at t = " << format_double(w.t) << '\n';
    }
  }
  return kOk;
}

int cmd_floquet(const std::string& path, std::optional<double> step, std::ostream& out, std::ostream& err) {
  const SystemSpec spec = load_spec(path);
  const TimeVaryingSystem& sys = spec.linear();
  if (!sys.period()) throw Error(ErrorCode::NotPeriodic, spec.name + " has no period");
  const double h = step.value_or(spec.experiment.step.value_or(*sys.period() * 1e-4));
  const TransitionRecord rec = transition_matrix(sys, sys.a(), sys.a() + *sys.period(), h);
  const FloquetData fd = floquet(sys, h);
  out << "period " << format_double(fd.period) << '\n';
  for (std::size_t k = 0; k < fd.multipliers.size(); ++k) {
    out << "multiplier " << k + 1 << ' ' << format_double(fd.multipliers[k]) << " sign_count " << fd.sign_counts[k]
        << " eigenvector " << join(fd.eigvecs[k]) << '\n';
  }
  out << "monodromy\n";
  write_matrix_text(out, fd.monodromy, false);
  if (spec.experiment.coeffs) {
    const int first = spec.experiment.coeff_first.value_or(1);
    const double horizon = spec.experiment.horizon.value_or(10 * fd.period);
    const ModeRun run = floquet_mode_evolution(sys, fd, first, *spec.experiment.coeffs, horizon);
    out << "mode run: sigma " << sigma_path(run.trajectory) << ", band " << run.band_low << ".." << run.band_high
        << ", terminal " << run.terminal_sigma << '\n';
  }
  if (rec.suspect) {
    err << "warning: det(B) = " << format_double(rec.det_phi) << " but exp(int trace) = "
        << format_double(rec.det_predicted) << '\n';
    return kNumericalSuspect;
  }
  return kOk;
}

struct EntrainFlags {
  std::string spec;
  std::vector<double> x0;
  std::optional<int> max_iters;
  std::optional<int> q_max;
  std::optional<double> tol;
  std::optional<double> perturbation;
  std::optional<double> step;
};

PoincareResult run_poincare(const SystemSpec& spec, const Vector& x0, const EntrainFlags& f) {
  return poincare_analysis(spec.nonlinear(), x0, f.max_iters.value_or(spec.experiment.max_iters.value_or(400)),
                           f.q_max.value_or(spec.experiment.q_max.value_or(8)),
                           f.tol.value_or(spec.experiment.tol.value_or(1e-6)), f.step ? f.step : spec.experiment.step);
}

Vector perturbed_start(const SystemSpec& spec, const EntrainFlags& f) {
  Vector x0 = initial_state(f.x0, spec.experiment.x0, spec.n, "x0");
  x0(0) += f.perturbation.value_or(spec.experiment.perturbation.value_or(0.0));
  return x0;
}

int cmd_entrain(const EntrainFlags& f, std::ostream& out) {
  const SystemSpec spec = load_spec(f.spec);
  const Vector x0 = perturbed_start(spec, f);
  const PoincareResult pr = run_poincare(spec, x0, f);
  out << "x0 " << join(x0) << '\n';
  out << "detected_period " << *pr.detected_period << '\n';
  out << "transient_end " << pr.transient_end.value_or(0) << '\n';
  out << "iterations " << pr.iterates.size() - 1 << '\n';
  out << "residual tail";
  const std::size_t from = pr.residuals.size() > 5 ? pr.residuals.size() - 5 : 0;
  for (std::size_t k = from; k < pr.residuals.size(); ++k) out << ' ' << format_double(pr.residuals[k]);
  out << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// Figures

using FigureFn = std::function<std::pair<std::string, std::string>()>;  // (csv, dat)

std::pair<std::string, std::string> figure_sigma_switched() {
  const SystemSpec spec = read_spec_file(spec_dir() / "switched.spec");
  const LinearRun run = simulate_spec(spec, to_vector(*spec.experiment.z0), std::nullopt, std::nullopt, std::nullopt);
  return {csv(run.traj), sigma_dat(run.traj)};
}

std::pair<std::string, std::string> figure_floquet_sinusoidal() {
  const SystemSpec spec = read_spec_file(spec_dir() / "sinusoidal2.spec");
  const TimeVaryingSystem& sys = spec.linear();
  const FloquetData fd = floquet(sys, spec.experiment.step);
  const ModeRun run = floquet_mode_evolution(sys, fd, spec.experiment.coeff_first.value_or(1), *spec.experiment.coeffs,
                                             spec.experiment.horizon.value_or(10 * fd.period));
  std::ostringstream dat;
  dat << "# k multiplier sign_count eigenvector\n";
  for (std::size_t k = 0; k < fd.multipliers.size(); ++k)
    dat << k + 1 << ' ' << format_double(fd.multipliers[k]) << ' ' << fd.sign_counts[k] << ' ' << join(fd.eigvecs[k]) << '\n';
  dat << "\n\n" << sigma_dat(run.trajectory);
  return {csv(run.trajectory), dat.str()};
}

std::pair<std::string, std::string> figure_takac() {
  const SystemSpec spec = read_spec_file(spec_dir() / "takac.spec");
  EntrainFlags f;
  const PoincareResult pr = run_poincare(spec, perturbed_start(spec, f), f);
  std::ostringstream table;
  std::ostringstream dat;
  table << "k";
  for (int i = 1; i <= spec.n; ++i) table << ",x" << i;
  table << ",residual_q1,residual_q2\n";
  dat << "# k residual_q1 residual_q2 (detected period " << *pr.detected_period << ")\n";
  for (std::size_t k = 0; k < pr.iterates.size(); ++k) {
    const auto res = [&](std::size_t q) {
      return k >= q ? format_double((pr.iterates[k] - pr.iterates[k - q]).cwiseAbs().maxCoeff()) : std::string("nan");
    };
    table << k << ',' << join(pr.iterates[k], ",") << ',' << res(1) << ',' << res(2) << '\n';
    dat << k << ' ' << res(1) << ' ' << res(2) << '\n';
  }
  return {table.str(), dat.str()};
}

std::pair<std::string, std::string> figure_spectrum_tp3() {
  const Matrix a = matrix_from_rows({{5, 4, 1}, {4, 6, 4}, {1, 4, 5}});
  const auto spectrum = oscillatory_spectrum(a);
  std::ostringstream table;
  std::ostringstream dat;
  table << "k,eigenvalue,u1,u2,u3,sign_count\n";
  dat << "# k eigenvalue u1 u2 u3 sign_count\n";
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    table << k + 1 << ',' << format_double(spectrum[k].eigenvalue) << ',' << join(spectrum[k].eigenvector, ",") << ','
          << spectrum[k].sign_count << '\n';
    dat << k + 1 << ' ' << format_double(spectrum[k].eigenvalue) << ' ' << join(spectrum[k].eigenvector) << ' '
        << spectrum[k].sign_count << '\n';
  }
  return {table.str(), dat.str()};
}

int cmd_reproduce(const std::string& id, const std::string& dir_flag, std::ostream& out) {
  static const std::vector<std::pair<std::string, FigureFn>> figures = {
      {"sigma-switched", figure_sigma_switched},
      {"floquet-sinusoidal", figure_floquet_sinusoidal},
      {"takac", figure_takac},
      {"spectrum-tp3", figure_spectrum_tp3},
  };
  const auto it = std::find_if(figures.begin(), figures.end(), [&](const auto& f) { return f.first == id; });
  if (it == figures.end()) throw Error(ErrorCode::UnknownFigure, "unknown figure '" + id + "'");
  const fs::path dir = dir_flag.empty() ? output_dir() : fs::path(dir_flag);
  fs::create_directories(dir);
  const auto [table, dat] = it->second();
  write_file(dir / (id + ".csv"), table);
  write_file(dir / (id + ".dat"), dat);
  out << "wrote " << (dir / (id + ".csv")).string() << '\n' << "wrote " << (dir / (id + ".dat")).string() << '\n';
  return kOk;
}

}  // namespace

fs::path spec_dir() {
  if (const char* env = std::getenv("TPDS_SPEC_DIR"); env && *env) return env;
  return TPDS_SPEC_DIR;
}

fs::path output_dir() {
  if (const char* env = std::getenv("TPDS_OUTPUT_DIR"); env && *env) return env;
  return "figures";
}

const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"sigma-switched", "floquet-sinusoidal", "takac", "spectrum-tp3"};
  return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Total positivity and sign-variation tools for linear and cooperative systems", "tpds"};
  app.require_subcommand(1);

  std::string matrix_path;
  auto* check = app.add_subcommand("check", "Classify a matrix: TN, TP, SSR, oscillatory, M, M+");
  check->add_option("matrix", matrix_path, "Matrix text file")->required();

  int order = 2;
  bool additive = false;
  bool multiplicative = false;
  auto* compound = app.add_subcommand("compound", "Print the p-th additive or multiplicative compound");
  compound->add_option("matrix", matrix_path, "Matrix text file")->required();
  compound->add_option("-p,--order", order, "Compound order")->required();
  auto* add_flag = compound->add_flag("--additive", additive, "Additive compound A^[p]");
  compound->add_flag("--multiplicative", multiplicative, "Multiplicative compound A^(p) (default)")->excludes(add_flag);

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a system and emit the trajectory CSV");
  simulate->add_option("spec", sim.spec, "System spec file")->required();
  simulate->add_option("--z0,--x0", sim.z0, "Initial state, comma separated")->delimiter(',');
  simulate->add_option("--out", sim.out_file, "CSV output file (default: stdout)");
  simulate->add_option("--step", sim.step, "RK4 step");
  simulate->add_option("--samples", sim.samples, "Number of grid points");
  simulate->add_option("--horizon", sim.horizon, "Simulation length");
  simulate->add_flag("--derivative", sim.derivative, "Nonlinear systems: emit z = f(x) instead of x");

  std::string spec_path;
  std::optional<int> per_segment;
  std::optional<double> delta_floor;
  auto* classify_cmd = app.add_subcommand("classify", "TNDS / TPDS classification of a linear system");
  classify_cmd->add_option("spec", spec_path, "System spec file")->required();
  classify_cmd->add_option("--samples-per-segment", per_segment, "Grid density per segment");
  classify_cmd->add_option("--delta-floor", delta_floor, "Required lower bound on the off-diagonals");

  std::optional<double> floquet_step;
  auto* floquet_cmd = app.add_subcommand("floquet", "Monodromy matrix and characteristic multipliers");
  floquet_cmd->add_option("spec", spec_path, "Periodic linear system spec file")->required();
  floquet_cmd->add_option("--step", floquet_step, "RK4 step");

  EntrainFlags ent;
  auto* entrain = app.add_subcommand("entrain", "Period-map iteration and period detection");
  entrain->add_option("spec", ent.spec, "Periodic nonlinear system spec file")->required();
  entrain->add_option("--x0", ent.x0, "Initial state, comma separated")->delimiter(',');
  entrain->add_option("--max-iters", ent.max_iters, "Maximum number of periods");
  entrain->add_option("--q-max", ent.q_max, "Largest period multiple searched");
  entrain->add_option("--tol", ent.tol, "Residual tolerance");
  entrain->add_option("--perturbation", ent.perturbation, "Added to the first coordinate of x0");
  entrain->add_option("--step", ent.step, "RK4 step");

  std::string figure;
  std::string out_dir;
  auto* reproduce = app.add_subcommand("reproduce", "Write the CSV and plot data of a figure");
  reproduce->add_option("figure", figure, "One of: sigma-switched, floquet-sinusoidal, takac, spectrum-tp3")->required();
  reproduce->add_option("--out-dir", out_dir, "Output directory (default: $TPDS_OUTPUT_DIR or ./figures)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*check) return cmd_check(matrix_path, out);
    if (*compound) return cmd_compound(matrix_path, order, additive, out);
    if (*simulate) return cmd_simulate(sim, out, err);
    if (*classify_cmd) return cmd_classify(spec_path, per_segment, delta_floor, out);
    if (*floquet_cmd) return cmd_floquet(spec_path, floquet_step, out, err);
    if (*entrain) return cmd_entrain(ent, out);
    if (*reproduce) return cmd_reproduce(figure, out_dir, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kAnalysisFailure;
  }
  return kParseError;
}

}  // namespace tpds::cli
