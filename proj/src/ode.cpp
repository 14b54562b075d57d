#include "tpds/ode.hpp"

#include "tpds/compound.hpp"
#include "tpds/error.hpp"
#include "tpds/sign_variation.hpp"

#include <cmath>
#include <sstream>

namespace tpds {
namespace {

void require_span(const TimeVaryingSystem& sys, double t0, double t) {
  if (!sys.contains(t0) || !sys.contains(t) || t < t0) {
    std::ostringstream msg;
    msg << "need a <= t0 <= t" << (sys.period() ? "" : " <= b") << " on [" << format_double(sys.a()) << ", "
        << (sys.period() ? std::string("inf") : format_double(sys.b())) << "], got t0 = " << format_double(t0)
        << ", t = " << format_double(t);
    throw Error(ErrorCode::OutOfInterval, msg.str());
  }
}

double check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::InvalidSystem, "step must be positive");
  return step;
}

std::string list_times(const std::vector<double>& times) {
  std::string s;
  const std::size_t shown = std::min<std::size_t>(times.size(), 10);
  for (std::size_t k = 0; k < shown; ++k) s += (k ? ", " : "") + format_double(times[k]);
  if (times.size() > shown) s += ", ... (" + std::to_string(times.size()) + " total)";
  return s;
}

}  // namespace

double default_step(const TimeVaryingSystem& sys) { return 1e-3 * (sys.b() - sys.a()); }

Matrix integrate_linear(const TimeVaryingSystem& sys, const SegmentMatrixFn& f, const Matrix& y0, double t0,
                        double t1, double step, double* trace_integral) {
  check_step(step);
  Matrix y = y0;
  double trace = 0.0;
  for (const Piece& p : sys.pieces(t0, t1)) {
    const double len = p.t1 - p.t0;
    const auto steps = std::max<long>(1, static_cast<long>(std::ceil(len / step - 1e-9)));
    const double h = len / static_cast<double>(steps);
    Matrix f_left = f(p.segment, p.t0 - p.shift);
    for (long k = 0; k < steps; ++k) {
      // Local time measured from the piece start keeps the last step on p.t1 exactly.
      const double tau = p.t0 - p.shift + h * static_cast<double>(k);
      const double tau_end = (k + 1 == steps) ? p.t1 - p.shift : tau + h;
      const Matrix f_mid = f(p.segment, tau + 0.5 * h);
      const Matrix f_right = f(p.segment, tau_end);
      const Matrix k1 = f_left * y;
      const Matrix k2 = f_mid * (y + 0.5 * h * k1);
      const Matrix k3 = f_mid * (y + 0.5 * h * k2);
      const Matrix k4 = f_right * (y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      trace += (h / 6.0) * (f_left.trace() + 4.0 * f_mid.trace() + f_right.trace());
      f_left = f_right;
    }
  }
  if (trace_integral) *trace_integral = trace;
  return y;
}

TransitionRecord transition_matrix(const TimeVaryingSystem& sys, double t0, double t, std::optional<double> step) {
  require_span(sys, t0, t);
  const double h = check_step(step.value_or(default_step(sys)));
  TransitionRecord rec;
  rec.t0 = t0;
  rec.t = t;
  double trace = 0.0;
  const auto eval = [&sys](std::size_t seg, double tau) { return sys.eval_segment(seg, tau); };
  rec.phi = integrate_linear(sys, eval, Matrix::Identity(sys.n(), sys.n()), t0, t, h, &trace);
  rec.det_phi = rec.phi.determinant();
  rec.det_predicted = std::exp(trace);
  rec.suspect = !(std::abs(rec.det_phi - rec.det_predicted) <= 1e-6 * std::abs(rec.det_predicted));
  return rec;
}

std::vector<double> linspace(double t0, double t1, int count) {
  if (count < 2) return {t0};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (count - 1);
  out.back() = t1;
  return out;
}

void annotate_signs(Trajectory& traj, double rel_zero_tol) {
  traj.rel_zero_tol = rel_zero_tol;
  const std::size_t m = traj.states.size();
  traj.s_minus.assign(m, 0);
  traj.s_plus.assign(m, 0);
  traj.in_V_flags.assign(m, false);
  traj.exceptional_times.clear();
  long last_flagged = -1;
  for (std::size_t k = 0; k < m; ++k) {
    const auto z = as_span(traj.states[k]);
    const double tol = relative_zero_tol(z, rel_zero_tol);
    traj.s_minus[k] = s_minus(z, tol);
    traj.s_plus[k] = s_plus(z, tol);
    traj.in_V_flags[k] = in_V(z, tol);
    if (!traj.in_V_flags[k]) {
      if (last_flagged < 0 || static_cast<long>(k) - last_flagged > kClusterGap) traj.exceptional_times.push_back(traj.times[k]);
      last_flagged = static_cast<long>(k);
    }
  }
}

void assert_sign_monotone(const Trajectory& traj, int max_clusters) {
  std::vector<double> bad;
  for (std::size_t k = 1; k < traj.size(); ++k) {
    if (traj.s_plus[k] > traj.s_plus[k - 1] || traj.s_minus[k] > traj.s_minus[k - 1]) bad.push_back(traj.times[k]);
  }
  if (!bad.empty()) {
    throw Error(ErrorCode::MonotonicityViolation, "sign variation increases at t = " + list_times(bad));
  }
  if (static_cast<int>(traj.exceptional_times.size()) > max_clusters) {
    throw Error(ErrorCode::MonotonicityViolation,
                std::to_string(traj.exceptional_times.size()) + " exceptional clusters (at most " +
                    std::to_string(max_clusters) + " allowed) at t = " + list_times(traj.exceptional_times));
  }
}

Trajectory simulate_linear(const TimeVaryingSystem& sys, const Vector& z0, const std::vector<double>& grid,
                           const SimulateOptions& opts) {
  if (z0.size() != sys.n()) {
    throw Error(ErrorCode::DimensionMismatch,
                "z0 has " + std::to_string(z0.size()) + " entries, system dimension is " + std::to_string(sys.n()));
  }
  if (z0.isZero(0.0)) throw Error(ErrorCode::TrivialSolution, "z0 = 0 gives the trivial solution");
  if (grid.empty()) throw Error(ErrorCode::InvalidSystem, "empty time grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorCode::InvalidSystem, "time grid must be strictly increasing");
  }
  require_span(sys, grid.front(), grid.back());
  const double h = check_step(opts.step.value_or(default_step(sys)));
  const auto eval = [&sys](std::size_t seg, double tau) { return sys.eval_segment(seg, tau); };

  Trajectory traj;
  traj.times = grid;
  traj.states.reserve(grid.size());
  Matrix z = z0;
  traj.states.emplace_back(z0);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    z = integrate_linear(sys, eval, z, grid[k - 1], grid[k], h);
    traj.states.emplace_back(z.col(0));
  }
  annotate_signs(traj, opts.rel_zero_tol);
  if (opts.assert_monotone) assert_sign_monotone(traj, sys.n() - 1);
  return traj;
}

Matrix compound_transition(const TimeVaryingSystem& sys, int p, double t0, double t, std::optional<double> step) {
  require_span(sys, t0, t);
  const double h = check_step(step.value_or(default_step(sys)));
  const Matrix a0 = sys.at(t0);
  const auto dim = static_cast<Eigen::Index>(add_compound(a0, p).index_map.size());
  const auto eval = [&sys, p](std::size_t seg, double tau) { return add_compound(sys.eval_segment(seg, tau), p).entries; };
  Matrix y = integrate_linear(sys, eval, Matrix::Identity(dim, dim), t0, t, h);

  const Matrix via_minors = mult_compound(transition_matrix(sys, t0, t, h).phi, p).entries;
  const double err = (y - via_minors).norm() / std::max(via_minors.norm(), 1e-300);
  if (!(err <= 1e-5)) {
    throw Error(ErrorCode::CrossCheckFailed, "compound dynamics and minors of Phi differ (relative error " +
                                                 format_double(err) + ")");
  }
  return y;
}

bool tn_weak_svdp_check(const Trajectory& traj) {
  const auto zero_first = [&traj](std::size_t k) {
    const auto z = as_span(traj.states[k]);
    return std::abs(z[0]) <= relative_zero_tol(z, traj.rel_zero_tol);
  };
  bool any = false;
  bool holds = true;
  for (std::size_t r = 0; r < traj.size(); ++r) {
    if (!zero_first(r) || (r > 0 && zero_first(r - 1))) continue;
    std::size_t s = r + 1;
    while (s < traj.size() && zero_first(s)) ++s;
    if (s == traj.size()) break;
    any = true;
    const auto zr = as_span(traj.states[r]);
    const auto zs = as_span(traj.states[s]);
    const int before = s_plus(zr, relative_zero_tol(zr, traj.rel_zero_tol));
    const int after = s_plus(zs, relative_zero_tol(zs, traj.rel_zero_tol));
    holds = holds && after <= before - 1;
  }
  if (!any) throw Error(ErrorCode::NoApplicablePair, "z1 has no zero followed by a nonzero sample");
  return holds;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const std::size_t n = traj.states.empty() ? 0 : static_cast<std::size_t>(traj.states.front().size());
  out << "t";
  for (std::size_t i = 1; i <= n; ++i) out << ",z" << i;
  out << ",s_minus,s_plus,in_V\n";
  for (std::size_t k = 0; k < traj.size(); ++k) {
    out << format_double(traj.times[k]);
    for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) out << ',' << format_double(traj.states[k](i));
    out << ',' << traj.s_minus[k] << ',' << traj.s_plus[k] << ',' << (traj.in_V_flags[k] ? 1 : 0) << '\n';
  }
}

}  // namespace tpds
