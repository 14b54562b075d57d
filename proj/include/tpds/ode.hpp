#pragma once

#include "tpds/matrix.hpp"
#include "tpds/system.hpp"

#include <functional>
#include <optional>
#include <ostream>
#include <vector>

namespace tpds {

struct TransitionRecord {
  double t0 = 0.0;
  double t = 0.0;
  Matrix phi;
  double det_phi = 1.0;
  double det_predicted = 1.0;  // exp of the integrated trace (Simpson)
  bool suspect = false;        // |det_phi - det_predicted| > 1e-6 |det_predicted|
};

/// Default RK4 step: 1e-3 (b - a).
double default_step(const TimeVaryingSystem& sys);

/// Phi(t, t0) by fixed-step classical RK4 on the matrix ODE. Every piece of [t0, t] lying in one
/// segment is split into equal steps no longer than `step`, so steps land on segment boundaries.
/// Requires a <= t0 <= t <= b (t unbounded for periodic systems); throws OutOfInterval.
TransitionRecord transition_matrix(const TimeVaryingSystem& sys, double t0, double t,
                                   std::optional<double> step = std::nullopt);

/// Integrates Y' = F(piece segment, local time) Y over [t0, t1] with the same stepping rule as
/// transition_matrix. F must return a square matrix matching Y's row count.
using SegmentMatrixFn = std::function<Matrix(std::size_t segment, double tau)>;
Matrix integrate_linear(const TimeVaryingSystem& sys, const SegmentMatrixFn& f, const Matrix& y0,
                        double t0, double t1, double step, double* trace_integral = nullptr);

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<int> s_minus;
  std::vector<int> s_plus;
  std::vector<bool> in_V_flags;
  std::vector<double> exceptional_times;  // one representative per cluster of non-V samples
  double rel_zero_tol = 1e-8;

  std::size_t size() const { return times.size(); }
};

struct SimulateOptions {
  std::optional<double> step;
  double rel_zero_tol = 1e-8;
  /// Check s^+ and s^- non-increasing and at most n-1 non-V clusters (for TPDS systems).
  bool assert_monotone = false;
};

/// Samples closer than this many grid indices are merged into one exceptional cluster.
inline constexpr int kClusterGap = 3;

/// Solves z' = A(t) z with z(grid[0]) = z0 and records the sign-variation bookkeeping at every grid
/// time. Throws TrivialSolution for z0 = 0, OutOfInterval, and MonotonicityViolation when
/// `assert_monotone` is set and the checks fail.
Trajectory simulate_linear(const TimeVaryingSystem& sys, const Vector& z0, const std::vector<double>& grid,
                           const SimulateOptions& opts = {});

/// Fills the sign bookkeeping of a trajectory whose times and states are set.
void annotate_signs(Trajectory& traj, double rel_zero_tol);

/// Throws MonotonicityViolation unless s^+ and s^- never increase and the number of non-V
/// clusters is at most max_clusters.
void assert_sign_monotone(const Trajectory& traj, int max_clusters);

/// `count` evenly spaced times from t0 to t1 inclusive.
std::vector<double> linspace(double t0, double t1, int count);

/// Y^(p) propagated by the additive compound of A(t), cross-checked against the p-th
/// multiplicative compound of transition_matrix(...).phi (relative Frobenius <= 1e-5,
/// CrossCheckFailed otherwise).
Matrix compound_transition(const TimeVaryingSystem& sys, int p, double t0, double t,
                           std::optional<double> step = std::nullopt);

/// For every first zero sample r of z_1 followed by a sample s with z_1 nonzero, checks
/// s^+(z(s)) <= s^+(z(r)) - 1. Throws NoApplicablePair when there is no such pair.
bool tn_weak_svdp_check(const Trajectory& traj);

/// CSV with header `t,z1..zn,s_minus,s_plus,in_V`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace tpds
