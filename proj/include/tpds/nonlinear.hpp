#pragma once

#include "tpds/expr.hpp"
#include "tpds/matrix.hpp"
#include "tpds/ode.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tpds {

/// x' = f(t, x, u(t)) on a box-shaped invariant set.
class NonlinearSystem {
 public:
  /// rhs: n expressions over t, x1..xn, u. input: expression in t. jacobian: n*n row-major
  /// expressions (omit for central finite differences). Throws InvalidSystem, UnknownIdentifier,
  /// NotPeriodic (input or explicit t-dependence checked on a 100-point grid against `period`).
  NonlinearSystem(std::vector<Expr> rhs, std::optional<Expr> input, std::optional<std::vector<Expr>> jacobian,
                  std::optional<double> period, std::vector<std::pair<double, double>> domain_box);

  int n() const { return static_cast<int>(rhs_.size()); }
  const std::vector<Expr>& rhs() const { return rhs_; }
  const std::optional<Expr>& input() const { return input_; }
  const std::optional<std::vector<Expr>>& jacobian_exprs() const { return jacobian_; }
  const std::optional<double>& period() const { return period_; }
  const std::vector<std::pair<double, double>>& domain_box() const { return box_; }

  /// No explicit t and no input.
  bool autonomous() const;
  bool finite_difference_jacobian() const { return !jacobian_; }
  bool in_box(const Vector& x) const;

  Vector f(double t, const Vector& x) const;
  /// User Jacobian, or central differences with h_j = 1e-6 max(1, |x_j|).
  Matrix jacobian(double t, const Vector& x) const;

 private:
  std::vector<Expr> rhs_;
  std::optional<Expr> input_;
  std::optional<std::vector<Expr>> jacobian_;
  std::optional<double> period_;
  std::vector<std::pair<double, double>> box_;
};

/// One RK4 step of x' = f(t, x).
Vector rk4_step(const NonlinearSystem& sys, double t, const Vector& x, double h);

/// Integrates from t0 to t1 in equal steps no longer than `step`. Throws LeftDomain.
Vector flow(const NonlinearSystem& sys, double t0, double t1, const Vector& x0, double step);

struct NonlinearRun {
  Trajectory state;
  Trajectory derivative;          // z(t) = f(t, x(t))
  bool jacobian_in_M_plus = false;
  bool sigma_checked = false;     // monotonicity of sigma(z) was asserted
};

/// RK4 along `grid` (default step: the grid spacing / 10). The sign-monotonicity assertions of
/// simulate_linear are applied to z = f(x) when the system is autonomous and every sampled
/// Jacobian is in M+. Throws LeftDomain, MonotonicityViolation.
NonlinearRun simulate_nonlinear(const NonlinearSystem& sys, const Vector& x0, const std::vector<double>& grid,
                                std::optional<double> step = std::nullopt, double rel_zero_tol = 1e-8);

struct MonotoneTail {
  double switch_time = 0.0;  // last sampled time at which the sign of x1(t,a0) - x1(t,b0) was different
  int sign = 0;              // sign on the tail
  double end_time = 0.0;     // end of the examined window (horizon, or earlier if trajectories merged)
};

/// Line-integral Jacobian int_0^1 J(t, b + r (a - b)) dr by 16-point Gauss-Legendre.
Matrix line_jacobian(const NonlinearSystem& sys, double t, const Vector& a, const Vector& b);

/// Finds the tail on which x1(t, a0) - x1(t, b0) keeps one strict sign. Requires the line
/// Jacobian in M+ at every sample (AssumptionViolated otherwise). Throws NoMonotoneTail.
MonotoneTail eventual_monotonicity(const NonlinearSystem& sys, const Vector& a0, const Vector& b0, double horizon,
                                   int samples = 2001, std::optional<double> step = std::nullopt);

struct PoincareResult {
  std::vector<Vector> iterates;        // x(kT), k = 0, 1, ...
  std::optional<int> detected_period;  // q: x is asymptotically qT-periodic
  std::vector<double> residuals;       // |x_k - x_{k-q}|_inf for the detected q (or q = 1), k >= q
  std::optional<int> transient_end;    // first k of the final run of small residuals
};

/// Iterates the period map. q is the smallest q <= q_max with |x_k - x_{k-q}| < tol for the last
/// 5 iterates; after a first detection the map is iterated 2 q_max more times before q is reported.
/// Throws NotPeriodic (no period), LeftDomain, NoConvergence.
PoincareResult poincare_analysis(const NonlinearSystem& sys, const Vector& x0, int max_iters = 400, int q_max = 8,
                                 double tol = 1e-6, std::optional<double> step = std::nullopt);

}  // namespace tpds
