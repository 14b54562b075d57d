#include "tpds/nonlinear.hpp"

#include "tpds/classify.hpp"
#include "tpds/error.hpp"

#include <Eigen/Eigenvalues>

#include <array>
#include <cmath>

namespace tpds {
namespace {

struct GaussLegendre {
  std::array<double, 16> nodes{};
  std::array<double, 16> weights{};
};

// Golub-Welsch on the Legendre Jacobi matrix, mapped to [0, 1].
const GaussLegendre& gauss_legendre16() {
  static const GaussLegendre rule = [] {
    constexpr int m = 16;
    Matrix jac = Matrix::Zero(m, m);
    for (int k = 1; k < m; ++k) {
      const double beta = k / std::sqrt(4.0 * k * k - 1.0);
      jac(k - 1, k) = beta;
      jac(k, k - 1) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(jac);
    GaussLegendre g;
    for (int k = 0; k < m; ++k) {
      const double v0 = es.eigenvectors()(0, k);
      g.nodes[static_cast<std::size_t>(k)] = 0.5 * (es.eigenvalues()(k) + 1.0);
      g.weights[static_cast<std::size_t>(k)] = v0 * v0;  // 2 v0^2 on [-1, 1], halved on [0, 1]
    }
    return g;
  }();
  return rule;
}

void check_expr(const Expr& e, int n, bool allow_input, const std::string& where) {
  if (e.max_state_index() > n) {
    throw Error(ErrorCode::UnknownIdentifier,
                where + ": x" + std::to_string(e.max_state_index()) + " exceeds the dimension " + std::to_string(n));
  }
  if (e.uses_input() && !allow_input) throw Error(ErrorCode::InvalidSystem, where + ": uses u but no input is given");
}

std::vector<double> check_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::InvalidSystem, "empty time grid");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorCode::InvalidSystem, "time grid must be strictly increasing");
  return grid;
}

double default_grid_step(const std::vector<double>& grid) {
  double h = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < grid.size(); ++k) h = std::min(h, grid[k] - grid[k - 1]);
  return std::isfinite(h) ? h / 10.0 : 1e-3;
}

void require_in_box(const NonlinearSystem& sys, const Vector& x, double t) {
  if (!sys.in_box(x)) {
    throw Error(ErrorCode::LeftDomain, "state left the domain box at t = " + format_double(t));
  }
}

}  // namespace

NonlinearSystem::NonlinearSystem(std::vector<Expr> rhs, std::optional<Expr> input,
                                 std::optional<std::vector<Expr>> jacobian, std::optional<double> period,
                                 std::vector<std::pair<double, double>> domain_box)
    : rhs_(std::move(rhs)),
      input_(std::move(input)),
      jacobian_(std::move(jacobian)),
      period_(period),
      box_(std::move(domain_box)) {
  const int dim = n();
  if (dim < 1) throw Error(ErrorCode::InvalidSystem, "right-hand side is empty");
  for (int i = 0; i < dim; ++i) check_expr(rhs_[static_cast<std::size_t>(i)], dim, input_.has_value(), "rhs " + std::to_string(i + 1));
  if (input_ && (input_->max_state_index() > 0 || input_->uses_input())) {
    throw Error(ErrorCode::UnknownIdentifier, "input may only depend on t");
  }
  if (jacobian_) {
    if (jacobian_->size() != static_cast<std::size_t>(dim * dim)) {
      throw Error(ErrorCode::InvalidSystem, "jacobian needs " + std::to_string(dim * dim) + " entries");
    }
    for (const Expr& e : *jacobian_) check_expr(e, dim, input_.has_value(), "jacobian");
  }
  if (box_.size() != static_cast<std::size_t>(dim)) {
    throw Error(ErrorCode::InvalidSystem, "domain box needs " + std::to_string(dim) + " intervals");
  }
  for (const auto& [lo, hi] : box_)
    if (!(lo < hi)) throw Error(ErrorCode::InvalidSystem, "domain box interval with lo >= hi");
  if (period_ && !(*period_ > 0.0)) throw Error(ErrorCode::InvalidSystem, "period must be positive");

  Vector center(dim);
  for (int i = 0; i < dim; ++i) center(i) = 0.5 * (box_[static_cast<std::size_t>(i)].first + box_[static_cast<std::size_t>(i)].second);
  (void)f(0.0, center);

  if (period_) {
    const double T = *period_;
    for (int k = 0; k < 100; ++k) {
      const double t = T * k / 100.0;
      const Vector d = f(t, center) - f(t + T, center);
      if (d.cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, f(t, center).cwiseAbs().maxCoeff())) {
        throw Error(ErrorCode::NotPeriodic, "f(t, x) differs from f(t + T, x) at t = " + format_double(t));
      }
    }
  }
}

bool NonlinearSystem::autonomous() const {
  for (const Expr& e : rhs_)
    if (e.uses_time() || e.uses_input()) return false;
  return true;
}

bool NonlinearSystem::in_box(const Vector& x) const {
  for (std::size_t i = 0; i < box_.size(); ++i) {
    const auto [lo, hi] = box_[i];
    const double slack = 1e-9 * (hi - lo);
    const double v = x(static_cast<Eigen::Index>(i));
    if (!(v >= lo - slack && v <= hi + slack)) return false;
  }
  return true;
}

Vector NonlinearSystem::f(double t, const Vector& x) const {
  EvalContext ctx{t, as_span(x), std::nullopt};
  if (input_) ctx.u = evaluate(*input_, EvalContext{t, std::nullopt, std::nullopt});
  Vector out(n());
  for (int i = 0; i < n(); ++i) out(i) = evaluate(rhs_[static_cast<std::size_t>(i)], ctx);
  return out;
}

Matrix NonlinearSystem::jacobian(double t, const Vector& x) const {
  const int dim = n();
  Matrix j(dim, dim);
  if (jacobian_) {
    EvalContext ctx{t, as_span(x), std::nullopt};
    if (input_) ctx.u = evaluate(*input_, EvalContext{t, std::nullopt, std::nullopt});
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) j(r, c) = evaluate((*jacobian_)[static_cast<std::size_t>(r * dim + c)], ctx);
    return j;
  }
  for (int c = 0; c < dim; ++c) {
    const double h = 1e-6 * std::max(1.0, std::abs(x(c)));
    Vector xp = x;
    Vector xm = x;
    xp(c) += h;
    xm(c) -= h;
    j.col(c) = (f(t, xp) - f(t, xm)) / (2.0 * h);
  }
  return j;
}

Vector rk4_step(const NonlinearSystem& sys, double t, const Vector& x, double h) {
  const Vector k1 = sys.f(t, x);
  const Vector k2 = sys.f(t + 0.5 * h, x + 0.5 * h * k1);
  const Vector k3 = sys.f(t + 0.5 * h, x + 0.5 * h * k2);
  const Vector k4 = sys.f(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vector flow(const NonlinearSystem& sys, double t0, double t1, const Vector& x0, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidSystem, "step must be positive");
  const auto steps = std::max<long>(1, static_cast<long>(std::ceil((t1 - t0) / step - 1e-9)));
  const double h = (t1 - t0) / static_cast<double>(steps);
  Vector x = x0;
  for (long k = 0; k < steps; ++k) {
    const double t = t0 + h * static_cast<double>(k);
    x = rk4_step(sys, t, x, h);
    require_in_box(sys, x, t + h);
  }
  return x;
}

NonlinearRun simulate_nonlinear(const NonlinearSystem& sys, const Vector& x0, const std::vector<double>& grid,
                                std::optional<double> step, double rel_zero_tol) {
  if (x0.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "x0 has the wrong dimension");
  check_grid(grid);
  require_in_box(sys, x0, grid.front());
  const double h = step.value_or(default_grid_step(grid));

  NonlinearRun run;
  run.state.times = grid;
  run.derivative.times = grid;
  run.jacobian_in_M_plus = true;
  Vector x = x0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) x = flow(sys, grid[k - 1], grid[k], x, h);
    run.state.states.push_back(x);
    run.derivative.states.push_back(sys.f(grid[k], x));
    if (run.jacobian_in_M_plus && !in_M_plus(sys.jacobian(grid[k], x))) run.jacobian_in_M_plus = false;
  }
  annotate_signs(run.state, rel_zero_tol);
  annotate_signs(run.derivative, rel_zero_tol);

  // For forced systems z' = J z + df/dt, so the variational argument only covers autonomous ones.
  const bool trivial = run.derivative.states.front().isZero(0.0);
  if (sys.autonomous() && run.jacobian_in_M_plus && !trivial) {
    assert_sign_monotone(run.derivative, sys.n() - 1);
    run.sigma_checked = true;
  }
  return run;
}

Matrix line_jacobian(const NonlinearSystem& sys, double t, const Vector& a, const Vector& b) {
  const GaussLegendre& gl = gauss_legendre16();
  Matrix acc = Matrix::Zero(sys.n(), sys.n());
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) acc += gl.weights[k] * sys.jacobian(t, b + gl.nodes[k] * (a - b));
  return acc;
}

MonotoneTail eventual_monotonicity(const NonlinearSystem& sys, const Vector& a0, const Vector& b0, double horizon,
                                   int samples, std::optional<double> step) {
  if (a0.size() != sys.n() || b0.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "initial states have the wrong dimension");
  if (a0 == b0) throw Error(ErrorCode::InvalidSystem, "the two initial states coincide");
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidSystem, "horizon must be positive");
  const std::vector<double> grid = linspace(0.0, horizon, std::max(samples, 2));
  require_in_box(sys, a0, 0.0);
  require_in_box(sys, b0, 0.0);
  const double h = step.value_or(default_grid_step(grid));

  Vector xa = a0;
  Vector xb = b0;
  std::vector<double> times;
  std::vector<double> diffs;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0) {
      xa = flow(sys, grid[k - 1], grid[k], xa, h);
      xb = flow(sys, grid[k - 1], grid[k], xb, h);
    }
    const double scale = std::max(1.0, xa.cwiseAbs().maxCoeff());
    if ((xa - xb).cwiseAbs().maxCoeff() < 1e-12 * scale) break;  // merged: the sign carries no information
    if (!in_M_plus(line_jacobian(sys, grid[k], xa, xb))) {
      throw Error(ErrorCode::AssumptionViolated,
                  "line-integral Jacobian is not tridiagonal with positive off-diagonals at t = " + format_double(grid[k]));
    }
    times.push_back(grid[k]);
    const double d = xa(0) - xb(0);
    diffs.push_back(std::abs(d) <= 1e-12 * scale ? 0.0 : d);
  }
  if (diffs.empty() || diffs.back() == 0.0) {
    throw Error(ErrorCode::NoMonotoneTail, "x1 difference is zero at the end of the window");
  }
  MonotoneTail tail;
  tail.sign = diffs.back() > 0.0 ? 1 : -1;
  tail.end_time = times.back();
  tail.switch_time = times.front();
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    const int s = diffs[k] > 0.0 ? 1 : diffs[k] < 0.0 ? -1 : 0;
    if (s != tail.sign) tail.switch_time = times[k];
  }
  return tail;
}

PoincareResult poincare_analysis(const NonlinearSystem& sys, const Vector& x0, int max_iters, int q_max, double tol,
                                 std::optional<double> step) {
  if (!sys.period()) throw Error(ErrorCode::NotPeriodic, "Poincare analysis needs a period");
  if (x0.size() != sys.n()) throw Error(ErrorCode::DimensionMismatch, "x0 has the wrong dimension");
  if (q_max < 1 || max_iters < 1) throw Error(ErrorCode::InvalidSystem, "max_iters and q_max must be positive");
  constexpr int kPersist = 5;
  const double T = *sys.period();
  const double h = step.value_or(T * 1e-3);
  require_in_box(sys, x0, 0.0);

  PoincareResult res;
  res.iterates.push_back(x0);
  std::vector<int> streak(static_cast<std::size_t>(q_max) + 1, 0);
  std::optional<int> stop_at;
  for (int k = 1; !stop_at || k <= *stop_at; ++k) {
    if (!stop_at && k > max_iters) {
      throw Error(ErrorCode::NoConvergence, "no period q <= " + std::to_string(q_max) + " detected in " +
                                                std::to_string(max_iters) + " periods");
    }
    res.iterates.push_back(flow(sys, (k - 1) * T, k * T, res.iterates.back(), h));
    for (int q = 1; q <= std::min(q_max, k); ++q) {
      const double r = (res.iterates[static_cast<std::size_t>(k)] - res.iterates[static_cast<std::size_t>(k - q)]).cwiseAbs().maxCoeff();
      streak[static_cast<std::size_t>(q)] = r < tol ? streak[static_cast<std::size_t>(q)] + 1 : 0;
      if (!stop_at && streak[static_cast<std::size_t>(q)] >= kPersist) stop_at = k + 2 * q_max;
    }
  }
  for (int q = 1; q <= q_max; ++q) {
    if (streak[static_cast<std::size_t>(q)] >= kPersist) {
      res.detected_period = q;
      break;
    }
  }
  const int q = res.detected_period.value_or(1);
  for (std::size_t k = static_cast<std::size_t>(q); k < res.iterates.size(); ++k) {
    res.residuals.push_back((res.iterates[k] - res.iterates[k - static_cast<std::size_t>(q)]).cwiseAbs().maxCoeff());
  }
  if (res.detected_period) {
    std::size_t first = res.residuals.size();
    while (first > 0 && res.residuals[first - 1] < tol) --first;
    res.transient_end = static_cast<int>(first) + q;
  } else {
    throw Error(ErrorCode::NoConvergence, "period detected and then lost during confirmation");
  }
  return res;
}

}  // namespace tpds
