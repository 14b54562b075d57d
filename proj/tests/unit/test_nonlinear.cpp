#include "helpers.hpp"

#include "tpds/classify.hpp"
#include "tpds/demos.hpp"
#include "tpds/nonlinear.hpp"
#include "tpds/ode.hpp"

#include <cmath>
#include <numbers>

using namespace tpds;
using testutil::code_of;

namespace {

std::vector<Expr> exprs(std::initializer_list<const char*> src, int n, bool input) {
  std::vector<Expr> out;
  for (const char* s : src) out.push_back(parse_expr(s, Scope::state(n, input)));
  return out;
}

std::vector<std::pair<double, double>> box(int n, double r) { return std::vector<std::pair<double, double>>(n, {-r, r}); }

}  // namespace

TEST_CASE("nonlinear system validation") {
  CHECK(code_of([] { NonlinearSystem({}, std::nullopt, std::nullopt, std::nullopt, {}); }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] { NonlinearSystem(exprs({"x1"}, 1, false), std::nullopt, std::nullopt, std::nullopt, box(2, 1)); }) ==
        ErrorCode::InvalidSystem);
  CHECK(code_of([] {
          NonlinearSystem(exprs({"x1*u"}, 1, true), std::nullopt, std::nullopt, std::nullopt, box(1, 1));
        }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] {
          NonlinearSystem(exprs({"sin(t)"}, 1, false), std::nullopt, std::nullopt, 1.0, box(1, 1));
        }) == ErrorCode::NotPeriodic);
}

TEST_CASE("finite-difference Jacobian matches the analytic one") {
  const NonlinearSystem with = demos::entrain(3);
  const NonlinearSystem without(with.rhs(), std::nullopt, std::nullopt, with.period(), with.domain_box());
  CHECK(without.finite_difference_jacobian());
  const Vector x = vector_from({0.3, -1.2, 2.0});
  CHECK((with.jacobian(0.7, x) - without.jacobian(0.7, x)).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK(in_M_plus(with.jacobian(0.7, x)));
}

TEST_CASE("cyclic counterexample follows its periodic orbit") {
  const NonlinearSystem sys = demos::takac();
  for (int k = 0; k <= 1000; ++k) {
    const double t = 4 * std::numbers::pi * k / 1000;
    CHECK((demos::takac_gamma_dot(t) - sys.f(t, demos::takac_gamma(t))).cwiseAbs().maxCoeff() <= 1e-10);
  }
  const auto grid = linspace(0, 4 * std::numbers::pi, 401);
  const NonlinearRun run = simulate_nonlinear(sys, demos::takac_gamma(0), grid, 1e-3);
  for (std::size_t k = 0; k < grid.size(); ++k)
    CHECK((run.state.states[k] - demos::takac_gamma(grid[k])).cwiseAbs().maxCoeff() <= 1e-6);
  CHECK_FALSE(run.jacobian_in_M_plus);
  CHECK_FALSE(run.sigma_checked);
}

TEST_CASE("sign variation of the derivative along a cooperative chain") {
  const NonlinearSystem sys = demos::logistic3();
  CHECK(sys.autonomous());
  const NonlinearRun run = simulate_nonlinear(sys, vector_from({0.5, -1, 2}), linspace(0, 10, 1001));
  CHECK(run.jacobian_in_M_plus);
  CHECK(run.sigma_checked);
  int last = 2;
  for (std::size_t k = 0; k < run.derivative.size(); ++k) {
    CHECK(run.derivative.s_plus[k] <= last);
    last = std::min(last, run.derivative.s_plus[k]);
  }
}

TEST_CASE("zero right-hand side") {
  const NonlinearSystem sys(exprs({"0", "0"}, 2, false), std::nullopt, std::nullopt, std::nullopt, box(2, 1));
  const NonlinearRun run = simulate_nonlinear(sys, vector_from({0.2, -0.4}), linspace(0, 1, 11));
  for (const Vector& x : run.state.states) CHECK(x == vector_from({0.2, -0.4}));
}

TEST_CASE("leaving the domain") {
  const NonlinearSystem sys(exprs({"x1"}, 1, false), std::nullopt, std::nullopt, std::nullopt, box(1, 2));
  CHECK(code_of([&] { simulate_nonlinear(sys, vector_from({1}), linspace(0, 2, 21)); }) == ErrorCode::LeftDomain);
}

TEST_CASE("line Jacobian") {
  // f linear: the line integral is the matrix itself.
  const NonlinearSystem lin(exprs({"-x1 + 2*x2", "x1 - 3*x2"}, 2, false), std::nullopt,
                            exprs({"-1", "2", "1", "-3"}, 2, false), std::nullopt, box(2, 5));
  CHECK((line_jacobian(lin, 0, vector_from({1, 2}), vector_from({-1, 0})) - matrix_from_rows({{-1, 2}, {1, -3}}))
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  // f = x^3: int_0^1 3 (b + r (a - b))^2 dr = a^2 + a b + b^2.
  const NonlinearSystem cube(exprs({"x1^3"}, 1, false), std::nullopt, exprs({"3*x1^2"}, 1, false), std::nullopt,
                             box(1, 5));
  CHECK(line_jacobian(cube, 0, vector_from({2}), vector_from({-1}))(0, 0) == doctest::Approx(4 - 2 + 1));
}

TEST_CASE("eventual monotonicity") {
  const NonlinearSystem sys = demos::entrain(3);
  const MonotoneTail tail = eventual_monotonicity(sys, vector_from({0.5, -1, 2}), vector_from({0.6, -1.2, 2.1}), 20);
  CHECK(tail.sign != 0);
  CHECK(tail.switch_time < tail.end_time);

  CHECK(code_of([&] { eventual_monotonicity(sys, vector_from({1, 1, 1}), vector_from({1, 1, 1}), 5); }) ==
        ErrorCode::InvalidSystem);

  const NonlinearSystem cyc = demos::takac();
  const Vector a0 = demos::takac_gamma(0);
  Vector b0 = a0;
  b0(1) += 1e-2;
  CHECK(code_of([&] { eventual_monotonicity(cyc, a0, b0, 5); }) == ErrorCode::AssumptionViolated);
}

TEST_CASE("period detection") {
  const NonlinearSystem sys = demos::entrain(3);
  const PoincareResult pr = poincare_analysis(sys, vector_from({0.5, -1, 2}));
  CHECK(pr.detected_period == 1);
  REQUIRE(pr.transient_end);
  for (std::size_t k = static_cast<std::size_t>(*pr.transient_end); k < pr.residuals.size(); ++k)
    CHECK(pr.residuals[k] < 1e-6);

  Vector x0 = demos::takac_gamma(0);
  x0(0) += 1e-3;
  CHECK(poincare_analysis(demos::takac(), x0).detected_period == 2);

  // Equilibrium of a forced-looking but autonomous system with a period set.
  const NonlinearSystem still(exprs({"-x1", "-x2"}, 2, false), std::nullopt, std::nullopt, 1.0, box(2, 1));
  const PoincareResult eq = poincare_analysis(still, Vector::Zero(2));
  CHECK(eq.detected_period == 1);
  CHECK(eq.residuals.front() == 0.0);

  CHECK(code_of([] { poincare_analysis(demos::logistic3(), Vector::Zero(3)); }) == ErrorCode::NotPeriodic);
  // Rotation never settles.
  const NonlinearSystem rot(exprs({"-x2", "x1"}, 2, false), std::nullopt, std::nullopt, 1.0, box(2, 2));
  CHECK(code_of([&] { poincare_analysis(rot, vector_from({1, 0}), 40); }) == ErrorCode::NoConvergence);
}
