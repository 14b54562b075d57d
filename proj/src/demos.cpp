#include "tpds/demos.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tpds::demos {
namespace {

std::vector<Expr> parse_all(const std::vector<std::string>& src, const Scope& scope) {
  std::vector<Expr> out;
  out.reserve(src.size());
  for (const std::string& s : src) out.push_back(parse_expr(s, scope));
  return out;
}

std::vector<Expr> constants(const Matrix& m) {
  std::vector<Expr> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(Expr::number(m(i, j)));
  return out;
}

std::string tanh_of(int i, int n) { return (i >= 1 && i <= n) ? "tanh(x" + std::to_string(i) + ")" : ""; }

// -x_i + tanh(x_{i-1}) + tanh(x_{i+1}) + extra
std::vector<std::string> chain_rhs(int n, const std::vector<std::string>& extra) {
  std::vector<std::string> rhs;
  for (int i = 1; i <= n; ++i) {
    std::string s = "-x" + std::to_string(i);
    for (int k : {i - 1, i + 1})
      if (k >= 1 && k <= n) s += " + " + tanh_of(k, n);
    if (!extra[static_cast<std::size_t>(i - 1)].empty()) s += " + " + extra[static_cast<std::size_t>(i - 1)];
    rhs.push_back(s);
  }
  return rhs;
}

}  // namespace

Matrix switched_C() {
  return matrix_from_rows({{-1, 2, 0, 0}, {2, -6, 3, 0}, {0, 5, -1, 6}, {0, 0, 4, -1}});
}

Vector switched_z0() { return vector_from({-1, 5, -13, 17}); }

TimeVaryingSystem switched() {
  const Matrix c = switched_C();
  const Scope scope = Scope::time_only();
  const Expr z = Expr::number(0.0);
  const Expr t = parse_expr("t", scope);
  std::vector<Expr> b = {z, t, z, z, t, z, t, z, z, t, z, t, z, z, t, z};
  return TimeVaryingSystem(4, 0.0, 1.0,
                           {Segment{0.0, 0.25, constants(c)}, Segment{0.25, 0.5, std::move(b)},
                            Segment{0.5, 1.0, constants(c.transpose())}});
}

TimeVaryingSystem cosh2(double a, double b) {
  const Scope scope = Scope::time_only();
  return TimeVaryingSystem(2, a, b, {Segment{a, b, parse_all({"0", "t", "t", "0"}, scope)}});
}

TimeVaryingSystem sinusoidal2() {
  const double T = 2.0 * std::numbers::pi;
  return TimeVaryingSystem(2, 0.0, T, {Segment{0.0, T, parse_all({"0", "1 + sin(t)", "1 + sin(t)", "0"}, Scope::time_only())}},
                           T);
}

TimeVaryingSystem schwarz3() {
  const double T = 2.0 * std::numbers::pi;
  return TimeVaryingSystem(
      3, 0.0, T,
      {Segment{0.0, T, parse_all({"0", "1", "0", "3/2 - cos(t)", "0", "3/2 + cos(t)", "0", "1", "0"}, Scope::time_only())}},
      T);
}

NonlinearSystem takac() {
  const Scope scope = Scope::state(4, true);
  std::vector<Expr> rhs = parse_all({"x1 + x4 - 2*x1^3 + x1*u", "x1 + x2 - 2*x2^3 - x2*u",
                                     "x2 + x3 - 2*x3^3 + x3*u", "x3 + x4 - 2*x4^3 - x4*u"},
                                    scope);
  std::vector<Expr> jac = parse_all({"1 - 6*x1^2 + u", "0", "0", "1",  //
                                     "1", "1 - 6*x2^2 - u", "0", "0",  //
                                     "0", "1", "1 - 6*x3^2 + u", "0",  //
                                     "0", "0", "1", "1 - 6*x4^2 - u"},
                                    scope);
  return NonlinearSystem(std::move(rhs), parse_expr("cos(2*t)", Scope::time_only()), std::move(jac), std::numbers::pi,
                         std::vector<std::pair<double, double>>(4, {-2.0, 2.0}));
}

Vector takac_gamma(double t) { return vector_from({std::cos(t), std::sin(t), -std::cos(t), -std::sin(t)}); }

Vector takac_gamma_dot(double t) { return vector_from({-std::sin(t), std::cos(t), std::sin(t), -std::cos(t)}); }

NonlinearSystem entrain(int n, double period) {
  std::vector<std::string> extra(static_cast<std::size_t>(n));
  extra[0] = "sin(2*pi*t/" + format_double(period) + ")";
  const Scope scope = Scope::state(n, false);
  std::vector<std::string> jac;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) {
        jac.push_back("-1");
      } else if (std::abs(i - j) == 1) {
        jac.push_back("1/cosh(x" + std::to_string(j) + ")^2");
      } else {
        jac.push_back("0");
      }
    }
  }
  return NonlinearSystem(parse_all(chain_rhs(n, extra), scope), std::nullopt, parse_all(jac, scope), period,
                         std::vector<std::pair<double, double>>(static_cast<std::size_t>(n), {-3.0, 3.0}));
}

NonlinearSystem logistic3() {
  return NonlinearSystem(parse_all(chain_rhs(3, {"0.5", "-0.2", "0.1"}), Scope::state(3, false)), std::nullopt,
                         std::nullopt, std::nullopt, std::vector<std::pair<double, double>>(3, {-3.0, 3.0}));
}

}  // namespace tpds::demos
