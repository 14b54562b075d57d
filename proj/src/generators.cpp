#include "tpds/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tpds::gen {
namespace {

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// I + m E_{row, col}, 1-based.
Matrix elementary(int n, int row, int col, double m) {
  Matrix e = Matrix::Identity(n, n);
  e(row - 1, col - 1) = m;
  return e;
}

std::string periodic_term(Rng& rng, double c, double d, double omega) {
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return format_double(c) + " + " + format_double(d) + "*sin(" + format_double(omega) + "*t + " + format_double(phi) + ")";
}

std::vector<Expr> tpds_entries(int n, Rng& rng, double omega) {
  std::vector<Expr> out;
  const Scope scope = Scope::time_only();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        const double base = uniform(rng, -2.0, 1.0);
        out.push_back(coin(rng, 0.5) ? Expr::number(base)
                                     : parse_expr(format_double(base) + " + " + format_double(uniform(rng, 0.0, 1.0)) +
                                                      "*cos(" + format_double(omega) + "*t)",
                                                  scope));
      } else if (std::abs(i - j) == 1) {
        const double d = uniform(rng, -1.0, 1.0);
        const double c = std::abs(d) + uniform(rng, 0.2, 1.5);
        out.push_back(parse_expr(periodic_term(rng, c, d, omega), scope));
      } else {
        out.push_back(Expr::number(0.0));
      }
    }
  }
  return out;
}

}  // namespace

Matrix eb_product(int n, Rng& rng, double zero_prob) {
  const auto mult = [&] { return coin(rng, zero_prob) ? 0.0 : uniform(rng, 0.2, 2.0); };
  Matrix a = Matrix::Identity(n, n);
  // (L_n)(L_{n-1} L_n)...(L_2 ... L_n), L_k = I + m E_{k,k-1}
  for (int g = 1; g <= n - 1; ++g)
    for (int k = n - g + 1; k <= n; ++k) a = a * elementary(n, k, k - 1, mult());
  Matrix d = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = uniform(rng, 0.5, 2.0);
  a = a * d;
  // (U_n ... U_2)...(U_n U_{n-1})(U_n), U_k = I + m E_{k-1,k}
  for (int g = n - 1; g >= 1; --g)
    for (int k = n; k >= n - g + 1; --k) a = a * elementary(n, k - 1, k, mult());
  return a;
}

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = nd(rng);
  return m;
}

Vector gaussian_vector(int n, Rng& rng) { return gaussian(n, 1, rng).col(0); }

Vector sparse_vector(int n, Rng& rng, double zero_prob) {
  const bool integral = coin(rng, 0.5);
  std::normal_distribution<double> nd;
  std::uniform_int_distribution<int> pick(1, 3);
  Vector x = Vector::Zero(n);
  while (x.isZero(0.0)) {
    for (int i = 0; i < n; ++i) {
      if (coin(rng, zero_prob)) {
        x(i) = 0.0;
      } else {
        x(i) = integral ? (coin(rng, 0.5) ? 1 : -1) * pick(rng) : nd(rng);
      }
    }
  }
  return x;
}

Matrix tridiagonal(int n, Rng& rng, double zero_prob) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = uniform(rng, -3.0, 1.0);
  for (int i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = coin(rng, zero_prob) ? 0.0 : uniform(rng, 0.1, 2.0);
    a(i + 1, i) = coin(rng, zero_prob) ? 0.0 : uniform(rng, 0.1, 2.0);
  }
  return a;
}

Matrix mixed_constant(int n, Rng& rng) {
  const auto mag = [&] { return uniform(rng, 0.1, 1.0); };
  const int kind = std::uniform_int_distribution<int>(0, 3)(rng);
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = uniform(rng, -1.0, 1.0);
  if (kind == 3 || (kind == 2 && n < 3)) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) a(i, j) = (coin(rng, 0.5) ? 1.0 : -1.0) * mag();
    return a;
  }
  for (int i = 0; i + 1 < n; ++i) {
    a(i, i + 1) = mag();
    a(i + 1, i) = mag();
  }
  if (kind == 1 && n > 1) {
    // Drop at least one band entry.
    const int i = std::uniform_int_distribution<int>(0, n - 2)(rng);
    (coin(rng, 0.5) ? a(i, i + 1) : a(i + 1, i)) = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      if (coin(rng, 0.2)) a(k, k + 1) = 0.0;
      if (coin(rng, 0.2)) a(k + 1, k) = 0.0;
    }
  } else if (kind == 2) {
    std::vector<std::pair<int, int>> far;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (std::abs(i - j) > 1) far.emplace_back(i, j);
    const auto [i, j] = far[std::uniform_int_distribution<std::size_t>(0, far.size() - 1)(rng)];
    a(i, j) = mag();
  }
  return a;
}

TimeVaryingSystem tpds_system(int n, Rng& rng, bool periodic) {
  if (periodic) {
    const double T = uniform(rng, 1.0, 4.0);
    const double omega = 2.0 * std::numbers::pi / T * (coin(rng, 0.5) ? 1.0 : 2.0);
    return TimeVaryingSystem(n, 0.0, T, {Segment{0.0, T, tpds_entries(n, rng, omega)}}, T);
  }
  const double len = uniform(rng, 0.5, 2.0);
  const double omega = uniform(rng, 0.5, 6.0);
  if (coin(rng, 0.5)) return TimeVaryingSystem(n, 0.0, len, {Segment{0.0, len, tpds_entries(n, rng, omega)}});
  const double mid = len * uniform(rng, 0.3, 0.7);
  return TimeVaryingSystem(n, 0.0, len,
                           {Segment{0.0, mid, tpds_entries(n, rng, omega)}, Segment{mid, len, tpds_entries(n, rng, omega)}});
}

}  // namespace tpds::gen
