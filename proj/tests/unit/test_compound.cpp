#include "tpds/compound.hpp"
#include "tpds/error.hpp"
#include "tpds/generators.hpp"
#include "tpds/total_positivity.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tpds;

namespace {

double rel(const Matrix& x, const Matrix& y) { return (x - y).norm() / std::max(1.0, y.norm()); }

bool metzler(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("multiplicative compound examples") {
  CHECK(rel(mult_compound(Matrix::Identity(3, 3), 2).entries, Matrix::Identity(3, 3)) == 0.0);
  const Matrix a = matrix_from_rows({{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  CHECK(rel(mult_compound(a, 2).entries, matrix_from_rows({{3, 2, 1}, {2, 4, 2}, {1, 2, 3}})) < 1e-14);
  CHECK(mult_compound(matrix_from_rows({{1, 2}, {3, 1}}), 2).entries(0, 0) == doctest::Approx(-5.0));
  CHECK(rel(mult_compound(a, 1).entries, a) == 0.0);
  CHECK_THROWS_AS(mult_compound(a, 4), Error);
  CHECK_THROWS_AS(mult_compound(a, 0), Error);
}

TEST_CASE("additive compound n = 3 layout") {
  const Matrix a = matrix_from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const Matrix expected = matrix_from_rows({{1 + 5, 6, -3}, {8, 1 + 9, 2}, {-7, 4, 5 + 9}});
  const CompoundMatrix c = add_compound(a, 2);
  CHECK(rel(c.entries, expected) == 0.0);
  CHECK(c.index_map[1] == IndexTuple{1, 3});
  CHECK(c.at({1, 3}, {2, 3}) == doctest::Approx(2.0));
  CHECK(rel(add_compound(a, 1).entries, a) == 0.0);
  CHECK(add_compound(a, 3).entries(0, 0) == doctest::Approx(15.0));
}

TEST_CASE("property: p = n additive compound is the trace") {
  gen::Rng rng(1);
  for (int n = 1; n <= 6; ++n) {
    const Matrix a = gen::gaussian(n, n, rng);
    CHECK(add_compound(a, n).entries(0, 0) == doctest::Approx(a.trace()));
    CHECK(mult_compound(a, n).entries(0, 0) == doctest::Approx(a.determinant()));
  }
}

TEST_CASE("property: Cauchy-Binet") {
  gen::Rng rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix a = gen::gaussian(n, n, rng);
    const Matrix b = gen::gaussian(n, n, rng);
    for (int p = 1; p <= n; ++p)
      CHECK(rel(mult_compound(a * b, p).entries, mult_compound(a, p).entries * mult_compound(b, p).entries) < 1e-12);
  }
}

TEST_CASE("property: additive compound is the derivative of the multiplicative compound") {
  gen::Rng rng(3);
  const double h = 1e-5;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix a = gen::gaussian(n, n, rng);
    for (int p = 1; p <= n; ++p) {
      const Matrix fd = (mult_compound(expm(h * a), p).entries - mult_compound(expm(-h * a), p).entries) / (2 * h);
      CHECK(rel(fd, add_compound(a, p).entries) < 1e-7);
    }
  }
}

TEST_CASE("property: exp of the additive compound is the compound of exp") {
  gen::Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix a = 0.5 * gen::gaussian(n, n, rng);
    for (int p = 1; p <= n; ++p)
      CHECK(rel(expm(add_compound(a, p).entries), mult_compound(expm(a), p).entries) < 1e-10);
  }
}

TEST_CASE("Metzler profile") {
  // Tridiagonal plus a21 > 0 and a12 > 0 only, as in the n = 4 example.
  Matrix a = matrix_from_rows({{-1, 2, 0, 0}, {1, -2, 3, 0}, {0, 4, -3, 5}, {0, 0, 6, -4}});
  for (const auto& [p, ok] : metzler_compound_profile(a)) CHECK_MESSAGE(ok, "p = " << p);

  Matrix b = a;
  b(0, 2) = 0.5;
  CHECK(metzler(b));
  CHECK_FALSE(metzler(add_compound(b, 2).entries));

  for (const auto& [p, ok] : metzler_compound_profile(Matrix::Zero(4, 4))) CHECK_MESSAGE(ok, "p = " << p);
}

TEST_CASE("property: M implies Metzler compounds, M+ adds irreducibility") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 5;
    const bool strict = trial % 2 == 0;
    const Matrix a = gen::tridiagonal(n, rng, strict ? 0.0 : 0.3);
    for (int p = 1; p <= n; ++p) {
      const Matrix c = add_compound(a, p).entries;
      CHECK(is_metzler(c));
      if (strict) CHECK(is_irreducible(c));
    }
  }
}

TEST_CASE("expm") {
  CHECK(rel(expm(Matrix::Zero(3, 3)), Matrix::Identity(3, 3)) == 0.0);
  const Matrix j = matrix_from_rows({{0, 1}, {0, 0}});
  CHECK(rel(expm(2.0 * j), matrix_from_rows({{1, 2}, {0, 1}})) < 1e-15);
}
