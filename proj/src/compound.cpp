#include "tpds/compound.hpp"

#include "tpds/error.hpp"
#include "tpds/total_positivity.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>

namespace tpds {
namespace {

void check_order(const Matrix& a, int p) {
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, "compound of a non-square matrix");
  if (p < 1 || p > a.rows()) {
    throw Error(ErrorCode::OrderOutOfRange,
                "compound order " + std::to_string(p) + " outside 1.." + std::to_string(a.rows()));
  }
}

CompoundMatrix empty_compound(const Matrix& a, int p) {
  CompoundMatrix c;
  c.base_dim = static_cast<int>(a.rows());
  c.order = p;
  c.index_map = lex_subsets(c.base_dim, p);
  const auto m = static_cast<Eigen::Index>(c.index_map.size());
  c.entries = Matrix::Zero(m, m);
  return c;
}

}  // namespace

Eigen::Index CompoundMatrix::position(const IndexTuple& label) const {
  const auto it = std::lower_bound(index_map.begin(), index_map.end(), label);
  if (it == index_map.end() || *it != label) {
    throw Error(ErrorCode::DimensionMismatch, "label " + label.to_string() + " is not a " +
                                                  std::to_string(order) + "-subset of 1.." + std::to_string(base_dim));
  }
  return static_cast<Eigen::Index>(it - index_map.begin());
}

double CompoundMatrix::at(const IndexTuple& rows, const IndexTuple& cols) const {
  return entries(position(rows), position(cols));
}

CompoundMatrix mult_compound(const Matrix& a, int p) {
  check_order(a, p);
  CompoundMatrix c = empty_compound(a, p);
  const auto m = static_cast<Eigen::Index>(c.index_map.size());
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index s = 0; s < m; ++s)
      c.entries(r, s) = minor(a, c.index_map[static_cast<std::size_t>(r)], c.index_map[static_cast<std::size_t>(s)]);
  return c;
}

CompoundMatrix add_compound(const Matrix& a, int p) {
  check_order(a, p);
  CompoundMatrix c = empty_compound(a, p);
  const auto m = static_cast<Eigen::Index>(c.index_map.size());
  for (Eigen::Index r = 0; r < m; ++r) {
    const IndexTuple& alpha = c.index_map[static_cast<std::size_t>(r)];
    for (Eigen::Index s = 0; s < m; ++s) {
      const IndexTuple& beta = c.index_map[static_cast<std::size_t>(s)];
      if (r == s) {
        double sum = 0.0;
        for (int i : alpha) sum += a(i - 1, i - 1);
        c.entries(r, s) = sum;
        continue;
      }
      // Labels differing in exactly one index: alpha has i_l where beta has j_m.
      std::vector<int> only_alpha, only_beta;
      std::set_difference(alpha.begin(), alpha.end(), beta.begin(), beta.end(), std::back_inserter(only_alpha));
      std::set_difference(beta.begin(), beta.end(), alpha.begin(), alpha.end(), std::back_inserter(only_beta));
      if (only_alpha.size() != 1) continue;
      const auto l = std::find(alpha.begin(), alpha.end(), only_alpha[0]) - alpha.begin() + 1;
      const auto mpos = std::find(beta.begin(), beta.end(), only_beta[0]) - beta.begin() + 1;
      const double sign = ((l + mpos) % 2 == 0) ? 1.0 : -1.0;
      c.entries(r, s) = sign * a(only_alpha[0] - 1, only_beta[0] - 1);
    }
  }
  return c;
}

std::vector<std::pair<int, bool>> metzler_compound_profile(const Matrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, "compound of a non-square matrix");
  const int n = static_cast<int>(a.rows());
  std::vector<std::pair<int, bool>> out;
  for (int p = 1; p <= n; ++p) out.emplace_back(p, is_metzler(add_compound(a, p).entries));
  const bool low_orders = out[0].second && (n < 2 || out[1].second);
  if (low_orders) {
    for (const auto& [p, metzler] : out) {
      if (!metzler) {
        throw Error(ErrorCode::CrossCheckFailed, "A^[1], A^[2] Metzler but A^[" + std::to_string(p) + "] is not");
      }
    }
  }
  return out;
}

Matrix expm(const Matrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, "expm of a non-square matrix");
  return a.exp();
}

}  // namespace tpds
