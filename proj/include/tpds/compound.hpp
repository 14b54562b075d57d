#pragma once

#include "tpds/matrix.hpp"

#include <utility>
#include <vector>

namespace tpds {

/// C(n,p) x C(n,p) matrix whose rows and columns are labelled by the lexicographically
/// ordered p-subsets of {1..n}.
struct CompoundMatrix {
  int base_dim = 0;
  int order = 0;
  Matrix entries;
  std::vector<IndexTuple> index_map;

  /// Entry labelled (rows|cols).
  double at(const IndexTuple& rows, const IndexTuple& cols) const;
  /// Position of a label in `index_map`.
  Eigen::Index position(const IndexTuple& label) const;
};

/// p-th multiplicative compound: all p x p minors of A. Throws OrderOutOfRange.
CompoundMatrix mult_compound(const Matrix& a, int p);

/// p-th additive compound from the explicit entry rule. Throws OrderOutOfRange.
CompoundMatrix add_compound(const Matrix& a, int p);

/// (p, A^[p] is Metzler) for p = 1..n. Throws CrossCheckFailed if A^[1] and A^[2] are Metzler
/// but some higher compound is not.
std::vector<std::pair<int, bool>> metzler_compound_profile(const Matrix& a);

/// Matrix exponential (scaling and squaring with a degree-13 Pade approximant).
Matrix expm(const Matrix& a);

}  // namespace tpds
