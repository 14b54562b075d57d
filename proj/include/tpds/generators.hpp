#pragma once

#include "tpds/matrix.hpp"
#include "tpds/system.hpp"

#include <random>

namespace tpds::gen {

using Rng = std::mt19937_64;

/// Product of elementary bidiagonal factors in the canonical order
/// (L_n)(L_{n-1} L_n)...(L_2...L_n) D (U_n...U_2)...(U_n U_{n-1})(U_n), with multipliers in
/// [0.2, 2] and D in [0.5, 2]. Each multiplier is zeroed with probability `zero_prob`.
/// zero_prob = 0 gives a TP matrix; otherwise the result is TN.
Matrix eb_product(int n, Rng& rng, double zero_prob = 0.0);

inline Matrix random_tp(int n, Rng& rng) { return eb_product(n, rng, 0.0); }
inline Matrix random_tn(int n, Rng& rng) { return eb_product(n, rng, 0.35); }

/// Standard normal entries.
Matrix gaussian(int rows, int cols, Rng& rng);
Vector gaussian_vector(int n, Rng& rng);

/// Random nonzero vector whose entries are zero with probability `zero_prob` (at least one
/// entry is nonzero). Nonzero entries are integers in [-3, 3] \ {0} or normals, chosen at random.
Vector sparse_vector(int n, Rng& rng, double zero_prob = 0.25);

/// Tridiagonal matrix; off-diagonals in [0.1, 2] (zeroed with probability `zero_prob`),
/// diagonal in [-3, 1].
Matrix tridiagonal(int n, Rng& rng, double zero_prob = 0.0);

/// Matrix with a random mix of structure: M+, M, Metzler non-tridiagonal, or general. Entries
/// bounded by 1 in absolute value.
Matrix mixed_constant(int n, Rng& rng);

/// Random system with A(t) in M+ for all t: off-diagonals c + d sin(w t + phi) with c >= |d| + 0.2,
/// diagonals constant or cosine; on [0, T] with period T when `periodic`. Some systems are split
/// into two segments with different coefficients.
TimeVaryingSystem tpds_system(int n, Rng& rng, bool periodic);

}  // namespace tpds::gen
