#pragma once

#include "tpds/error.hpp"
#include "tpds/matrix.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tpds {

/// Relative uncertainty assumed for every floating-point entry when the sign of a minor is
/// decided. A minor counts as nonzero only if no matrix within this entrywise perturbation
/// (plus the LU backward error) is singular; otherwise it counts as zero.
inline constexpr double kMinorRelTol = 1e-13;

/// Largest order accepted by exhaustive minor enumeration.
inline constexpr int kExhaustiveLimit = 10;

/// Determinant of A(rows|cols). Exact (fraction-free) for integral matrices of moderate size,
/// cofactor expansion up to order 3, LU with partial pivoting above.
double minor(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols);

/// Determinant of a square matrix by the same rules as `minor`.
double determinant(const Matrix& a);

/// Sign of the minor (-1, 0, +1) under the scale-aware zero rule (exact for integral input).
int minor_sign(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols,
               double rel_tol = kMinorRelTol);

struct MinorWitness {
  IndexTuple rows;
  IndexTuple cols;
  double value = 0.0;
};

struct Classification {
  bool is_TN = false;
  bool is_TP = false;
  bool is_SSR = false;
  bool is_oscillatory = false;
  bool nonsingular = false;
  bool irreducible = false;
  /// First minor violating TN, or (for TN matrices) the first violating TP.
  std::optional<MinorWitness> witness;
};

/// Exhaustive classification over all minors. Throws SizeLimitExceeded for n > 10 and
/// CrossCheckFailed if an oscillatory matrix has a non-TP (n-1)-th power.
Classification classify(const Matrix& a, double rel_tol = kMinorRelTol);

/// TP test using initial minors only (contiguous rows and columns, one of them starting at 1).
bool is_tp_initial_minors(const Matrix& a, double rel_tol = kMinorRelTol);

/// Tridiagonal dominance test b_i, c_i >= 0 and a_i >= b_i + c_{i-1}. Throws NotTridiagonal.
bool is_dominant_tridiagonal_TN(const Matrix& a);

struct GEBFactorization {
  /// Lower-type factors, then a diagonal factor, then upper-type factors; identity factors omitted.
  std::vector<Matrix> factors;
  double residual_error = 0.0;  // relative Frobenius error of the product

  Matrix product(Eigen::Index n) const;
};

/// Bidiagonal factorization of a TN matrix by Neville elimination (no pivoting). Zero rows met
/// during elimination are shifted down by a TN GEB factor; any other zero-pivot pattern throws
/// PivotBreakdown. Throws NotTN when the input is not TN.
GEBFactorization geb_factorize(const Matrix& a);

/// Diagonal plus at most one entry on the first sub- or super-diagonal, all entries >= -tol.
bool is_tn_geb(const Matrix& f, double tol = 1e-12);

struct SpectralPair {
  double eigenvalue = 0.0;
  Vector eigenvector;  // unit 2-norm, first nonzero entry positive
  int sign_count = 0;  // s^- = s^+ of the eigenvector
};

/// Eigen-decomposition of an oscillatory matrix, sorted by decreasing eigenvalue. Throws
/// SpectralViolation when eigenvalues are not real/positive/distinct or the k-th
/// eigenvector does not have exactly k-1 sign changes.
std::vector<SpectralPair> oscillatory_spectrum(const Matrix& a);

/// Shared post-processing for real spectra: truncates imaginary parts up to
/// `imag_tol * spectral radius`, sorts descending, normalizes, and enforces the
/// sign-count structure. Throws `violation` on failure.
std::vector<SpectralPair> ordered_real_spectrum(const Matrix& a, double imag_tol, ErrorCode violation);

struct SvdpResult {
  int s_minus_in = 0;
  int s_plus_out = 0;
  bool holds = false;
};

/// s^+(Ax) <= s^-(x). Throws ZeroVector for x == 0.
SvdpResult svdp_check(const Matrix& a, const Vector& x);

struct ColumnSetResult {
  bool minors_same_sign = false;
  bool sampled_bound_holds = false;
  std::optional<Vector> violating_coefficients;
};

/// Compares "all maximal minors of U nonzero with a common sign" against the bound
/// s^+(Uc) <= m-1, probed with `trials` random coefficient vectors plus the null vectors of
/// every (m-1)-row submatrix. Throws RankDeficient or DimensionMismatch (m >= n).
ColumnSetResult column_set_equivalence(const Matrix& u, int trials, std::uint64_t seed = 1);

struct StrongSvdpReport {
  bool holds = true;
  std::optional<Vector> counterexample;
};

/// Decides s^+(Ax) <= s^-(x) for all x != 0 by enumerating the sign patterns of x and, for each,
/// every alternating target pattern of Ax as a polyhedral feasibility problem (vertex enumeration).
/// `random_per_pattern` random vectors are tried per pattern as well.
StrongSvdpReport strong_svdp_by_patterns(const Matrix& a, int random_per_pattern = 8, std::uint64_t seed = 1);

}  // namespace tpds
