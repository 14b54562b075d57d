#include "tpds/total_positivity.hpp"

#include "tpds/error.hpp"
#include "tpds/sign_variation.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <random>

namespace tpds {
namespace {

using Int = __int128;

// Fraction-free Gaussian elimination; exact as long as every intermediate minor squared fits.
double bareiss_determinant(const Matrix& s) {
  const Eigen::Index k = s.rows();
  std::vector<Int> m(static_cast<std::size_t>(k * k));
  auto at = [&](Eigen::Index i, Eigen::Index j) -> Int& { return m[static_cast<std::size_t>(i * k + j)]; };
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) at(i, j) = static_cast<Int>(static_cast<long long>(s(i, j)));
  Int prev = 1;
  int sign = 1;
  for (Eigen::Index p = 0; p < k - 1; ++p) {
    if (at(p, p) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index r = p + 1; r < k; ++r)
        if (at(r, p) != 0) {
          swap = r;
          break;
        }
      if (swap < 0) return 0.0;
      for (Eigen::Index j = 0; j < k; ++j) std::swap(at(p, j), at(swap, j));
      sign = -sign;
    }
    for (Eigen::Index i = p + 1; i < k; ++i) {
      for (Eigen::Index j = p + 1; j < k; ++j) at(i, j) = (at(i, j) * at(p, p) - at(i, p) * at(p, j)) / prev;
      at(i, p) = 0;
    }
    prev = at(p, p);
  }
  const Int det = at(k - 1, k - 1) * sign;
  return static_cast<double>(det);
}

bool exact_path_ok(const Matrix& s) {
  if (!is_integral(s)) return false;
  // Hadamard bound on every minor; squares must fit in 127 bits.
  double bound = 1.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) bound *= std::max(1.0, s.row(i).norm());
  return bound < 1e18;
}

double float_determinant(const Matrix& s) {
  switch (s.rows()) {
    case 0: return 1.0;
    case 1: return s(0, 0);
    case 2: return s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    case 3:
      return s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1)) -
             s(0, 1) * (s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0)) +
             s(0, 2) * (s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0));
    default: return s.partialPivLu().determinant();
  }
}

double row_scale(const Matrix& s) {
  double scale = 1.0;
  for (Eigen::Index i = 0; i < s.rows(); ++i) scale *= s.row(i).cwiseAbs().maxCoeff();
  return scale;
}

struct SignedMinor {
  double value;
  int sign;
};

// Sign of det(s) is certain when no matrix within the entry uncertainty `entry_tol` and the LU
// backward error is singular. Sufficient test: || |s^-1| (entry_tol |s| + gamma |L||U|) ||_inf < 1/2.
bool sign_certified(const Matrix& s, const Eigen::PartialPivLU<Matrix>& lu, double entry_tol) {
  const Eigen::Index k = s.rows();
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double gamma = 3 * k * u / (1 - 3 * k * u);
  const Matrix& packed = lu.matrixLU();
  const Matrix l = Matrix(packed.triangularView<Eigen::UnitLower>()).cwiseAbs();
  const Matrix r = Matrix(packed.triangularView<Eigen::Upper>()).cwiseAbs();
  const Matrix perturbation = entry_tol * s.cwiseAbs() + gamma * (lu.permutationP().transpose() * (l * r));
  const Matrix inv = lu.inverse();
  if (!inv.allFinite()) return false;
  return (inv.cwiseAbs() * perturbation).rowwise().sum().maxCoeff() < 0.5;
}

SignedMinor signed_minor(const Matrix& s, double rel_tol, bool exact) {
  if (exact) {
    const double v = bareiss_determinant(s);
    return {v, (v > 0) - (v < 0)};
  }
  const double v = float_determinant(s);
  if (s.rows() == 1 || v == 0.0) return {v, (v > 0) - (v < 0)};
  const Eigen::PartialPivLU<Matrix> lu(s);
  if (!sign_certified(s, lu, rel_tol)) return {v, 0};
  // The certificate covers the LU value; the closed forms for k <= 3 agree with it in sign.
  const double lu_value = lu.determinant();
  return {v, lu_value > 0 ? 1 : -1};
}

void require_square(const Matrix& a, const char* what) {
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " requires a square matrix");
}

// Positivity pattern of the compound of A^power, from the pattern of the compound of A
// (Cauchy-Binet: for TN input every term of the sum is nonnegative).
bool pattern_power_positive(const std::vector<std::vector<char>>& pattern, int power) {
  const std::size_t m = pattern.size();
  std::vector<std::vector<char>> acc = pattern;
  for (int step = 1; step < power; ++step) {
    std::vector<std::vector<char>> next(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k)
        if (acc[i][k])
          for (std::size_t j = 0; j < m; ++j) next[i][j] = next[i][j] || pattern[k][j];
    acc = std::move(next);
  }
  for (const auto& row : acc)
    for (char v : row)
      if (!v) return false;
  return true;
}

}  // namespace

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  if (a.rows() >= 2 && exact_path_ok(a)) return bareiss_determinant(a);
  return float_determinant(a);
}

double minor(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols) {
  if (rows.size() != cols.size() || rows.empty()) {
    throw Error(ErrorCode::DimensionMismatch,
                "minor needs index tuples of equal positive length, got " + rows.to_string() + " and " + cols.to_string());
  }
  return determinant(submatrix(a, rows, cols));
}

int minor_sign(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols, double rel_tol) {
  if (rows.size() != cols.size() || rows.empty())
    throw Error(ErrorCode::DimensionMismatch, "minor needs index tuples of equal positive length");
  const Matrix s = submatrix(a, rows, cols);
  return signed_minor(s, rel_tol, exact_path_ok(s)).sign;
}

Classification classify(const Matrix& a, double rel_tol) {
  require_square(a, "classify");
  const int n = static_cast<int>(a.rows());
  if (n > kExhaustiveLimit) {
    throw Error(ErrorCode::SizeLimitExceeded,
                "exhaustive classification is limited to n <= " + std::to_string(kExhaustiveLimit));
  }
  const bool exact = exact_path_ok(a);

  Classification out;
  out.is_TN = true;
  out.is_TP = true;
  out.is_SSR = true;
  std::optional<MinorWitness> tn_witness;
  std::optional<MinorWitness> tp_witness;
  int full_sign = 0;
  std::vector<std::vector<std::vector<char>>> positive(static_cast<std::size_t>(n) + 1);

  for (int k = 1; k <= n; ++k) {
    const auto sets = lex_subsets(n, k);
    int order_sign = 0;
    auto& pattern = positive[static_cast<std::size_t>(k)];
    pattern.assign(sets.size(), std::vector<char>(sets.size(), 0));
    for (std::size_t ri = 0; ri < sets.size(); ++ri) {
      const auto& r = sets[ri];
      for (std::size_t ci = 0; ci < sets.size(); ++ci) {
        const auto& c = sets[ci];
        const SignedMinor m = signed_minor(submatrix(a, r, c), rel_tol, exact);
        pattern[ri][ci] = m.sign > 0;
        if (m.sign < 0 && out.is_TN) {
          out.is_TN = false;
          tn_witness = MinorWitness{r, c, m.value};
        }
        if (m.sign <= 0 && out.is_TP) {
          out.is_TP = false;
          tp_witness = MinorWitness{r, c, m.value};
        }
        if (out.is_SSR) {
          if (m.sign == 0 || (order_sign != 0 && m.sign != order_sign)) out.is_SSR = false;
          order_sign = m.sign;
        }
        if (k == n) full_sign = m.sign;
      }
    }
  }
  out.nonsingular = full_sign != 0;
  out.irreducible = is_irreducible(a);
  out.is_oscillatory = out.is_TN && out.nonsingular && out.irreducible;
  out.witness = out.is_TN ? tp_witness : tn_witness;

  // A^{n-1} must be TP. Its minors are badly conditioned (det A^{n-1} = (det A)^{n-1}), so the
  // check runs on the positivity pattern of the compounds instead of on floating-point minors.
  if (out.is_oscillatory && n > 1) {
    for (int k = 1; k <= n; ++k) {
      if (!pattern_power_positive(positive[static_cast<std::size_t>(k)], n - 1)) {
        throw Error(ErrorCode::CrossCheckFailed,
                    "oscillatory matrix whose (n-1)-th power has a vanishing minor of order " + std::to_string(k));
      }
    }
  }
  return out;
}

bool is_tp_initial_minors(const Matrix& a, double rel_tol) {
  require_square(a, "is_tp_initial_minors");
  const int n = static_cast<int>(a.rows());
  auto contiguous = [](int first, int len) {
    std::vector<int> v(static_cast<std::size_t>(len));
    for (int k = 0; k < len; ++k) v[static_cast<std::size_t>(k)] = first + k;
    return IndexTuple(std::move(v));
  };
  for (int k = 1; k <= n; ++k) {
    const IndexTuple lead = contiguous(1, k);
    for (int first = 1; first + k - 1 <= n; ++first) {
      const IndexTuple band = contiguous(first, k);
      if (minor_sign(a, band, lead, rel_tol) <= 0) return false;
      if (minor_sign(a, lead, band, rel_tol) <= 0) return false;
    }
  }
  return true;
}

bool is_dominant_tridiagonal_TN(const Matrix& a) {
  require_square(a, "is_dominant_tridiagonal_TN");
  if (!is_tridiagonal(a)) throw Error(ErrorCode::NotTridiagonal, "dominance test needs a tridiagonal matrix");
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double b = i + 1 < n ? a(i, i + 1) : 0.0;  // super-diagonal in row i
    const double c_prev = i > 0 ? a(i, i - 1) : 0.0;  // sub-diagonal in row i
    if (b < 0.0 || c_prev < 0.0) return false;
    if (a(i, i) < b + c_prev) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Bidiagonal factorization

Matrix GEBFactorization::product(Eigen::Index n) const {
  Matrix p = Matrix::Identity(n, n);
  for (const auto& f : factors) p = p * f;
  return p;
}

namespace {

// Eliminates below the diagonal with adjacent-row operations, bottom-up within each column.
// On return original = F_1 F_2 ... F_k * m.
std::vector<Matrix> neville_pass(Matrix& m, double tol) {
  const Eigen::Index n = m.rows();
  std::vector<Matrix> left;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    for (Eigen::Index i = n - 1; i > k; --i) {
      if (std::abs(m(i, k)) <= tol) {
        m(i, k) = 0.0;
        continue;
      }
      if (std::abs(m(i - 1, k)) <= tol) {
        if (m.row(i - 1).cwiseAbs().maxCoeff() > tol) {
          throw Error(ErrorCode::PivotBreakdown, "zero pivot above a nonzero entry in column " +
                                                     std::to_string(k + 1) + " with a nonzero row " +
                                                     std::to_string(i));
        }
        // m = G m' with m' = m except row i-1 := row i, row i := 0.
        Matrix g = Matrix::Identity(n, n);
        g(i - 1, i - 1) = 0.0;
        g(i, i - 1) = 1.0;
        m.row(i - 1) = m.row(i);
        m.row(i).setZero();
        left.push_back(std::move(g));
        continue;
      }
      const double mult = m(i, k) / m(i - 1, k);
      if (mult < 0.0) {
        throw Error(ErrorCode::NotTN, "negative Neville multiplier in column " + std::to_string(k + 1));
      }
      m.row(i) -= mult * m.row(i - 1);
      m(i, k) = 0.0;
      Matrix l = Matrix::Identity(n, n);
      l(i, i - 1) = mult;
      left.push_back(std::move(l));
    }
  }
  return left;
}

}  // namespace

GEBFactorization geb_factorize(const Matrix& a) {
  require_square(a, "geb_factorize");
  const Eigen::Index n = a.rows();
  if (n <= kExhaustiveLimit && !classify(a).is_TN) throw Error(ErrorCode::NotTN, "input matrix is not TN");

  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = 1e-13 * scale;

  Matrix upper = a;
  std::vector<Matrix> lower_factors = neville_pass(upper, tol);
  Matrix lower_of_upper = upper.transpose();
  std::vector<Matrix> right_factors_t = neville_pass(lower_of_upper, tol);

  Matrix d = lower_of_upper.transpose();
  Matrix off = d;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > tol) {
    throw Error(ErrorCode::PivotBreakdown, "elimination did not reduce the matrix to diagonal form");
  }
  const Matrix diag = d.diagonal().asDiagonal();

  GEBFactorization out;
  const Matrix identity = Matrix::Identity(n, n);
  for (auto& f : lower_factors)
    if (f != identity) out.factors.push_back(std::move(f));
  if (diag != identity) out.factors.push_back(diag);
  for (auto it = right_factors_t.rbegin(); it != right_factors_t.rend(); ++it) {
    Matrix f = it->transpose();
    if (f != identity) out.factors.push_back(std::move(f));
  }
  for (const auto& f : out.factors) {
    if (!is_tn_geb(f, tol)) throw Error(ErrorCode::NotTN, "factorization produced a factor that is not TN GEB");
  }
  const double norm = a.norm();
  out.residual_error = (out.product(n) - a).norm() / (norm > 0 ? norm : 1.0);
  return out;
}

bool is_tn_geb(const Matrix& f, double tol) {
  if (!is_square(f)) return false;
  int off_entries = 0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      const double v = f(i, j);
      if (v < -tol) return false;
      if (i == j || v == 0.0) continue;
      if (std::abs(i - j) != 1) return false;
      ++off_entries;
    }
  }
  return off_entries <= 1;
}

// ---------------------------------------------------------------------------
// Spectra

std::vector<SpectralPair> ordered_real_spectrum(const Matrix& a, double imag_tol, ErrorCode violation) {
  require_square(a, "spectrum");
  const Eigen::Index n = a.rows();
  Eigen::EigenSolver<Matrix> es(a, false);
  if (es.info() != Eigen::Success) throw Error(violation, "eigenvalue iteration did not converge");
  const auto& ev = es.eigenvalues();
  double radius = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) radius = std::max(radius, std::abs(ev(k)));

  std::vector<double> values;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(ev(k).imag()) > imag_tol * radius) {
      throw Error(violation, "eigenvalue with nonnegligible imaginary part: " + format_double(ev(k).real()) +
                                 " + " + format_double(ev(k).imag()) + "i");
    }
    values.push_back(ev(k).real());
  }
  std::sort(values.begin(), values.end(), std::greater<>());

  std::vector<SpectralPair> out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double lambda = values[k];
    if (!(lambda > 0.0)) throw Error(violation, "nonpositive eigenvalue " + format_double(lambda));
    if (k > 0 && !(values[k - 1] - lambda > 1e-8 * values[k - 1])) {
      throw Error(violation, "eigenvalues not distinct: " + format_double(values[k - 1]) + ", " + format_double(lambda));
    }
    const Matrix shifted = a - lambda * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    Vector u = svd.matrixV().col(n - 1);
    u.normalize();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(u(i)) > 1e-8) {
        if (u(i) < 0) u = -u;
        break;
      }
    }
    const int lo = s_minus(as_span(u), 1e-8);
    const int hi = s_plus(as_span(u), 1e-8);
    const int expected = static_cast<int>(k);
    if (lo != expected || hi != expected) {
      throw Error(violation, "eigenvector " + std::to_string(k + 1) + " has s^- = " + std::to_string(lo) +
                                 ", s^+ = " + std::to_string(hi) + ", expected " + std::to_string(expected));
    }
    out.push_back(SpectralPair{lambda, std::move(u), expected});
  }
  return out;
}

std::vector<SpectralPair> oscillatory_spectrum(const Matrix& a) {
  return ordered_real_spectrum(a, 1e-8, ErrorCode::SpectralViolation);
}

// ---------------------------------------------------------------------------
// Sign variation diminishing checks

SvdpResult svdp_check(const Matrix& a, const Vector& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "svdp_check: matrix/vector size mismatch");
  if (x.size() == 0 || x.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorCode::ZeroVector, "svdp_check needs x != 0");
  const Vector y = a * x;
  const double tol_x = relative_zero_tol(as_span(x), kDefaultZeroTol);
  const double tol_y = kDefaultZeroTol * std::max(y.cwiseAbs().maxCoeff(), a.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff());
  SvdpResult r;
  r.s_minus_in = s_minus(as_span(x), tol_x);
  r.s_plus_out = s_plus(as_span(y), tol_y);
  r.holds = r.s_plus_out <= r.s_minus_in;
  return r;
}

namespace {

bool violates_column_bound(const Matrix& u, const Vector& c) {
  const Vector y = u * c;
  const double tol = kDefaultZeroTol * u.cwiseAbs().maxCoeff() * c.cwiseAbs().maxCoeff();
  return s_plus(as_span(y), tol) > static_cast<int>(u.cols()) - 1;
}

}  // namespace

ColumnSetResult column_set_equivalence(const Matrix& u, int trials, std::uint64_t seed) {
  const int n = static_cast<int>(u.rows());
  const int m = static_cast<int>(u.cols());
  if (m < 1 || m >= n) throw Error(ErrorCode::DimensionMismatch, "column_set_equivalence needs 1 <= m < n");
  if (Eigen::FullPivLU<Matrix>(u).rank() != m) throw Error(ErrorCode::RankDeficient, "columns are linearly dependent");

  ColumnSetResult out;
  const IndexTuple all_cols = lex_subsets(m, m).front();
  out.minors_same_sign = true;
  int common = 0;
  for (const auto& rows : lex_subsets(n, m)) {
    const int s = minor_sign(u, rows, all_cols);
    if (s == 0 || (common != 0 && s != common)) {
      out.minors_same_sign = false;
      break;
    }
    common = s;
  }

  std::vector<Vector> candidates;
  if (m == 1) {
    candidates.push_back(Vector::Ones(1));
  } else {
    for (const auto& rows : lex_subsets(n, m - 1)) {
      const Matrix sub = submatrix(u, rows, all_cols);
      Eigen::JacobiSVD<Matrix> svd(sub, Eigen::ComputeFullV);
      candidates.push_back(svd.matrixV().col(m - 1));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int t = 0; t < trials; ++t) {
    Vector c(m);
    for (int k = 0; k < m; ++k) c(k) = normal(rng);
    candidates.push_back(std::move(c));
  }

  out.sampled_bound_holds = true;
  for (const auto& c : candidates) {
    for (double s : {1.0, -1.0}) {
      if (violates_column_bound(u, s * c)) {
        out.sampled_bound_holds = false;
        out.violating_coefficients = s * c;
        return out;
      }
    }
  }
  return out;
}

namespace {

// Is {x : x_j * sign_j >= 1 on the support, x_j = 0 off it, g_l . x >= 0} nonempty?
// The region is pointed, so it is nonempty iff some vertex is feasible. Returns every feasible vertex.
std::vector<Vector> feasible_vertices(const std::vector<int>& support, const std::vector<int>& signs,
                                      const std::vector<Eigen::RowVectorXd>& targets, Eigen::Index n) {
  const int d = static_cast<int>(support.size());
  // Constraints in the reduced variables: rows of `g`, right-hand sides `h`, meaning g.x >= h.
  std::vector<Eigen::RowVectorXd> g;
  std::vector<double> h;
  for (int j = 0; j < d; ++j) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(d);
    row(j) = signs[static_cast<std::size_t>(j)];
    g.push_back(row);
    h.push_back(1.0);
  }
  for (const auto& t : targets) {
    Eigen::RowVectorXd row(d);
    for (int j = 0; j < d; ++j) row(j) = t(support[static_cast<std::size_t>(j)]);
    g.push_back(row);
    h.push_back(0.0);
  }
  const int total = static_cast<int>(g.size());
  std::vector<Vector> found;
  for (const auto& active : lex_subsets(total, d)) {
    Matrix sys(d, d);
    Vector rhs(d);
    for (int r = 0; r < d; ++r) {
      sys.row(r) = g[static_cast<std::size_t>(active[static_cast<std::size_t>(r)] - 1)];
      rhs(r) = h[static_cast<std::size_t>(active[static_cast<std::size_t>(r)] - 1)];
    }
    Eigen::FullPivLU<Matrix> lu(sys);
    if (lu.rank() < d) continue;
    const Vector x = lu.solve(rhs);
    bool ok = true;
    for (int r = 0; r < total && ok; ++r) {
      const double lhs = g[static_cast<std::size_t>(r)].dot(x);
      const double slack = 1e-9 * std::max(1.0, g[static_cast<std::size_t>(r)].cwiseAbs().sum() * x.cwiseAbs().maxCoeff());
      ok = lhs >= h[static_cast<std::size_t>(r)] - slack;
    }
    if (!ok) continue;
    Vector full = Vector::Zero(n);
    for (int j = 0; j < d; ++j) full(support[static_cast<std::size_t>(j)]) = x(j);
    found.push_back(std::move(full));
  }
  return found;
}

bool confirms_violation(const Matrix& a, const Vector& x) {
  const Vector y = a * x;
  const double scale = a.cwiseAbs().maxCoeff() * x.cwiseAbs().maxCoeff();
  return s_plus(as_span(y), 1e-9 * scale) > s_minus(as_span(x), 1e-9 * x.cwiseAbs().maxCoeff());
}

}  // namespace

StrongSvdpReport strong_svdp_by_patterns(const Matrix& a, int random_per_pattern, std::uint64_t seed) {
  require_square(a, "strong_svdp_by_patterns");
  const int n = static_cast<int>(a.rows());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.05, 2.0);
  StrongSvdpReport report;

  std::vector<int> pattern(static_cast<std::size_t>(n), -1);
  long long patterns = 1;
  for (int k = 0; k < n; ++k) patterns *= 3;
  for (long long code = 0; code < patterns; ++code) {
    long long c = code;
    std::vector<int> support, signs;
    Vector x_pattern = Vector::Zero(n);
    for (int k = 0; k < n; ++k) {
      pattern[static_cast<std::size_t>(k)] = static_cast<int>(c % 3) - 1;
      c /= 3;
      if (pattern[static_cast<std::size_t>(k)] != 0) {
        support.push_back(k);
        signs.push_back(pattern[static_cast<std::size_t>(k)]);
        x_pattern(k) = pattern[static_cast<std::size_t>(k)];
      }
    }
    if (support.empty()) continue;
    const int k_in = s_minus(as_span(x_pattern), 0.0);
    if (k_in >= n - 1) continue;

    for (int t = 0; t < random_per_pattern; ++t) {
      Vector x = Vector::Zero(n);
      for (std::size_t j = 0; j < support.size(); ++j) x(support[j]) = signs[j] * mag(rng);
      if (confirms_violation(a, x)) {
        report.holds = false;
        report.counterexample = x;
        return report;
      }
    }

    // Exhaustive: need s^+(Ax) >= k_in + 1, i.e. an alternating pattern on k_in + 2 rows.
    for (const auto& rows : lex_subsets(n, k_in + 2)) {
      for (double eps : {1.0, -1.0}) {
        std::vector<Eigen::RowVectorXd> targets;
        for (std::size_t l = 0; l < rows.size(); ++l) {
          const double s = (l % 2 == 0 ? 1.0 : -1.0) * eps;
          targets.push_back(s * a.row(rows[l] - 1));
        }
        for (const auto& x : feasible_vertices(support, signs, targets, n)) {
          if (confirms_violation(a, x)) {
            report.holds = false;
            report.counterexample = x;
            return report;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace tpds
