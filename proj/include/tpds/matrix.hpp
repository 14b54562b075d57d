#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace tpds {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Strictly increasing, 1-based row or column indices selecting a minor A(alpha|beta).
class IndexTuple {
 public:
  IndexTuple() = default;
  IndexTuple(std::initializer_list<int> one_based);
  explicit IndexTuple(std::vector<int> one_based);

  std::size_t size() const noexcept { return idx_.size(); }
  bool empty() const noexcept { return idx_.empty(); }
  int operator[](std::size_t k) const { return idx_[k]; }
  const std::vector<int>& indices() const noexcept { return idx_; }
  auto begin() const noexcept { return idx_.begin(); }
  auto end() const noexcept { return idx_.end(); }

  /// Throws DimensionMismatch if any index exceeds `dim`.
  void check_bounds(int dim) const;

  std::string to_string() const;  // "{1,3}"

  friend bool operator==(const IndexTuple&, const IndexTuple&) = default;
  friend auto operator<=>(const IndexTuple&, const IndexTuple&) = default;

 private:
  std::vector<int> idx_;
};

/// All p-subsets of {1..n} in lexicographic order.
std::vector<IndexTuple> lex_subsets(int n, int p);

/// Binomial coefficient C(n, k) for small arguments.
long long binomial(int n, int k);

/// Submatrix A(alpha|beta).
Matrix submatrix(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols);

/// True when every entry is an integer of modest size (|x| <= 2^31), so minors can be computed exactly.
bool is_integral(const Matrix& a);

bool is_square(const Matrix& a) noexcept;
bool is_tridiagonal(const Matrix& a);
bool is_metzler(const Matrix& a);

/// Strong connectivity of the directed graph with an edge i -> j whenever a_ij != 0 (i != j).
bool is_irreducible(const Matrix& a);

/// A matrix as read from or written to the text format: values plus the exactness flag.
struct MatrixText {
  Matrix values;
  bool integral = false;
};

/// Reads the matrix text format:
///   # comment lines allowed
///   <rows> <cols>
///   row-major entries separated by whitespace
/// Throws Error(ParseError) with "line:col" diagnostics.
MatrixText parse_matrix_text(std::string_view text);
MatrixText read_matrix_file(const std::string& path);

/// Writes the same format; integral matrices are printed without a decimal point.
void write_matrix_text(std::ostream& os, const Matrix& a, bool integral);
std::string format_matrix_text(const Matrix& a, bool integral);

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

Matrix matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows);
Vector vector_from(std::initializer_list<double> values);

inline std::span<const double> as_span(const Vector& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace tpds
