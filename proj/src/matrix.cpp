#include "tpds/matrix.hpp"

#include "tpds/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tpds {

IndexTuple::IndexTuple(std::initializer_list<int> one_based)
    : IndexTuple(std::vector<int>(one_based)) {}

IndexTuple::IndexTuple(std::vector<int> one_based) : idx_(std::move(one_based)) {
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (idx_[k] < 1 || (k > 0 && idx_[k] <= idx_[k - 1])) {
      throw Error(ErrorCode::DimensionMismatch,
                  "index tuple must be strictly increasing and 1-based: " + to_string());
    }
  }
}

void IndexTuple::check_bounds(int dim) const {
  if (!idx_.empty() && idx_.back() > dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "index tuple " + to_string() + " exceeds dimension " + std::to_string(dim));
  }
}

std::string IndexTuple::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < idx_.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(idx_[k]);
  }
  return s + "}";
}

std::vector<IndexTuple> lex_subsets(int n, int p) {
  std::vector<IndexTuple> out;
  if (p < 0 || p > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(p));
  for (int k = 0; k < p; ++k) cur[static_cast<std::size_t>(k)] = k + 1;
  while (true) {
    out.emplace_back(cur);
    int k = p - 1;
    while (k >= 0 && cur[static_cast<std::size_t>(k)] == n - p + k + 1) --k;
    if (k < 0) break;
    ++cur[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < p; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Matrix submatrix(const Matrix& a, const IndexTuple& rows, const IndexTuple& cols) {
  rows.check_bounds(static_cast<int>(a.rows()));
  cols.check_bounds(static_cast<int>(a.cols()));
  Matrix s(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i] - 1, cols[j] - 1);
  return s;
}

bool is_integral(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double x = a.data()[i];
    if (!std::isfinite(x) || std::abs(x) > 2147483648.0 || x != std::trunc(x)) return false;
  }
  return true;
}

bool is_square(const Matrix& a) noexcept { return a.rows() == a.cols(); }

bool is_tridiagonal(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(i - j) > 1 && a(i, j) != 0.0) return false;
  return true;
}

bool is_metzler(const Matrix& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j && a(i, j) < 0.0) return false;
  return true;
}

namespace {

std::vector<bool> reachable_from(const Matrix& a, Eigen::Index start, bool transpose) {
  const Eigen::Index n = a.rows();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Eigen::Index> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const Eigen::Index i = stack.back();
    stack.pop_back();
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = transpose ? a(j, i) : a(i, j);
      if (j != i && w != 0.0 && !seen[static_cast<std::size_t>(j)]) {
        seen[static_cast<std::size_t>(j)] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

}  // namespace

bool is_irreducible(const Matrix& a) {
  if (!is_square(a)) return false;
  if (a.rows() <= 1) return true;
  for (bool transpose : {false, true}) {
    for (bool r : reachable_from(a, 0, transpose))
      if (!r) return false;
  }
  return true;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  void skip_space_and_comments() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == ',') {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (text[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  std::string where() const { return std::to_string(line) + ":" + std::to_string(col); }

  // Returns the next token, or empty at end of input.
  std::string_view token() {
    skip_space_and_comments();
    const std::size_t start = pos;
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '#' || c == ',') break;
      advance();
    }
    return text.substr(start, pos - start);
  }
};

}  // namespace

MatrixText parse_matrix_text(std::string_view text) {
  Cursor cur{text};
  auto read_dim = [&](const char* what) {
    cur.skip_space_and_comments();
    const std::string at = cur.where();
    const std::string_view tok = cur.token();
    long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size() || v <= 0) {
      throw Error(ErrorCode::ParseError,
                  at + ": expected positive integer " + what + ", got '" + std::string(tok) + "'");
    }
    return static_cast<Eigen::Index>(v);
  };
  const Eigen::Index rows = read_dim("row count");
  const Eigen::Index cols = read_dim("column count");

  MatrixText out;
  out.values.resize(rows, cols);
  out.integral = true;
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      cur.skip_space_and_comments();
      const std::string at = cur.where();
      const std::string_view tok = cur.token();
      if (tok.empty()) {
        throw Error(ErrorCode::ParseError, at + ": expected " + std::to_string(rows * cols) +
                                               " entries, found " + std::to_string(i * cols + j));
      }
      double v = 0.0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v)) {
        throw Error(ErrorCode::ParseError, at + ": malformed number '" + std::string(tok) + "'");
      }
      const bool looks_integer = tok.find_first_of(".eEnN") == std::string_view::npos;
      if (!looks_integer) out.integral = false;
      out.values(i, j) = v;
    }
  }
  cur.skip_space_and_comments();
  if (cur.pos != text.size()) {
    throw Error(ErrorCode::ParseError, cur.where() + ": trailing content after matrix entries");
  }
  if (out.integral && !is_integral(out.values)) out.integral = false;
  return out;
}

MatrixText read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open matrix file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_matrix_text(ss.str());
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

void write_matrix_text(std::ostream& os, const Matrix& a, bool integral) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j) os << ' ';
      const double v = a(i, j);
      if (integral) {
        os << static_cast<long long>(std::llround(v));
      } else {
        os << format_double(v);
      }
    }
    os << '\n';
  }
}

std::string format_matrix_text(const Matrix& a, bool integral) {
  std::ostringstream os;
  write_matrix_text(os, a, integral);
  return os.str();
}

Matrix matrix_from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c)
      throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Vector vector_from(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace tpds
