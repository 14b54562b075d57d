#include "tpds/classify.hpp"

#include "tpds/compound.hpp"
#include "tpds/error.hpp"
#include "tpds/total_positivity.hpp"

#include <algorithm>
#include <cmath>

namespace tpds {
namespace {

std::string entry_text(Eigen::Index i, Eigen::Index j, double v) {
  return "a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " + format_double(v);
}

// Appends every reason why `a` is not in M.
void m_violations(const Matrix& a, double t, std::vector<ClassViolation>& out) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i == j) continue;
      const bool far = std::abs(i - j) > 1;
      if (far && a(i, j) != 0.0) out.push_back({t, entry_text(i, j, a(i, j)) + " outside the tridiagonal band"});
      if (!far && a(i, j) < 0.0) out.push_back({t, entry_text(i, j, a(i, j)) + " is negative"});
    }
  }
}

double min_band(const Matrix& a) {
  double lo = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i + 1 < a.rows(); ++i) lo = std::min({lo, a(i, i + 1), a(i + 1, i)});
  return lo;
}

// A witness minor must be clearly negative: expm(A t) is only accurate relative to its norm.
constexpr double kWitnessRelTol = 1e-10;

double minor_scale(const Matrix& e, const IndexTuple& rows, const IndexTuple& cols) {
  double scale = 1.0;
  for (int r : rows) {
    double m = 0.0;
    for (int c : cols) m = std::max(m, std::abs(e(r - 1, c - 1)));
    scale *= m;
  }
  return scale;
}

std::optional<NegativeMinor> negative_minor_for(const Matrix& a, int i, int j, double t_scale) {
  // 1-based i, j with |i - j| > 1 and a_ij > 0.
  for (int k = std::min(i, j) + 1; k < std::max(i, j); ++k) {
    const IndexTuple rows = i > j ? IndexTuple{k, i} : IndexTuple{i, k};
    const IndexTuple cols = i > j ? IndexTuple{j, k} : IndexTuple{k, j};
    for (int m = 1; m <= 12; ++m) {
      const double t = t_scale * std::pow(10.0, -m);
      const Matrix e = expm(a * t);
      const double v = minor(e, rows, cols);
      if (v < -kWitnessRelTol * minor_scale(e, rows, cols)) return NegativeMinor{i, j, rows, cols, t, v};
    }
  }
  return std::nullopt;
}

}  // namespace

bool in_M(const Matrix& a) {
  if (!is_square(a)) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(i - j) > 1 && a(i, j) != 0.0) return false;
      if (std::abs(i - j) == 1 && !(a(i, j) >= 0.0)) return false;
    }
  }
  return true;
}

bool in_M_plus(const Matrix& a) {
  if (!in_M(a)) return false;
  for (Eigen::Index i = 0; i + 1 < a.rows(); ++i)
    if (!(a(i, i + 1) > 0.0) || !(a(i + 1, i) > 0.0)) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::TPDS: return "TPDS";
    case Verdict::TNDS_only: return "TNDS";
    case Verdict::Neither: return "neither";
  }
  return "?";
}

SystemClass classify_constant(const Matrix& a) {
  if (!is_square(a)) throw Error(ErrorCode::DimensionMismatch, "system matrix must be square");
  SystemClass out;
  out.verdict = in_M_plus(a) ? Verdict::TPDS : in_M(a) ? Verdict::TNDS_only : Verdict::Neither;
  m_violations(a, 0.0, out.violations);
  if (a.rows() > 1) out.delta = min_band(a);
  if (out.verdict == Verdict::TNDS_only) {
    for (Eigen::Index i = 0; i + 1 < a.rows(); ++i) {
      if (a(i, i + 1) == 0.0) out.violations.push_back({0.0, entry_text(i, i + 1, 0.0) + " is not positive"});
      if (a(i + 1, i) == 0.0) out.violations.push_back({0.0, entry_text(i + 1, i, 0.0) + " is not positive"});
    }
  }

  if (a.rows() > kCrossCheckLimit) return out;

  const double t_scale = 1.0 / std::max(1.0, a.cwiseAbs().maxCoeff());
  bool all_tn = true;
  bool all_tp = true;
  for (double f : {0.01, 0.1, 1.0}) {
    const double t = f * t_scale;
    const Classification c = classify(expm(a * t));
    out.samples.push_back({t, c.is_TN, c.is_TP});
    all_tn = all_tn && c.is_TN;
    all_tp = all_tp && c.is_TP;
  }

  bool far_witnesses_found = true;
  bool has_far_positive = false;
  const int n = static_cast<int>(a.rows());
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (std::abs(i - j) <= 1 || !(a(i - 1, j - 1) > 0.0)) continue;
      has_far_positive = true;
      if (auto w = negative_minor_for(a, i, j, t_scale)) {
        out.negative_minors.push_back(*w);
      } else {
        far_witnesses_found = false;
      }
    }
  }

  switch (out.verdict) {
    case Verdict::TPDS: out.cross_check_agrees = all_tp; break;
    case Verdict::TNDS_only: out.cross_check_agrees = all_tn && !all_tp; break;
    case Verdict::Neither:
      out.cross_check_agrees = has_far_positive ? far_witnesses_found : !all_tn;
      break;
  }
  return out;
}

SystemClass classify_time_varying(const TimeVaryingSystem& sys, int samples_per_segment, double delta_floor) {
  if (sys.segments().empty()) throw Error(ErrorCode::EmptySegments, "system has no segments");
  if (samples_per_segment < 1) throw Error(ErrorCode::InvalidSystem, "need at least one sample per segment");
  SystemClass out;
  out.samples_per_segment = samples_per_segment;

  bool tn = true;
  bool strict = true;
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < sys.segments().size(); ++s) {
    const Segment& seg = sys.segments()[s];
    for (int k = 0; k <= samples_per_segment; ++k) {
      const double t = seg.t_start + (seg.t_end - seg.t_start) * k / samples_per_segment;
      const Matrix m = sys.eval_segment(s, t);
      const std::size_t before = out.violations.size();
      m_violations(m, t, out.violations);
      if (out.violations.size() != before) tn = false;

      const bool outer = (s == 0 && k == 0) || (s + 1 == sys.segments().size() && k == samples_per_segment);
      if (outer || sys.n() < 2) continue;
      delta = std::min(delta, min_band(m));
      for (Eigen::Index i = 0; i + 1 < m.rows(); ++i) {
        for (const auto& [r, c] : {std::pair{i, i + 1}, std::pair{i + 1, i}}) {
          if (m(r, c) < delta_floor) {
            strict = false;
            out.violations.push_back({t, entry_text(r, c, m(r, c)) + " below the floor " + format_double(delta_floor)});
          }
        }
      }
    }
  }
  if (std::isfinite(delta)) out.delta = delta;
  out.verdict = !tn ? Verdict::Neither : strict ? Verdict::TPDS : Verdict::TNDS_only;
  return out;
}

}  // namespace tpds
