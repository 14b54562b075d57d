#include "tpds/system.hpp"

#include "tpds/error.hpp"

#include <cmath>

namespace tpds {
namespace {

double eval_time(const Expr& e, double t) {
  if (e.kind() == Expr::Kind::Number) return e.value();
  return evaluate(e, EvalContext{t, std::nullopt, std::nullopt});
}

}  // namespace

TimeVaryingSystem::TimeVaryingSystem(int n, double a, double b, std::vector<Segment> segments,
                                     std::optional<double> period)
    : n_(n), a_(a), b_(b), segments_(std::move(segments)), period_(period) {
  if (n_ < 1) throw Error(ErrorCode::InvalidSystem, "dimension must be positive");
  if (!(a_ < b_) || !std::isfinite(a_) || !std::isfinite(b_)) {
    throw Error(ErrorCode::InvalidSystem, "interval must be finite with a < b");
  }
  if (segments_.empty()) throw Error(ErrorCode::EmptySegments, "system has no segments");

  const double tie = 1e-12 * std::max({1.0, std::abs(a_), std::abs(b_)});
  double expected = a_;
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    const std::string where = "segment " + std::to_string(k + 1);
    if (std::abs(s.t_start - expected) > tie) {
      throw Error(ErrorCode::InvalidSystem, where + " starts at " + format_double(s.t_start) + ", expected " +
                                                format_double(expected));
    }
    if (!(s.t_end > s.t_start)) throw Error(ErrorCode::InvalidSystem, where + " is empty");
    if (s.entries.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_)) {
      throw Error(ErrorCode::InvalidSystem, where + " has " + std::to_string(s.entries.size()) + " entries, expected " +
                                                std::to_string(n_ * n_));
    }
    for (const Expr& e : s.entries) {
      if (e.max_state_index() > 0 || e.uses_input()) {
        throw Error(ErrorCode::UnknownIdentifier, where + ": entry '" + to_string(e) + "' may only depend on t");
      }
    }
    expected = s.t_end;
  }
  if (std::abs(expected - b_) > tie) {
    throw Error(ErrorCode::InvalidSystem, "segments end at " + format_double(expected) + ", interval ends at " +
                                              format_double(b_));
  }

  if (period_) {
    const double T = *period_;
    if (!(T > 0.0)) throw Error(ErrorCode::InvalidSystem, "period must be positive");
    if (std::abs((b_ - a_) - T) > 1e-12 * std::max(1.0, T)) {
      throw Error(ErrorCode::InvalidSystem, "periodic system must be given on exactly one period [a, a+T]");
    }
    constexpr int kPoints = 100;
    for (int k = 0; k < kPoints; ++k) {
      const double tau = a_ + (b_ - a_) * k / (kPoints - 1);
      const Segment& s = segments_[locate(tau)];
      for (std::size_t e = 0; e < s.entries.size(); ++e) {
        const double v0 = eval_time(s.entries[e], tau);
        const double v1 = eval_time(s.entries[e], tau + T);
        if (std::abs(v0 - v1) > 1e-10 * std::max(1.0, std::abs(v0))) {
          throw Error(ErrorCode::NotPeriodic, "entry (" + std::to_string(e / n_ + 1) + "," +
                                                  std::to_string(e % n_ + 1) + ") differs at t = " +
                                                  format_double(tau) + " and t + T");
        }
      }
    }
  }
}

TimeVaryingSystem TimeVaryingSystem::constant(const Matrix& a_const, double a, double b,
                                              std::optional<double> period) {
  if (!is_square(a_const)) throw Error(ErrorCode::DimensionMismatch, "system matrix must be square");
  Segment s{a, b, {}};
  for (Eigen::Index i = 0; i < a_const.rows(); ++i)
    for (Eigen::Index j = 0; j < a_const.cols(); ++j) s.entries.push_back(Expr::number(a_const(i, j)));
  return TimeVaryingSystem(static_cast<int>(a_const.rows()), a, b, {std::move(s)}, period);
}

bool TimeVaryingSystem::is_constant() const {
  if (segments_.size() != 1) return false;
  for (const Expr& e : segments_.front().entries)
    if (!e.is_constant()) return false;
  return true;
}

std::size_t TimeVaryingSystem::locate(double tau) const {
  std::size_t k = 0;
  while (k + 1 < segments_.size() && segments_[k + 1].t_start <= tau) ++k;
  return k;
}

Matrix TimeVaryingSystem::eval_segment(std::size_t seg, double tau) const {
  const Segment& s = segments_.at(seg);
  Matrix m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = eval_time(s.entries[static_cast<std::size_t>(i * n_ + j)], tau);
  return m;
}

bool TimeVaryingSystem::contains(double t) const {
  if (!std::isfinite(t) || t < a_) return false;
  return period_ || t <= b_;
}

Matrix TimeVaryingSystem::at(double t) const {
  if (!contains(t)) throw Error(ErrorCode::OutOfInterval, "t = " + format_double(t) + " outside the system interval");
  double tau = t;
  if (period_ && t > b_) {
    tau = a_ + std::fmod(t - a_, *period_);
  }
  return eval_segment(locate(tau), tau);
}

std::vector<Piece> TimeVaryingSystem::pieces(double t0, double t1) const {
  if (!contains(t0) || !contains(t1) || t1 < t0) {
    throw Error(ErrorCode::OutOfInterval,
                "[" + format_double(t0) + ", " + format_double(t1) + "] is not inside the system interval");
  }
  std::vector<Piece> out;
  const double T = period_.value_or(b_ - a_);
  const long k0 = period_ ? static_cast<long>(std::floor((t0 - a_) / T)) : 0;
  const long k1 = period_ ? static_cast<long>(std::floor((t1 - a_) / T)) : 0;
  for (long k = std::max(0L, k0); k <= k1; ++k) {
    const double shift = static_cast<double>(k) * T;
    for (std::size_t s = 0; s < segments_.size(); ++s) {
      const double lo = std::max(t0, segments_[s].t_start + shift);
      const double hi = std::min(t1, segments_[s].t_end + shift);
      if (hi > lo) out.push_back(Piece{lo, hi, s, shift});
    }
  }
  return out;
}

}  // namespace tpds
