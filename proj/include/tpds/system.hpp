#pragma once

#include "tpds/expr.hpp"
#include "tpds/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpds {

/// One piece of a piecewise-defined A(t). Entries are row-major time expressions;
/// constant entries are plain number nodes.
struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::vector<Expr> entries;
};

/// A piece of an integration interval lying inside one segment. Inside the piece the system
/// matrix is segment `segment` evaluated at t - shift.
struct Piece {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t segment = 0;
  double shift = 0.0;
};

/// Linear time-varying system x' = A(t) x on [a, b], piecewise in t. When a period T is set,
/// b - a must equal T and A is extended periodically beyond b.
class TimeVaryingSystem {
 public:
  /// Validates the tiling, entry count and scope of every expression (t only); checks
  /// periodicity of the entries on a 100-point grid when `period` is set. Throws
  /// InvalidSystem, EmptySegments, UnknownIdentifier or NotPeriodic.
  TimeVaryingSystem(int n, double a, double b, std::vector<Segment> segments,
                    std::optional<double> period = std::nullopt);

  static TimeVaryingSystem constant(const Matrix& a_const, double a, double b,
                                    std::optional<double> period = std::nullopt);

  int n() const { return n_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::optional<double>& period() const { return period_; }
  const std::vector<Segment>& segments() const { return segments_; }
  bool is_constant() const;

  /// A(t). At a segment boundary the later segment wins.
  Matrix at(double t) const;
  /// Segment `seg` evaluated at local time tau (no lookup, no periodic reduction).
  Matrix eval_segment(std::size_t seg, double tau) const;

  /// Splits [t0, t1] into pieces that each sit inside one segment (periodically extended).
  std::vector<Piece> pieces(double t0, double t1) const;

  /// True when t is inside the domain of the system: [a, b], or [a, inf) if periodic.
  bool contains(double t) const;

 private:
  std::size_t locate(double tau) const;

  int n_;
  double a_;
  double b_;
  std::vector<Segment> segments_;
  std::optional<double> period_;
};

}  // namespace tpds
