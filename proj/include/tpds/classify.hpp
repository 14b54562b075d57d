#pragma once

#include "tpds/matrix.hpp"
#include "tpds/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tpds {

/// Tridiagonal with nonnegative sub- and super-diagonal (diagonal unconstrained).
bool in_M(const Matrix& a);
/// Tridiagonal with strictly positive sub- and super-diagonal.
bool in_M_plus(const Matrix& a);

enum class Verdict { TPDS, TNDS_only, Neither };
std::string to_string(Verdict v);

struct ClassViolation {
  double t = 0.0;
  std::string what;
};

/// A 2x2 minor of expm(A t) that is negative because of a far off-diagonal entry a_ij > 0.
struct NegativeMinor {
  int i = 0;
  int j = 0;
  IndexTuple rows;
  IndexTuple cols;
  double t = 0.0;
  double value = 0.0;
};

struct SampledCheck {
  double t = 0.0;
  bool tn = false;
  bool tp = false;
};

struct SystemClass {
  Verdict verdict = Verdict::Neither;
  std::optional<double> delta;  // smallest sub/super-diagonal value seen where strictness is checked
  std::vector<ClassViolation> violations;
  int samples_per_segment = 0;  // 0 for constant systems

  // Constant systems only (n <= 6): sampled expm(A t) classification.
  std::vector<SampledCheck> samples;
  std::vector<NegativeMinor> negative_minors;
  std::optional<bool> cross_check_agrees;
};

/// Largest dimension for which classify_constant runs the sampled cross-check.
inline constexpr int kCrossCheckLimit = 6;

/// TPDS iff A in M+, TNDS only iff A in M \ M+, neither otherwise. For n <= 6 also classifies
/// expm(A t) at t in {0.01, 0.1, 1} / max(1, max|a_ij|) and, for every far entry a_ij > 0, searches
/// for a negative 2x2 minor of expm(A t) at small t.
SystemClass classify_constant(const Matrix& a);

inline constexpr int kDefaultSamplesPerSegment = 1000;
inline constexpr double kDefaultDeltaFloor = 1e-6;

/// Sampled test of "A(t) in M for almost all t" (TNDS) and of the uniform bound
/// a_{i,i+-1}(t) >= delta_floor (TPDS). Each segment is sampled at samples_per_segment + 1 evenly
/// spaced points, endpoints included; strictness is not checked at the outer endpoints a and b.
SystemClass classify_time_varying(const TimeVaryingSystem& sys,
                                  int samples_per_segment = kDefaultSamplesPerSegment,
                                  double delta_floor = kDefaultDeltaFloor);

}  // namespace tpds
