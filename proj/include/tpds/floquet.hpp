#pragma once

#include "tpds/ode.hpp"
#include "tpds/system.hpp"

#include <optional>
#include <vector>

namespace tpds {

struct FloquetData {
  double period = 0.0;
  Matrix monodromy;                  // Phi(a + T, a)
  std::vector<double> multipliers;   // strictly decreasing, positive
  std::vector<Vector> eigvecs;       // unit 2-norm, first nonzero entry positive
  std::vector<int> sign_counts;      // sign_counts[k] == k
};

/// Monodromy matrix and characteristic multipliers of a periodic system. Default step T * 1e-4.
/// Throws NotPeriodic when no period is set, FloquetViolation when the multipliers are not real,
/// positive and distinct or the eigenvectors do not have the expected sign counts.
FloquetData floquet(const TimeVaryingSystem& sys, std::optional<double> step = std::nullopt);

struct ModeRun {
  Trajectory trajectory;
  int band_low = 0;       // i - 1
  int band_high = 0;      // j - 1
  int terminal_sigma = 0;
};

/// Simulates z(a) = sum_k c_k p^k for k = first..first+coeffs.size()-1 (1-based) over
/// [a, a + horizon] and checks i-1 <= sigma <= j-1 on V samples, at most j-i exceptional clusters,
/// and sigma = i-1 on the last 10% of the horizon. Throws LeadingCoefficientZero, BandViolation.
ModeRun floquet_mode_evolution(const TimeVaryingSystem& sys, const FloquetData& fd, int first,
                               const std::vector<double>& coeffs, double horizon,
                               int samples = 2001, std::optional<double> step = std::nullopt);

}  // namespace tpds
