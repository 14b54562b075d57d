#pragma once

#include <span>

namespace tpds {

/// Default zero threshold for floating-point inputs; pass 0 for exact data.
inline constexpr double kDefaultZeroTol = 1e-9;

/// Number of sign changes after deleting the zero entries (s^-).
int s_minus(std::span<const double> y, double zero_tol = kDefaultZeroTol);

/// Maximal number of sign changes over all ways of giving the zero entries a sign (s^+).
///
/// Linear-time run-length rule: a run of k zeros
///   - at either end contributes k,
///   - between equal signs contributes 2*ceil(k/2),
///   - between opposite signs contributes 2*floor(k/2) + 1.
int s_plus(std::span<const double> y, double zero_tol = kDefaultZeroTol);

/// Membership in V: nonzero end entries, and every interior zero sits between a strict sign change.
bool in_V(std::span<const double> y, double zero_tol = kDefaultZeroTol);

/// The pattern-based test above alone; `in_V` also checks it against s_minus == s_plus.
bool in_V_by_pattern(std::span<const double> y, double zero_tol = kDefaultZeroTol);

/// Common value of s^- and s^+ on V. Throws Error(NotInV) off V.
int sigma(std::span<const double> y, double zero_tol = kDefaultZeroTol);

/// Scale-aware tolerance used along trajectories: rel * max|y_i|.
double relative_zero_tol(std::span<const double> y, double rel);

}  // namespace tpds
