#include "tpds/sign_variation.hpp"

#include "tpds/error.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace tpds {
namespace {

int sign_of(double v, double tol) {
  if (std::abs(v) <= tol) return 0;
  return v > 0 ? 1 : -1;
}

void require_nonempty(std::span<const double> y) {
  if (y.empty()) throw Error(ErrorCode::DimensionMismatch, "sign variation of an empty vector");
}

}  // namespace

int s_minus(std::span<const double> y, double zero_tol) {
  require_nonempty(y);
  int count = 0;
  int last = 0;
  for (double v : y) {
    const int s = sign_of(v, zero_tol);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int s_plus(std::span<const double> y, double zero_tol) {
  require_nonempty(y);
  const int n = static_cast<int>(y.size());
  int count = 0;
  int last_sign = 0;  // sign of the most recent nonzero entry
  int run = 0;        // zeros seen since then (or since the start)
  for (int i = 0; i < n; ++i) {
    const int s = sign_of(y[static_cast<std::size_t>(i)], zero_tol);
    if (s == 0) {
      ++run;
      continue;
    }
    if (last_sign == 0) {
      count += run;  // leading zeros
    } else if (run == 0) {
      count += (s != last_sign) ? 1 : 0;
    } else if (s == last_sign) {
      count += 2 * ((run + 1) / 2);
    } else {
      count += 2 * (run / 2) + 1;
    }
    last_sign = s;
    run = 0;
  }
  if (last_sign == 0) return n - 1;  // all zeros
  return count + run;                // trailing zeros
}

bool in_V_by_pattern(std::span<const double> y, double zero_tol) {
  require_nonempty(y);
  const std::size_t n = y.size();
  if (sign_of(y[0], zero_tol) == 0 || sign_of(y[n - 1], zero_tol) == 0) return false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (sign_of(y[i], zero_tol) != 0) continue;
    if (sign_of(y[i - 1], zero_tol) * sign_of(y[i + 1], zero_tol) >= 0) return false;
  }
  return true;
}

bool in_V(std::span<const double> y, double zero_tol) {
  const bool by_pattern = in_V_by_pattern(y, zero_tol);
  if (y.size() == 1) return by_pattern;  // s^- = s^+ = 0 always, so only the pattern applies
  const bool by_counts = s_minus(y, zero_tol) == s_plus(y, zero_tol);
  if (by_pattern != by_counts) {
    throw Error(ErrorCode::CrossCheckFailed, "membership in V disagrees between the two characterizations");
  }
  return by_pattern;
}

int sigma(std::span<const double> y, double zero_tol) {
  if (!in_V(y, zero_tol)) {
    throw Error(ErrorCode::NotInV, "sigma is only defined on V (vector has a zero end entry or an interior "
                                   "zero without a strict sign change)");
  }
  return s_minus(y, zero_tol);
}

double relative_zero_tol(std::span<const double> y, double rel) {
  double m = 0.0;
  for (double v : y) m = std::max(m, std::abs(v));
  return rel * m;
}

}  // namespace tpds
