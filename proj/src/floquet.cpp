#include "tpds/floquet.hpp"

#include "tpds/error.hpp"
#include "tpds/total_positivity.hpp"

#include <cmath>

namespace tpds {

FloquetData floquet(const TimeVaryingSystem& sys, std::optional<double> step) {
  if (!sys.period()) throw Error(ErrorCode::NotPeriodic, "system has no period");
  const double T = *sys.period();
  FloquetData fd;
  fd.period = T;
  fd.monodromy = transition_matrix(sys, sys.a(), sys.a() + T, step.value_or(T * 1e-4)).phi;
  for (const SpectralPair& sp : ordered_real_spectrum(fd.monodromy, 1e-8, ErrorCode::FloquetViolation)) {
    fd.multipliers.push_back(sp.eigenvalue);
    fd.eigvecs.push_back(sp.eigenvector);
    fd.sign_counts.push_back(sp.sign_count);
  }
  return fd;
}

ModeRun floquet_mode_evolution(const TimeVaryingSystem& sys, const FloquetData& fd, int first,
                               const std::vector<double>& coeffs, double horizon, int samples,
                               std::optional<double> step) {
  const int n = sys.n();
  const int last = first + static_cast<int>(coeffs.size()) - 1;
  if (coeffs.empty() || first < 1 || last > n) {
    throw Error(ErrorCode::DimensionMismatch, "mode indices must lie in 1.." + std::to_string(n));
  }
  if (coeffs.front() == 0.0) throw Error(ErrorCode::LeadingCoefficientZero, "c_" + std::to_string(first) + " = 0");
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidSystem, "horizon must be positive");

  Vector z0 = Vector::Zero(n);
  for (std::size_t k = 0; k < coeffs.size(); ++k) z0 += coeffs[k] * fd.eigvecs.at(static_cast<std::size_t>(first - 1) + k);

  ModeRun run;
  run.band_low = first - 1;
  run.band_high = last - 1;
  SimulateOptions opts;
  opts.step = step.value_or(fd.period * 1e-3);
  run.trajectory = simulate_linear(sys, z0, linspace(sys.a(), sys.a() + horizon, samples), opts);
  const Trajectory& tr = run.trajectory;

  std::string bad;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    if (!tr.in_V_flags[k]) continue;
    if (tr.s_minus[k] < run.band_low || tr.s_minus[k] > run.band_high) {
      bad = "sigma = " + std::to_string(tr.s_minus[k]) + " at t = " + format_double(tr.times[k]);
      break;
    }
  }
  if (bad.empty() && static_cast<int>(tr.exceptional_times.size()) > last - first) {
    bad = std::to_string(tr.exceptional_times.size()) + " exceptional clusters";
  }
  const double tail_start = sys.a() + 0.9 * horizon;
  run.terminal_sigma = tr.s_minus.back();
  for (std::size_t k = 0; bad.empty() && k < tr.size(); ++k) {
    if (tr.times[k] < tail_start) continue;
    if (!tr.in_V_flags[k] || tr.s_minus[k] != run.band_low) {
      bad = "terminal sigma is not " + std::to_string(run.band_low) + " at t = " + format_double(tr.times[k]);
    }
  }
  if (!bad.empty()) {
    throw Error(ErrorCode::BandViolation, bad + " (band " + std::to_string(run.band_low) + ".." +
                                              std::to_string(run.band_high) + ")");
  }
  return run;
}

}  // namespace tpds
