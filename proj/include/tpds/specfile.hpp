#pragma once

#include "tpds/nonlinear.hpp"
#include "tpds/system.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tpds {

/// Run defaults stored alongside a system. Every field is optional; commands fall back to
/// their own defaults.
struct Experiment {
  std::optional<double> step;
  std::optional<int> samples;               // number of grid points for simulations
  std::optional<double> horizon;            // simulation length (default: the interval length)
  std::optional<std::vector<double>> z0;
  std::optional<std::vector<double>> x0;
  std::optional<double> delta_floor;
  std::optional<int> samples_per_segment;
  std::optional<int> max_iters;
  std::optional<int> q_max;
  std::optional<double> tol;
  std::optional<double> perturbation;       // added to x0[0] before Poincare analysis
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<int> coeff_first;           // Floquet mode run: c_first, c_first+1, ...
  std::optional<std::vector<double>> coeffs;

  bool operator==(const Experiment&) const = default;
};

struct SystemSpec {
  std::string name;
  int n = 0;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> period;
  std::variant<TimeVaryingSystem, NonlinearSystem> system;
  Experiment experiment;

  bool is_linear() const { return std::holds_alternative<TimeVaryingSystem>(system); }
  const TimeVaryingSystem& linear() const;
  const NonlinearSystem& nonlinear() const;
};

/// JSON document with sections "meta", exactly one of "linear" / "nonlinear", and optional
/// "experiment". Matrix and right-hand-side entries are numbers or expression strings.
/// Throws ParseError (malformed JSON or schema), SyntaxError / UnknownIdentifier (expressions),
/// InvalidSystem, NotPeriodic.
SystemSpec parse_spec(const std::string& text);
SystemSpec read_spec_file(const std::filesystem::path& path);

/// Canonical text form; parse_spec(serialize_spec(s)) is structurally equal to s.
std::string serialize_spec(const SystemSpec& spec);

/// Structural equality (expression trees compared node by node).
bool same_spec(const SystemSpec& x, const SystemSpec& y);

}  // namespace tpds
