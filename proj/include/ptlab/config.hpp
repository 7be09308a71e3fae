#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

enum class Scenario { spectrum, scan_kappa, phase_diagram, threshold, propagate, effective_coupling };

enum class CouplingMethod { automatic, analytic, numeric };

std::string_view to_string(Scenario s);
std::string_view to_string(CouplingMethod m);

struct Range {
  double min = 0.0;
  double max = 1.0;
  int points = 2;

  /// Evenly spaced points, endpoints included.
  std::vector<double> values() const;
  friend bool operator==(const Range&, const Range&) = default;
};

struct CouplingOptions {
  CouplingMethod method = CouplingMethod::automatic;
  int window_periods = 1;
  int steps_per_period = 4096;
  friend bool operator==(const CouplingOptions&, const CouplingOptions&) = default;
};

struct ThresholdOptions {
  double gamma_max = 2.0;
  double tol = 1e-8;
  friend bool operator==(const ThresholdOptions&, const ThresholdOptions&) = default;
};

struct PropagateOptions {
  double z_end = 0.0;
  long steps = 0;
  long stride = 1;
  std::size_t initial_site = 1;                 // used when initial_amplitudes is empty
  std::vector<Complex> initial_amplitudes;
  friend bool operator==(const PropagateOptions&, const PropagateOptions&) = default;
};

/// Validated run description. Built only by parse_config.
struct RunConfig {
  Scenario scenario;
  LatticeSpec lattice;
  ModulationSpec modulation;
  CouplingOptions coupling;
  std::optional<Range> kappa;          // scan_kappa, phase_diagram
  std::size_t kappa_tone = 0;          // which tone the kappa axis drives
  std::optional<Range> gamma_sq;       // phase_diagram: gamma^2 / T_1^2
  std::optional<ThresholdOptions> threshold;
  std::optional<PropagateOptions> propagate;
  double tol_im = -1.0;                // < 0: scale-aware default
  std::string output;                  // empty: standard output
};

/// Parses and validates a JSON run description. Errors are ConfigError with
/// the offending field path (or the parser's line and column) in the message.
RunConfig parse_config(std::string_view text);

/// JSON echo of a config; parse_config(serialize_config(c)) is equivalent to c.
std::string serialize_config(const RunConfig& config);

/// Modulation with tone `tone` set to amplitude kappa (other fields kept).
ModulationSpec with_tone_kappa(const ModulationSpec& spec, std::size_t tone, double kappa);

/// Direction of gamma sweeps: the configured gammas scaled to max |gamma_n| = 1.
std::vector<double> gamma_profile(const LatticeSpec& lattice);

/// Lattice geometry of `base` with gamma_n = strength * profile_n.
LatticeSpec lattice_with_gamma(const LatticeSpec& base, std::span<const double> profile, double strength);

}  // namespace ptlab
