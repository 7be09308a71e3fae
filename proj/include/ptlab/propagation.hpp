#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

/// Mode amplitudes psi_n at position z.
struct StateVector {
  std::vector<Complex> amplitudes;
  double z = 0.0;

  /// Unit amplitude on one site (1-based).
  static StateVector localized(std::size_t n_sites, std::size_t site);
  double power() const;
};

enum class PropagationStatus { ok, overflow };

struct PropagationResult {
  StateVector state;
  PropagationStatus status = PropagationStatus::ok;
};

/// Power above which propagation stops with PropagationStatus::overflow.
inline constexpr double kOverflowPower = 1e100;

/// Called with the lab-frame state after every accepted step (and once at the start).
using StepObserver = std::function<void(const StateVector&)>;

/// Integrates i dpsi/dz = H(z) psi from psi0.z to z_end with `steps` classical
/// Runge-Kutta steps.
///
/// The gradient term f(z) n is carried exactly by the substitution
/// psi_n = exp(-i n eta(z)) phi_n, so the integrator only sees the bounded
/// hopping and gain/loss part; the returned state is back in the lab frame.
/// Requires at least 64 steps per base period 2 pi / omega0 covered.
PropagationResult propagate(const LatticeSpec& lattice, const ModulationSpec& spec, const StateVector& psi0,
                            double z_end, long steps, const StepObserver& observer = {});

struct MonodromyResult {
  ComplexMatrix matrix;
  std::vector<Complex> multipliers;     // eigenvalues of matrix
  std::vector<Complex> quasi_energies;  // sorted by (real, imag)
  double period = 0.0;
  double zone_width = 0.0;              // 2 pi / period
};

/// One-period propagator U(Z) over the common period of an all-rational
/// modulation, and the quasi-energies eps = (i/Z) Log(lambda) with real parts
/// folded into (-pi/Z, pi/Z]. `steps` counts RK4 steps per base period 2 pi /
/// omega0 and must be >= 512.
MonodromyResult monodromy(const LatticeSpec& lattice, const ModulationSpec& spec, long steps = 2048);

/// Maps a quasi-energy or energy into the zone (-width/2, width/2].
Complex fold_quasi_energy(Complex e, double width);

}  // namespace ptlab
