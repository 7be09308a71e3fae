#pragma once

#include <optional>
#include <span>

#include "ptlab/lattice.hpp"

namespace ptlab {

/// Period-averaged hopping renormalization T_eff / T.
struct EffectiveCoupling {
  Complex value;
  double magnitude = 0.0;
  double peierls_phase = 0.0;  // arg(value), radians

  static EffectiveCoupling from(Complex value);
};

/// Closed-form coupling together with the same quantity in the gauge of the
/// numerically integrated eta(z).
///
/// eta(z) starts at zero, which adds the constant -sum_i (kappa_i/beta_i)
/// sin(phi_i) to the phase; `raw` carries that unit-modulus factor and is what
/// effective_coupling_numeric reproduces, `normalized` omits it.
struct CouplingPair {
  EffectiveCoupling normalized;
  EffectiveCoupling raw;
};

/// J_{-l}(kappa) e^{-i l phi}.
CouplingPair effective_coupling_monochromatic(int l, double kappa, double phi);

/// Second tone of a bichromatic drive; the first tone has beta = 1.
///
/// For a rational second tone (beta = p/q) only the resonant orders m = q k
/// contribute:
///   e^{-i l phi1} sum_k e^{i q k (phi2 - beta phi1)} J_{-l-pk}(kappa1) J_{qk}(kappa2/beta)
/// with |q k| <= m_max. For an irrational tone only k = 0 survives.
/// m_max < 0 selects ceil(max(kappa1, kappa2/beta)) + 40.
CouplingPair effective_coupling_bichromatic(int l, double kappa1, double phi1, const ModulationTone& second,
                                            int m_max = -1);

/// Product formula for a harmonic series kappa_m cos(m omega0 z + phi_m)
/// plus one irrational tone:  J_0(kappa/beta) prod_m J_{-l}(kappa_m / m).
///
/// Evaluated exactly as written; it does not equal the full resonance sum in
/// general (see the oracle comparison in the test suite).
double effective_coupling_polychromatic_product(int l, std::span<const double> harmonic_kappas,
                                                double irrational_kappa, double beta);

struct NumericCoupling {
  EffectiveCoupling coupling;
  double window = 0.0;          // averaging length Z
  bool accuracy_warning = false; // fewer than 64 steps per period
};

/// (1/Z) int_0^Z exp(i eta(z)) dz by composite Simpson quadrature.
///
/// Z is window_periods times the common period when every tone is rational,
/// otherwise window_periods base periods 2 pi / omega0.
NumericCoupling effective_coupling_numeric(const ModulationSpec& spec, int window_periods = 1,
                                           int steps_per_period = 4096);

/// Closed-form coupling for the shapes that have one: no tones, a single
/// beta = 1 tone, or beta = 1 plus one further tone. Empty otherwise.
std::optional<CouplingPair> effective_coupling_analytic(const ModulationSpec& spec);

/// High-frequency Hamiltonian: -T_n c on (n, n+1), -T_n conj(c) on (n+1, n),
/// i gamma_n on the diagonal.
ComplexMatrix build_effective_hamiltonian(const LatticeSpec& lattice, const EffectiveCoupling& coupling);

}  // namespace ptlab
