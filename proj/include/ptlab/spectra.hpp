#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ptlab/floquet.hpp"
#include "ptlab/lattice.hpp"

namespace ptlab {

/// Eigenvalues sorted by (real, imag) with the reality verdict.
struct SpectrumResult {
  std::vector<Complex> eigenvalues;
  double max_abs_imag = 0.0;
  double tol_im = 0.0;
  bool is_real = true;

  /// Sorts the eigenvalues and classifies against tol_im. A negative tol_im
  /// selects the default 1e-9 * max(1, spectral radius).
  static SpectrumResult from(std::vector<Complex> eigenvalues, double tol_im = -1.0);
};

double default_tol_im(std::span<const Complex> eigenvalues);

SpectrumResult eigenvalues_dense(const ComplexMatrix& h, double tol_im = -1.0);

/// Pairs two eigenvalue lists (same length) by nearest distance and returns
/// the largest pair distance. Exhaustive for up to 8 values, greedy beyond.
double spectrum_distance(std::span<const Complex> a, std::span<const Complex> b);

/// Dimer with gain/loss (gamma, -gamma): E = -+ sqrt(|T J_{-l}(kappa)|^2 - gamma^2).
SpectrumResult dimer_spectrum(double t, int l, double kappa, double gamma);

/// Three sites with gain/loss (gamma, s gamma, -(1+s) gamma) and bonds T1, T2
/// renormalized by |J|.
struct TrimerSpec {
  double t1 = 1.0;
  double t2 = 1.0;
  double s = 0.0;
  double gamma = 0.0;
  double coupling_mag = 1.0;

  LatticeSpec lattice() const;
};

struct TrimerCoefficients {
  double a;
  double b;
};

/// Coefficients of E^3 - a E - i b = 0.
TrimerCoefficients trimer_coefficients(const TrimerSpec& spec);

/// Roots of E^3 - a E - i b via the companion matrix; {0, -+sqrt(a)} when b == 0.
SpectrumResult trimer_spectrum(const TrimerSpec& spec);

/// Impurity strengths -+|J| sqrt((T2^2 - T1^2 (1+s)) / (s (1+s))) at which b
/// vanishes. The gamma field of spec is ignored. Throws DomainError when the
/// square root is not real.
std::pair<double, double> trimer_gamma_real_points(const TrimerSpec& spec);

/// Periodic chain with T_n = T (n odd), cT (n even), gamma_n = (-1)^n gamma.
struct DimerizedRingSpec {
  double c = 1.0;
  double t = 1.0;
  double gamma = 0.0;
  EffectiveCoupling coupling = EffectiveCoupling::from(1.0);
  double q = 0.0;
};

/// Bracket ((c-1)^2 + 4 c cos^2((q - Theta)/2)) |T_eff|^2 - gamma^2.
double band_radicand(const DimerizedRingSpec& spec);

/// E = -+ sqrt(band_radicand), returned as (E_minus, E_plus).
std::pair<Complex, Complex> band_energy(const DimerizedRingSpec& spec);

/// The finite ring of `cells` unit cells described by spec (q ignored).
LatticeSpec dimerized_ring_lattice(std::size_t cells, const DimerizedRingSpec& spec);

/// Momenta q_j = 2 pi j / cells + 3 Theta at which band_energy reproduces the
/// eigenvalues of build_effective_hamiltonian(dimerized_ring_lattice(...)).
///
/// In the matrix gauge each bond carries -Theta, so the Bloch bracket is
/// 1 + c^2 + 2c cos(k + 2 Theta); band_energy uses cos(q - Theta).
std::vector<double> dimerized_ring_momenta(std::size_t cells, double peierls_phase);

enum class ThresholdStatus { found, broken_at_zero, unbroken };

struct ThresholdResult {
  double gamma_star = 0.0;
  ThresholdStatus status = ThresholdStatus::found;
  /// A grid point above gamma_star was real again (re-entrant family).
  bool reentrant = false;
};

using HamiltonianFamily = std::function<ComplexMatrix(double gamma)>;

/// First gamma in [0, gamma_max] where the spectrum of family(gamma) turns
/// complex: 64-point scan, then bisection to absolute precision tol. Returns
/// gamma_max with status unbroken if no scanned point is complex. A threshold
/// below ten times the reality tolerance is reported as broken_at_zero.
ThresholdResult pt_threshold(const HamiltonianFamily& family, double gamma_max, double tol, double tol_im = -1.0);

}  // namespace ptlab
