#include "ptlab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "ptlab/bessel.hpp"
#include "ptlab/eigensolver.hpp"
#include "ptlab/error.hpp"

namespace ptlab {
namespace {

constexpr int kThresholdGrid = 64;

// Complex sqrt of a real radicand, placed on the imaginary axis when negative.
Complex signed_root(double radicand) {
  return radicand >= 0.0 ? Complex(std::sqrt(radicand), 0.0) : Complex(0.0, std::sqrt(-radicand));
}

}  // namespace

double default_tol_im(std::span<const Complex> eigenvalues) {
  double radius = 0.0;
  for (const auto& e : eigenvalues) radius = std::max(radius, std::abs(e));
  return 1e-9 * std::max(1.0, radius);
}

SpectrumResult SpectrumResult::from(std::vector<Complex> eigenvalues, double tol_im) {
  SpectrumResult r;
  std::sort(eigenvalues.begin(), eigenvalues.end(), [](const Complex& x, const Complex& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  r.tol_im = tol_im < 0.0 ? default_tol_im(eigenvalues) : tol_im;
  for (const auto& e : eigenvalues) r.max_abs_imag = std::max(r.max_abs_imag, std::abs(e.imag()));
  r.is_real = r.max_abs_imag < r.tol_im;
  r.eigenvalues = std::move(eigenvalues);
  return r;
}

SpectrumResult eigenvalues_dense(const ComplexMatrix& h, double tol_im) {
  return SpectrumResult::from(general_eigenvalues(h), tol_im);
}

double spectrum_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DomainError("spectra have different lengths");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  // greedy: repeatedly take the globally closest unmatched pair
  std::vector<bool> used_a(n, false), used_b(n, false);
  double worst = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    double d = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (used_a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (used_b[j]) continue;
        const double dij = std::abs(a[i] - b[j]);
        if (dij < d) {
          d = dij;
          bi = i;
          bj = j;
        }
      }
    }
    used_a[bi] = used_b[bj] = true;
    worst = std::max(worst, d);
  }
  return worst;
}

SpectrumResult dimer_spectrum(double t, int l, double kappa, double gamma) {
  if (!(t > 0.0)) throw DomainError("dimer_spectrum requires T > 0");
  const double coupling = t * bessel_j(-l, kappa);
  const Complex root = signed_root(coupling * coupling - gamma * gamma);
  return SpectrumResult::from({-root, root});
}

LatticeSpec TrimerSpec::lattice() const {
  return LatticeSpec({t1, t2}, {gamma, s * gamma, -(1.0 + s) * gamma}, Boundary::open);
}

TrimerCoefficients trimer_coefficients(const TrimerSpec& spec) {
  const double j2 = spec.coupling_mag * spec.coupling_mag;
  const double g = spec.gamma;
  const double s = spec.s;
  const double t1sq = spec.t1 * spec.t1;
  const double t2sq = spec.t2 * spec.t2;
  return {(t1sq + t2sq) * j2 - g * g * (1.0 + s + s * s),
          g * (g * g * s * (1.0 + s) + (t1sq * (1.0 + s) - t2sq) * j2)};
}

SpectrumResult trimer_spectrum(const TrimerSpec& spec) {
  const auto [a, b] = trimer_coefficients(spec);
  if (b == 0.0) {
    const Complex root = signed_root(a);
    return SpectrumResult::from({-root, Complex{}, root});
  }
  // companion matrix of E^3 + 0 E^2 - a E - i b
  ComplexMatrix companion(3);
  companion(0, 1) = a;
  companion(0, 2) = Complex(0.0, b);
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  auto roots = general_eigenvalues(companion);
  const Complex ib(0.0, b);
  for (auto& e : roots) {
    // one Newton step tightens simple roots; skipped near multiple roots
    const Complex p = e * e * e - a * e - ib;
    const Complex dp = 3.0 * e * e - a;
    if (std::abs(dp) > 1e-6 * std::max(1.0, std::abs(a))) {
      const Complex next = e - p / dp;
      if (std::abs(next * next * next - a * next - ib) < std::abs(p)) e = next;
    }
  }
  return SpectrumResult::from(std::move(roots));
}

std::pair<double, double> trimer_gamma_real_points(const TrimerSpec& spec) {
  const double s1 = spec.s * (1.0 + spec.s);
  if (s1 == 0.0) throw DomainError("trimer real points require s(1+s) != 0");
  const double numerator = spec.t2 * spec.t2 - spec.t1 * spec.t1 * (1.0 + spec.s);
  const double ratio = numerator / s1;
  if (!(ratio > 0.0))
    throw DomainError("trimer real points require (T2^2 - T1^2 (1+s)) / (s (1+s)) > 0");
  const double g = std::abs(spec.coupling_mag) * std::sqrt(ratio);
  return {-g, g};
}

double band_radicand(const DimerizedRingSpec& spec) {
  const double teff = spec.t * spec.coupling.magnitude;
  const double half = 0.5 * (spec.q - spec.coupling.peierls_phase);
  const double cos_half = std::cos(half);
  const double bracket = (spec.c - 1.0) * (spec.c - 1.0) + 4.0 * spec.c * cos_half * cos_half;
  return bracket * teff * teff - spec.gamma * spec.gamma;
}

std::pair<Complex, Complex> band_energy(const DimerizedRingSpec& spec) {
  const Complex root = signed_root(band_radicand(spec));
  return {-root, root};
}

LatticeSpec dimerized_ring_lattice(std::size_t cells, const DimerizedRingSpec& spec) {
  if (cells < 1) throw DomainError("ring needs at least one cell");
  const std::size_t n = 2 * cells;
  std::vector<double> t(n), g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool odd_site = (i % 2 == 0);  // site n = i + 1
    t[i] = odd_site ? spec.t : spec.c * spec.t;
    g[i] = odd_site ? -spec.gamma : spec.gamma;
  }
  return LatticeSpec(std::move(t), std::move(g), Boundary::periodic);
}

std::vector<double> dimerized_ring_momenta(std::size_t cells, double peierls_phase) {
  std::vector<double> q(cells);
  for (std::size_t j = 0; j < cells; ++j)
    q[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(cells) + 3.0 * peierls_phase;
  return q;
}

ThresholdResult pt_threshold(const HamiltonianFamily& family, double gamma_max, double tol, double tol_im) {
  if (!(gamma_max > 0.0)) throw DomainError("pt_threshold requires gamma_max > 0");
  if (!(tol > 0.0)) throw DomainError("pt_threshold requires tol > 0");
  auto broken = [&](double gamma) { return !eigenvalues_dense(family(gamma), tol_im).is_real; };

  std::vector<bool> grid(kThresholdGrid);
  const double step = gamma_max / (kThresholdGrid - 1);
  int first = -1;
  for (int i = 0; i < kThresholdGrid; ++i) {
    grid[static_cast<std::size_t>(i)] = broken(step * i);
    if (first < 0 && grid[static_cast<std::size_t>(i)]) first = i;
  }

  ThresholdResult out;
  if (first < 0) {
    out.gamma_star = gamma_max;
    out.status = ThresholdStatus::unbroken;
    return out;
  }
  for (int i = first + 1; i < kThresholdGrid; ++i)
    if (!grid[static_cast<std::size_t>(i)]) out.reentrant = true;
  if (first == 0) {
    out.gamma_star = 0.0;
    out.status = ThresholdStatus::broken_at_zero;
    return out;
  }

  double lo = step * (first - 1);
  double hi = step * first;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (broken(mid)) hi = mid; else lo = mid;
  }
  // An imaginary part that grows linearly from gamma = 0 stays below the
  // reality tolerance up to gamma ~ tol_im; such thresholds are zero.
  const double resolution = 10.0 * eigenvalues_dense(family(hi), tol_im).tol_im;
  if (lo == 0.0 || hi <= resolution) {
    out.gamma_star = 0.0;
    out.status = ThresholdStatus::broken_at_zero;
  } else {
    out.gamma_star = 0.5 * (lo + hi);
  }
  return out;
}

}  // namespace ptlab
