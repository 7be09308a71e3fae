#include "ptlab/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "ptlab/bessel.hpp"
#include "ptlab/error.hpp"

namespace ptlab {
namespace {

constexpr double kNegligible = 1e-15;

// J_n from a batch J_0..J_M, any sign of n.
double order(const std::vector<double>& batch, long n) {
  const long a = std::labs(n);
  if (a >= static_cast<long>(batch.size())) return 0.0;
  const double v = batch[static_cast<std::size_t>(a)];
  return (n < 0 && (a % 2 != 0)) ? -v : v;
}

Complex gauge_factor(double kappa, double beta, double phi) {
  return std::polar(1.0, -kappa / beta * std::sin(phi));
}

bool is_unit_rational(const ModulationTone& tone) {
  return tone.is_rational() && tone.ratio()->p == 1 && tone.ratio()->q == 1;
}

// Single tone with arbitrary beta: resonance l + n beta = 0.
CouplingPair single_tone(int l, const ModulationTone& tone) {
  const double arg = tone.kappa() / tone.beta();
  Complex value = 0.0;
  if (tone.is_rational()) {
    const long p = tone.ratio()->p;
    const long q = tone.ratio()->q;
    if ((static_cast<long>(l) * q) % p == 0) {
      const long n = -static_cast<long>(l) * q / p;
      value = bessel_j(static_cast<int>(n), arg) * std::polar(1.0, static_cast<double>(n) * tone.phi());
    }
  } else if (l == 0) {
    value = bessel_j(0, arg);
  }
  return {EffectiveCoupling::from(value),
          EffectiveCoupling::from(value * gauge_factor(tone.kappa(), tone.beta(), tone.phi()))};
}

}  // namespace

EffectiveCoupling EffectiveCoupling::from(Complex value) {
  return EffectiveCoupling{value, std::abs(value), std::arg(value)};
}

CouplingPair effective_coupling_monochromatic(int l, double kappa, double phi) {
  const Complex value = bessel_j(-l, kappa) * std::polar(1.0, -static_cast<double>(l) * phi);
  return {EffectiveCoupling::from(value), EffectiveCoupling::from(value * gauge_factor(kappa, 1.0, phi))};
}

CouplingPair effective_coupling_bichromatic(int l, double kappa1, double phi1, const ModulationTone& second,
                                            int m_max) {
  const double beta = second.beta();
  if (!(beta > 0.0)) throw DomainError("bichromatic coupling requires beta > 0");
  const double kappa2 = second.kappa();
  const double phi2 = second.phi();
  const double arg2 = kappa2 / beta;
  const Complex global = std::polar(1.0, -static_cast<double>(l) * phi1);

  Complex sum = 0.0;
  if (!second.is_rational()) {
    sum = bessel_j(-l, kappa1) * bessel_j(0, arg2);
  } else {
    const long p = second.ratio()->p;
    const long q = second.ratio()->q;
    if (m_max < 0) m_max = static_cast<int>(std::ceil(std::max(std::abs(kappa1), std::abs(arg2)))) + 40;
    const long kmax = m_max / q;
    const auto j1 = bessel_j_batch(static_cast<int>(std::labs(l) + p * kmax), kappa1);
    const auto j2 = bessel_j_batch(static_cast<int>(q * kmax), arg2);
    for (long k = -kmax; k <= kmax; ++k) {
      const double a = order(j1, -l - p * k);
      const double b = order(j2, q * k);
      if (std::abs(a) < kNegligible && std::abs(b) < kNegligible) continue;
      sum += a * b * std::polar(1.0, static_cast<double>(q * k) * (phi2 - beta * phi1));
    }
  }
  const Complex value = global * sum;
  const Complex raw = value * gauge_factor(kappa1, 1.0, phi1) * gauge_factor(kappa2, beta, phi2);
  return {EffectiveCoupling::from(value), EffectiveCoupling::from(raw)};
}

double effective_coupling_polychromatic_product(int l, std::span<const double> harmonic_kappas,
                                                double irrational_kappa, double beta) {
  if (!(beta > 0.0)) throw DomainError("polychromatic coupling requires beta > 0");
  double product = bessel_j(0, irrational_kappa / beta);
  for (std::size_t i = 0; i < harmonic_kappas.size(); ++i) {
    const double m = static_cast<double>(i + 1);
    product *= bessel_j(-l, harmonic_kappas[i] / m);
  }
  return product;
}

NumericCoupling effective_coupling_numeric(const ModulationSpec& spec, int window_periods, int steps_per_period) {
  if (window_periods < 1) throw DomainError("window_periods must be >= 1");
  if (steps_per_period < 2) throw DomainError("steps_per_period must be >= 2");
  const double period = spec.all_rational() ? spec.common_period() : spec.base_period();
  const double window = period * window_periods;
  long steps = static_cast<long>(steps_per_period) * window_periods;
  steps += steps % 2;
  const double h = window / static_cast<double>(steps);

  Complex odd = 0.0;
  Complex even = 0.0;
  for (long i = 1; i < steps; ++i) {
    const Complex v = std::polar(1.0, eta(spec, h * static_cast<double>(i)));
    if (i % 2 == 1) odd += v; else even += v;
  }
  const Complex ends = std::polar(1.0, eta(spec, 0.0)) + std::polar(1.0, eta(spec, window));
  const Complex integral = (ends + 4.0 * odd + 2.0 * even) * (h / 3.0);

  NumericCoupling out;
  out.coupling = EffectiveCoupling::from(integral / window);
  out.window = window;
  out.accuracy_warning = steps_per_period < 64;
  return out;
}

std::optional<CouplingPair> effective_coupling_analytic(const ModulationSpec& spec) {
  const auto tones = spec.tones();
  const int l = spec.l();
  switch (tones.size()) {
    case 0: {
      const auto c = EffectiveCoupling::from(l == 0 ? 1.0 : 0.0);
      return CouplingPair{c, c};
    }
    case 1:
      if (is_unit_rational(tones[0])) return effective_coupling_monochromatic(l, tones[0].kappa(), tones[0].phi());
      return single_tone(l, tones[0]);
    case 2: {
      std::size_t first = 0;
      if (!is_unit_rational(tones[0])) {
        if (!is_unit_rational(tones[1])) return std::nullopt;
        first = 1;
      }
      const auto& base = tones[first];
      return effective_coupling_bichromatic(l, base.kappa(), base.phi(), tones[1 - first]);
    }
    default:
      return std::nullopt;
  }
}

ComplexMatrix build_effective_hamiltonian(const LatticeSpec& lattice, const EffectiveCoupling& coupling) {
  const std::size_t n = lattice.n_sites();
  ComplexMatrix h(n);
  const auto gammas = lattice.gammas();
  for (std::size_t i = 0; i < n; ++i) h(i, i) = Complex(0.0, gammas[i]);
  const auto t = lattice.tunnelings();
  for (std::size_t b = 0; b < lattice.n_bonds(); ++b) {
    const std::size_t next = (b + 1) % n;
    h(b, next) -= t[b] * coupling.value;
    h(next, b) -= t[b] * std::conj(coupling.value);
  }
  return h;
}

}  // namespace ptlab
