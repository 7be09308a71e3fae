#include "ptlab/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ptlab/eigensolver.hpp"
#include "ptlab/error.hpp"

namespace ptlab {
namespace {

// Hopping part of the rotating-frame Hamiltonian at one z. Bond b joins sites
// a = b and c = b + 1 (mod N); the lab entry -T at (a, c) picks up
// exp(i (a - c) eta).
struct RotatingFrame {
  const LatticeSpec& lattice;
  const ModulationSpec& spec;
  std::vector<Complex> forward;   // coefficient on (a, c)
  std::vector<Complex> backward;  // coefficient on (c, a)

  RotatingFrame(const LatticeSpec& l, const ModulationSpec& s)
      : lattice(l), spec(s), forward(l.n_bonds()), backward(l.n_bonds()) {}

  void set(double z) {
    const double phase = eta(spec, z);
    const auto t = lattice.tunnelings();
    const long n = static_cast<long>(lattice.n_sites());
    for (std::size_t b = 0; b < lattice.n_bonds(); ++b) {
      const long a = static_cast<long>(b);
      const long c = (a + 1) % n;
      const Complex w = std::polar(1.0, static_cast<double>(a - c) * phase);
      forward[b] = -t[b] * w;
      backward[b] = -t[b] * std::conj(w);
    }
  }

  // out = -i H_rot phi
  void derivative(std::span<const Complex> phi, std::span<Complex> out) const {
    const auto g = lattice.gammas();
    const std::size_t n = lattice.n_sites();
    for (std::size_t i = 0; i < n; ++i) out[i] = Complex(0.0, g[i]) * phi[i];
    for (std::size_t b = 0; b < lattice.n_bonds(); ++b) {
      const std::size_t c = (b + 1) % n;
      out[b] += forward[b] * phi[c];
      out[c] += backward[b] * phi[b];
    }
    for (auto& v : out) v = Complex(v.imag(), -v.real());
  }
};

void to_lab(const ModulationSpec& spec, std::span<const Complex> phi, double z, std::vector<Complex>& psi) {
  const double phase = eta(spec, z);
  psi.resize(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i)
    psi[i] = phi[i] * std::polar(1.0, -static_cast<double>(i + 1) * phase);
}

}  // namespace

StateVector StateVector::localized(std::size_t n_sites, std::size_t site) {
  if (site < 1 || site > n_sites) throw DomainError("site index out of range");
  StateVector s;
  s.amplitudes.assign(n_sites, Complex{});
  s.amplitudes[site - 1] = 1.0;
  return s;
}

double StateVector::power() const {
  double p = 0.0;
  for (const auto& a : amplitudes) p += std::norm(a);
  return p;
}

Complex fold_quasi_energy(Complex e, double width) {
  double re = std::remainder(e.real(), width);  // in [-width/2, width/2]
  if (re <= -0.5 * width) re += width;
  return {re, e.imag()};
}

PropagationResult propagate(const LatticeSpec& lattice, const ModulationSpec& spec, const StateVector& psi0,
                            double z_end, long steps, const StepObserver& observer) {
  const std::size_t n = lattice.n_sites();
  if (psi0.amplitudes.size() != n) throw DomainError("initial state length does not match lattice");
  if (!std::isfinite(z_end)) throw DomainError("z_end must be finite");
  const double span = std::abs(z_end - psi0.z);
  const double needed = std::ceil(64.0 * span / spec.base_period() - 1e-9);
  if (steps < 1 || static_cast<double>(steps) < needed)
    throw DomainError("propagate needs at least 64 steps per base period (" +
                      std::to_string(static_cast<long>(needed)) + " here), got " + std::to_string(steps));

  // phi(z0) = exp(i n eta(z0)) psi(z0)
  std::vector<Complex> phi(n);
  {
    const double phase = eta(spec, psi0.z);
    for (std::size_t i = 0; i < n; ++i)
      phi[i] = psi0.amplitudes[i] * std::polar(1.0, static_cast<double>(i + 1) * phase);
  }

  RotatingFrame frame(lattice, spec);
  std::vector<Complex> k1(n), k2(n), k3(n), k4(n), tmp(n);
  const double h = (z_end - psi0.z) / static_cast<double>(steps);

  PropagationResult result;
  result.state = psi0;
  if (observer) observer(result.state);

  double z = psi0.z;
  for (long step = 0; step < steps; ++step) {
    frame.set(z);
    frame.derivative(phi, k1);
    frame.set(z + 0.5 * h);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * h * k1[i];
    frame.derivative(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + 0.5 * h * k2[i];
    frame.derivative(tmp, k3);
    frame.set(z + h);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = phi[i] + h * k3[i];
    frame.derivative(tmp, k4);
    for (std::size_t i = 0; i < n; ++i) phi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    z = (step + 1 == steps) ? z_end : psi0.z + h * static_cast<double>(step + 1);

    double power = 0.0;
    for (const auto& v : phi) power += std::norm(v);
    const bool overflow = !(power <= kOverflowPower);
    if (observer || overflow || step + 1 == steps) {
      to_lab(spec, phi, z, result.state.amplitudes);
      result.state.z = z;
      if (observer) observer(result.state);
    }
    if (overflow) {
      result.status = PropagationStatus::overflow;
      return result;
    }
  }
  return result;
}

MonodromyResult monodromy(const LatticeSpec& lattice, const ModulationSpec& spec, long steps) {
  if (steps < 512) throw DomainError("monodromy needs at least 512 steps per period");
  if (!spec.all_rational()) throw DomainError("monodromy requires a periodic modulation (irrational tone present)");
  const double period = spec.common_period();
  const std::size_t n = lattice.n_sites();
  const long total = steps * std::lround(period / spec.base_period());

  MonodromyResult out{ComplexMatrix(n), {}, {}, period, 2.0 * std::numbers::pi / period};
  for (std::size_t col = 0; col < n; ++col) {
    const auto r = propagate(lattice, spec, StateVector::localized(n, col + 1), period, total);
    if (r.status == PropagationStatus::overflow) throw NumericalError("monodromy propagation overflowed");
    for (std::size_t row = 0; row < n; ++row) out.matrix(row, col) = r.state.amplitudes[row];
  }
  out.multipliers = general_eigenvalues(out.matrix);
  for (const auto& lambda : out.multipliers) {
    if (lambda == Complex{}) throw NumericalError("singular monodromy matrix");
    const Complex eps = Complex(0.0, 1.0) * std::log(lambda) / period;
    out.quasi_energies.push_back(fold_quasi_energy(eps, out.zone_width));
  }
  std::sort(out.quasi_energies.begin(), out.quasi_energies.end(), [](const Complex& a, const Complex& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
  return out;
}

}  // namespace ptlab
