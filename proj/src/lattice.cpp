#include "ptlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ptlab/error.hpp"

namespace ptlab {

RationalBeta RationalBeta::make(long p, long q) {
  if (p <= 0 || q <= 0) throw DomainError("rational beta requires p > 0 and q > 0");
  const long g = std::gcd(p, q);
  return RationalBeta{p / g, q / g};
}

ModulationTone::ModulationTone(double kappa, double beta, double phi, std::optional<RationalBeta> ratio)
    : kappa_(kappa), beta_(beta), phi_(phi), ratio_(ratio) {
  if (!std::isfinite(kappa) || !std::isfinite(beta) || !std::isfinite(phi))
    throw DomainError("modulation tone parameters must be finite");
  if (beta <= 0.0) throw DomainError("modulation tone requires beta > 0");
  // kappa cos(x) = |kappa| cos(x + pi) for kappa < 0
  if (kappa_ < 0.0) {
    kappa_ = -kappa_;
    phi_ += std::numbers::pi;
  }
}

ModulationTone ModulationTone::rational(double kappa, RationalBeta beta, double phi) {
  const auto reduced = RationalBeta::make(beta.p, beta.q);
  return ModulationTone(kappa, reduced.value(), phi, reduced);
}

ModulationTone ModulationTone::irrational(double kappa, double beta, double phi) {
  return ModulationTone(kappa, beta, phi, std::nullopt);
}

ModulationSpec::ModulationSpec(int l, double omega0, std::vector<ModulationTone> tones)
    : l_(l), omega0_(omega0), tones_(std::move(tones)) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be finite and > 0");
}

ModulationSpec ModulationSpec::monochromatic(int l, double omega0, double kappa, double phi) {
  return ModulationSpec(l, omega0, {ModulationTone::rational(kappa, {1, 1}, phi)});
}

bool ModulationSpec::all_rational() const {
  return std::all_of(tones_.begin(), tones_.end(), [](const auto& t) { return t.is_rational(); });
}

double ModulationSpec::base_period() const { return 2.0 * std::numbers::pi / omega0_; }

double ModulationSpec::common_period() const {
  long multiple = 1;
  for (const auto& tone : tones_) {
    if (!tone.is_rational())
      throw DomainError("modulation has an irrational tone; no common period exists");
    multiple = std::lcm(multiple, tone.ratio()->q);
  }
  return static_cast<double>(multiple) * base_period();
}

LatticeSpec::LatticeSpec(std::vector<double> tunnelings, std::vector<double> gammas, Boundary boundary)
    : tunnelings_(std::move(tunnelings)), gammas_(std::move(gammas)), boundary_(boundary) {
  const std::size_t n = gammas_.size();
  if (n < 2) throw DomainError("lattice needs at least 2 sites");
  const std::size_t expected = boundary_ == Boundary::open ? n - 1 : n;
  if (tunnelings_.size() != expected)
    throw DomainError("lattice with " + std::to_string(n) + " sites and " +
                      (boundary_ == Boundary::open ? "open" : "periodic") + " boundary needs " +
                      std::to_string(expected) + " tunnelings, got " + std::to_string(tunnelings_.size()));
  for (double t : tunnelings_)
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("tunnelings must be finite and > 0");
  double sum = 0.0;
  double largest = 0.0;
  for (double g : gammas_) {
    if (!std::isfinite(g)) throw DomainError("gain/loss values must be finite");
    sum += g;
    largest = std::max(largest, std::abs(g));
  }
  if (std::abs(sum) >= 1e-12 * std::max(1.0, largest))
    throw DomainError("gain/loss is not balanced: sum of gammas = " + std::to_string(sum) +
                      " (must vanish)");
}

LatticeSpec LatticeSpec::with_scaled_gammas(double factor) const {
  std::vector<double> scaled(gammas_);
  for (auto& g : scaled) g *= factor;
  return LatticeSpec(tunnelings_, std::move(scaled), boundary_);
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : ComplexMatrix(dim, std::vector<Complex>(dim * dim)) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ < 1) throw DomainError("matrix dimension must be >= 1");
  if (entries_.size() != dim_ * dim_) throw DomainError("matrix entry count does not match dimension");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& e : entries_) s += std::norm(e);
  return std::sqrt(s);
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != dim_) throw DomainError("vector length does not match matrix dimension");
  std::vector<Complex> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError("matrix dimensions differ");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double potential_gradient(const ModulationSpec& spec, double z) {
  double sum = spec.l();
  for (const auto& tone : spec.tones())
    sum += tone.kappa() * std::cos(tone.beta() * spec.omega0() * z + tone.phi());
  return spec.omega0() * sum;
}

double eta(const ModulationSpec& spec, double z) {
  double value = spec.l() * spec.omega0() * z;
  for (const auto& tone : spec.tones())
    value += tone.kappa() / tone.beta() *
             (std::sin(tone.beta() * spec.omega0() * z + tone.phi()) - std::sin(tone.phi()));
  return value;
}

ComplexMatrix hamiltonian_at(const LatticeSpec& lattice, const ModulationSpec& spec, double z) {
  const std::size_t n = lattice.n_sites();
  ComplexMatrix h(n);
  const double f = potential_gradient(spec, z);
  const auto gammas = lattice.gammas();
  for (std::size_t i = 0; i < n; ++i) h(i, i) = Complex(f * static_cast<double>(i + 1), gammas[i]);
  const auto t = lattice.tunnelings();
  for (std::size_t b = 0; b < lattice.n_bonds(); ++b) {
    const std::size_t next = (b + 1) % n;
    h(b, next) -= t[b];
    h(next, b) -= t[b];
  }
  return h;
}

}  // namespace ptlab
