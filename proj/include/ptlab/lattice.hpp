#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ptlab {

using Complex = std::complex<double>;

/// Frequency ratio beta = p/q with gcd(p, q) = 1.
struct RationalBeta {
  long p = 1;
  long q = 1;

  /// Reduces to lowest terms; throws DomainError unless p, q > 0.
  static RationalBeta make(long p, long q);
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const RationalBeta&, const RationalBeta&) = default;
};

/// One cosine component  kappa * cos(beta * omega0 * z + phi)  of the gradient.
///
/// Whether beta is rational is declared by the caller; a tone built with
/// irrational() never gets a common period, whatever its floating value.
class ModulationTone {
 public:
  static ModulationTone rational(double kappa, RationalBeta beta, double phi);
  static ModulationTone irrational(double kappa, double beta, double phi);

  double kappa() const { return kappa_; }
  double beta() const { return beta_; }
  double phi() const { return phi_; }
  const std::optional<RationalBeta>& ratio() const { return ratio_; }
  bool is_rational() const { return ratio_.has_value(); }

 private:
  ModulationTone(double kappa, double beta, double phi, std::optional<RationalBeta> ratio);

  double kappa_;
  double beta_;
  double phi_;
  std::optional<RationalBeta> ratio_;
};

/// f(z) = omega0 (l + sum_i kappa_i cos(beta_i omega0 z + phi_i)).
class ModulationSpec {
 public:
  ModulationSpec(int l, double omega0, std::vector<ModulationTone> tones = {});

  static ModulationSpec monochromatic(int l, double omega0, double kappa, double phi);

  int l() const { return l_; }
  double omega0() const { return omega0_; }
  std::span<const ModulationTone> tones() const { return tones_; }
  bool all_rational() const;

  /// 2 pi / omega0.
  double base_period() const;
  /// Smallest Z with f(z + Z) = f(z) and exp(i eta) Z-periodic:
  /// 2 pi lcm(q_i) / omega0. Throws DomainError if any tone is irrational.
  double common_period() const;

 private:
  int l_;
  double omega0_;
  std::vector<ModulationTone> tones_;
};

enum class Boundary { open, periodic };

/// N-site lattice with bond tunnelings T_n and balanced on-site gain/loss.
///
/// Bond n joins sites n and n+1 (1-based); for a periodic lattice bond N
/// joins site N back to site 1.
class LatticeSpec {
 public:
  LatticeSpec(std::vector<double> tunnelings, std::vector<double> gammas, Boundary boundary);

  std::size_t n_sites() const { return gammas_.size(); }
  std::span<const double> tunnelings() const { return tunnelings_; }
  std::span<const double> gammas() const { return gammas_; }
  Boundary boundary() const { return boundary_; }
  std::size_t n_bonds() const { return tunnelings_.size(); }

  /// Same geometry with every gamma multiplied by factor.
  LatticeSpec with_scaled_gammas(double factor) const;

 private:
  std::vector<double> tunnelings_;
  std::vector<double> gammas_;
  Boundary boundary_;
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Complex> entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;
  std::vector<Complex> apply(std::span<const Complex> v) const;
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> entries_;
};

double potential_gradient(const ModulationSpec& spec, double z);

/// eta(z) = int_0^z f, in closed form.
double eta(const ModulationSpec& spec, double z);

/// Instantaneous Hamiltonian: -T_n on every bond, f(z) n + i gamma_n on site n.
ComplexMatrix hamiltonian_at(const LatticeSpec& lattice, const ModulationSpec& spec, double z);

}  // namespace ptlab
