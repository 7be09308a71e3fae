#include <doctest.h>

#include <cmath>
#include <iostream>
#include <numbers>

#include "oracles.hpp"
#include "ptlab/bessel.hpp"
#include "ptlab/error.hpp"
#include "ptlab/floquet.hpp"

using namespace ptlab;
using std::numbers::pi;

namespace {

constexpr double kJ1Max = 0.58186522428159638;
// J_1(1) J_0(1/phi), frozen from a 30-digit evaluation.
constexpr double kGoldenCoupling = 0.399022077840231;

ModulationSpec bichromatic(int l, double omega0, double k1, double p1, double k2, long p, long q, double p2) {
  return {l, omega0,
          {ModulationTone::rational(k1, RationalBeta::make(1, 1), p1),
           ModulationTone::rational(k2, RationalBeta::make(p, q), p2)}};
}

}  // namespace

TEST_CASE("monochromatic value") {
  const auto c = effective_coupling_monochromatic(1, 1.84118378134066, 0.0).normalized;
  CHECK(c.magnitude == doctest::Approx(kJ1Max).epsilon(1e-14));
  CHECK(c.value.real() == doctest::Approx(-kJ1Max).epsilon(1e-14));
  const auto zero = effective_coupling_monochromatic(0, 0.0, 0.7).normalized;
  CHECK(zero.value == Complex(1.0));
}

TEST_CASE("monochromatic phase law") {
  for (int l : {-2, 1, 3}) {
    const double m0 = effective_coupling_monochromatic(l, 2.2, 0.0).normalized.magnitude;
    for (int k = 0; k < 16; ++k) {
      const double phi = 2 * pi * k / 16;
      const auto c = effective_coupling_monochromatic(l, 2.2, phi).normalized;
      const auto c0 = effective_coupling_monochromatic(l, 2.2, 0.0).normalized;
      CHECK(c.magnitude == doctest::Approx(m0).epsilon(1e-14));
      CHECK(std::abs(c.value - c0.value * std::polar(1.0, -l * phi)) < 1e-14);
    }
  }
}

TEST_CASE("numeric average reproduces the monochromatic formula") {
  auto g = oracle::rng(21);
  for (int draw = 0; draw < 30; ++draw) {
    const int l = oracle::uniform_int(g, -3, 3);
    const double kappa = oracle::uniform(g, 0.0, 5.0);
    const double phi = oracle::uniform(g, -pi, pi);
    const auto spec = ModulationSpec::monochromatic(l, oracle::uniform(g, 1.0, 50.0), kappa, phi);
    const auto analytic = effective_coupling_monochromatic(l, kappa, phi);
    const auto numeric = effective_coupling_numeric(spec);
    CHECK(std::abs(numeric.coupling.value - analytic.raw.value) < 1e-7);
    CHECK(std::abs(analytic.normalized.magnitude - analytic.raw.magnitude) < 1e-14);
  }
}

TEST_CASE("library quadrature agrees with an independent midpoint sum") {
  const auto spec = bichromatic(1, 3.0, 1.2, 0.3, 0.8, 3, 2, -0.4);
  const auto ours = effective_coupling_numeric(spec).coupling.value;
  const auto ref = oracle::average_phase(1, 3.0, {1.2, 0.8}, {1.0, 1.5}, {0.3, -0.4}, spec.common_period(), 200000);
  CHECK(std::abs(ours - ref) < 1e-9);
}

TEST_CASE("bichromatic resonance sum matches the numeric average") {
  auto g = oracle::rng(22);
  for (int draw = 0; draw < 30; ++draw) {
    const int l = oracle::uniform_int(g, -2, 2);
    const long p = oracle::uniform_int(g, 1, 4), q = oracle::uniform_int(g, 1, 4);
    const auto spec = bichromatic(l, 2.0, oracle::uniform(g, 0, 3), oracle::uniform(g, -pi, pi),
                                  oracle::uniform(g, 0, 3), p, q, oracle::uniform(g, -pi, pi));
    const auto analytic = effective_coupling_analytic(spec);
    REQUIRE(analytic.has_value());
    const auto numeric = effective_coupling_numeric(spec);
    CHECK(std::abs(numeric.coupling.value - analytic->raw.value) < 1e-7);
  }
}

TEST_CASE("single resonant tone") {
  ModulationSpec spec(2, 1.0, {ModulationTone::rational(1.5, RationalBeta::make(2, 1), 0.6)});
  const auto analytic = effective_coupling_analytic(spec);
  REQUIRE(analytic.has_value());
  CHECK(std::abs(effective_coupling_numeric(spec).coupling.value - analytic->raw.value) < 1e-7);
  // l = 1 is not a multiple of beta = 2, so the drive averages the coupling away
  ModulationSpec off(1, 1.0, {ModulationTone::rational(1.5, RationalBeta::make(2, 1), 0.6)});
  CHECK(effective_coupling_analytic(off)->normalized.magnitude < 1e-15);
}

TEST_CASE("irrational second tone") {
  const auto golden = ModulationTone::irrational(1.0, std::numbers::phi, 0.0);
  const auto c = effective_coupling_bichromatic(1, 1.0, 0.0, golden);
  CHECK(c.normalized.magnitude == doctest::Approx(kGoldenCoupling).epsilon(1e-13));
  CHECK(bessel_j(1, 1.0) * bessel_j(0, 1.0 / std::numbers::phi) == doctest::Approx(kGoldenCoupling).epsilon(1e-13));
  for (double p1 : {0.0, 0.9, 2.5})
    for (double p2 : {0.0, 1.3, -2.0}) {
      const auto t = ModulationTone::irrational(1.0, std::numbers::phi, p2);
      CHECK(effective_coupling_bichromatic(1, 1.0, p1, t).normalized.magnitude ==
            doctest::Approx(kGoldenCoupling).epsilon(1e-13));
    }
}

TEST_CASE("quasi-periodic average converges with the window") {
  ModulationSpec spec(1, 1.0,
                      {ModulationTone::rational(1.0, RationalBeta::make(1, 1), 0.0),
                       ModulationTone::irrational(1.0, std::numbers::phi, 0.0)});
  const auto target = effective_coupling_analytic(spec)->raw.value;
  double previous = INFINITY;
  for (int w : {20, 100, 500}) {
    const double err = std::abs(effective_coupling_numeric(spec, w, 256).coupling.value - target);
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-4);
}

TEST_CASE("magnitude never exceeds one") {
  auto g = oracle::rng(23);
  for (int draw = 0; draw < 200; ++draw) {
    const auto spec = bichromatic(oracle::uniform_int(g, -3, 3), 1.0, oracle::uniform(g, 0, 6),
                                  oracle::uniform(g, -pi, pi), oracle::uniform(g, 0, 6), oracle::uniform_int(g, 1, 5),
                                  oracle::uniform_int(g, 1, 5), oracle::uniform(g, -pi, pi));
    CHECK(effective_coupling_analytic(spec)->normalized.magnitude <= 1.0 + 1e-12);
  }
}

TEST_CASE("polychromatic product") {
  const std::vector<double> harmonics{1.84118378134066, 2 * 1.84118378134066};
  const double prod = effective_coupling_polychromatic_product(1, harmonics, 0.0, 1.0);
  CHECK(prod == doctest::Approx(kJ1Max * kJ1Max).epsilon(1e-13));
  CHECK(effective_coupling_polychromatic_product(1, {}, 0.8, 2.0) == doctest::Approx(bessel_j(0, 0.4)));
}

TEST_CASE("product formula against the numeric average for a few harmonics") {
  // Not an identity: cross terms between harmonics also resonate. The
  // comparison is printed so the size of the gap is visible in the log.
  for (int n : {2, 3}) {
    std::vector<ModulationTone> tones;
    std::vector<double> kappas;
    for (int m = 1; m <= n; ++m) {
      kappas.push_back(m * 1.84118378134066);
      tones.push_back(ModulationTone::rational(kappas.back(), RationalBeta::make(m, 1), 0.0));
    }
    const ModulationSpec spec(1, 1.0, tones);
    const double product = effective_coupling_polychromatic_product(1, kappas, 0.0, 1.0);
    const double numeric = effective_coupling_numeric(spec).coupling.magnitude;
    std::cout << "harmonics=" << n << " product=" << product << " numeric=" << numeric << "\n";
    CHECK(std::isfinite(numeric));
    CHECK(numeric <= 1.0);
  }
}

TEST_CASE("analytic shapes") {
  CHECK(effective_coupling_analytic(ModulationSpec(0, 1.0))->normalized.value == Complex(1.0));
  CHECK(effective_coupling_analytic(ModulationSpec(2, 1.0))->normalized.value == Complex(0.0));
  ModulationSpec three(1, 1.0,
                       {ModulationTone::rational(1.0, RationalBeta::make(1, 1), 0.0),
                        ModulationTone::rational(1.0, RationalBeta::make(2, 1), 0.0),
                        ModulationTone::rational(1.0, RationalBeta::make(3, 1), 0.0)});
  CHECK_FALSE(effective_coupling_analytic(three).has_value());
}

TEST_CASE("effective Hamiltonian is PT symmetric in structure") {
  const LatticeSpec lattice({1.0, 0.7, 0.7, 1.0}, {0.3, -0.1, 0.0, 0.1, -0.3}, Boundary::open);
  const auto c = effective_coupling_monochromatic(1, 1.3, 0.0).normalized;
  const auto h = build_effective_hamiltonian(lattice, c);
  const std::size_t n = h.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(std::conj(h(n - 1 - i, n - 1 - j)) - h(i, j)) < 1e-14);
}

TEST_CASE("effective Hamiltonian layout") {
  const LatticeSpec ring({1.0, 2.0, 3.0}, {0.2, -0.2, 0.0}, Boundary::periodic);
  const auto c = EffectiveCoupling::from(Complex(0.3, 0.4));
  const auto h = build_effective_hamiltonian(ring, c);
  CHECK(h(0, 1) == -1.0 * c.value);
  CHECK(h(1, 0) == -1.0 * std::conj(c.value));
  CHECK(h(2, 0) == -3.0 * c.value);
  CHECK(h(0, 2) == -3.0 * std::conj(c.value));
  CHECK(h(0, 0) == Complex(0, 0.2));
}

TEST_CASE("numeric coupling warnings and errors") {
  const auto spec = ModulationSpec::monochromatic(1, 1.0, 1.0, 0.0);
  CHECK(effective_coupling_numeric(spec, 1, 32).accuracy_warning);
  CHECK_FALSE(effective_coupling_numeric(spec, 1, 64).accuracy_warning);
  CHECK_THROWS_AS(effective_coupling_numeric(spec, 0, 64), DomainError);
}
