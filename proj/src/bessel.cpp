#include "ptlab/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptlab/error.hpp"

namespace ptlab {
namespace {

constexpr double kSeriesCutoff = 2.0;
constexpr double kRescaleAbove = 1.0e250;

void check_argument(double x) {
  if (!std::isfinite(x)) throw DomainError("bessel_j: argument is not finite");
  if (std::abs(x) > kBesselMaxArgument)
    throw DomainError("bessel_j: |x| = " + std::to_string(std::abs(x)) +
                      " exceeds supported range 1e4");
}

// Ascending series sum_k (-1)^k (x/2)^{2k+m} / (k! (k+m)!), x >= 0.
double series(int m, double x) {
  const double half = 0.5 * x;
  double lead = 1.0;
  for (int k = 1; k <= m; ++k) {
    lead *= half / k;
    if (lead == 0.0) return 0.0;
  }
  const double q = -half * half;
  double term = lead;
  double sum = lead;
  for (int k = 1; k < 60; ++k) {
    term *= q / (static_cast<double>(k) * (k + m));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller recurrence for x >= kSeriesCutoff; fills out[0..max_order].
void miller(int max_order, double x, std::vector<double>& out) {
  const double top = std::max(static_cast<double>(max_order), x);
  int start = static_cast<int>(top) + 16 + static_cast<int>(std::sqrt(160.0 * top));
  start += start % 2;

  const double two_over_x = 2.0 / x;
  double above = 0.0;   // J_{k+1}
  double current = 1.0; // J_k (unnormalized)
  double norm = 0.0;    // J_0 + 2 sum J_{2k}
  for (int k = start; k >= 1; --k) {
    const double below = k * two_over_x * current - above;
    above = current;
    current = below;
    if (k <= max_order) out[static_cast<std::size_t>(k)] = above;
    if (k % 2 == 0) norm += 2.0 * above;
    if (std::abs(current) > kRescaleAbove) {
      current /= kRescaleAbove;
      above /= kRescaleAbove;
      norm /= kRescaleAbove;
      for (int j = k; j <= max_order; ++j) out[static_cast<std::size_t>(j)] /= kRescaleAbove;
    }
  }
  out[0] = current;
  norm += current;
  for (auto& v : out) v /= norm;
}

}  // namespace

int default_truncation(double arg) { return static_cast<int>(std::ceil(std::abs(arg))) + 40; }

std::vector<double> bessel_j_batch(int max_order, double x) {
  check_argument(x);
  if (max_order < 0) throw DomainError("bessel_j_batch: max_order must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  const double ax = std::abs(x);
  if (ax == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (ax < kSeriesCutoff) {
    for (int m = 0; m <= max_order; ++m) out[static_cast<std::size_t>(m)] = series(m, ax);
  } else {
    miller(max_order, ax, out);
  }
  if (x < 0.0)
    for (int m = 1; m <= max_order; m += 2) out[static_cast<std::size_t>(m)] = -out[static_cast<std::size_t>(m)];
  return out;
}

double bessel_j(int m, double x) {
  check_argument(x);
  const int order = m < 0 ? -m : m;
  const double value = bessel_j_batch(order, x)[static_cast<std::size_t>(order)];
  return (m < 0 && (order % 2 != 0)) ? -value : value;
}

std::complex<double> jacobi_anger_partial(double kappa, double theta, int m_max) {
  if (!std::isfinite(theta)) throw DomainError("jacobi_anger_partial: theta is not finite");
  if (m_max < 0) throw DomainError("jacobi_anger_partial: m_max must be >= 0");
  const auto j = bessel_j_batch(m_max, kappa);
  std::complex<double> sum = j[0];
  for (int m = 1; m <= m_max; ++m) {
    const double jm = j[static_cast<std::size_t>(m)];
    const double jneg = (m % 2 == 0) ? jm : -jm;
    sum += jm * std::polar(1.0, m * theta) + jneg * std::polar(1.0, -m * theta);
  }
  return sum;
}

}  // namespace ptlab
