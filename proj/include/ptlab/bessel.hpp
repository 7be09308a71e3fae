#pragma once

#include <complex>
#include <vector>

namespace ptlab {

/// Largest |x| accepted by the Bessel routines.
inline constexpr double kBesselMaxArgument = 1.0e4;

/// Bessel function of the first kind of integer order m.
///
/// Negative orders are obtained from J_{-m}(x) = (-1)^m J_m(x), so the
/// reflection identity holds bit-exactly. Absolute error is below 1e-12 for
/// |x| <= 50. Throws DomainError for non-finite x or |x| > 1e4.
double bessel_j(int m, double x);

/// J_0(x) .. J_{max_order}(x) in one pass.
///
/// Uses downward (Miller) recurrence normalized by J_0 + 2 sum J_{2k} = 1,
/// and the ascending power series for |x| < 2.
std::vector<double> bessel_j_batch(int max_order, double x);

/// Truncated Jacobi-Anger sum  sum_{|m| <= m_max} J_m(kappa) e^{i m theta},
/// which converges to exp(i kappa sin(theta)).
std::complex<double> jacobi_anger_partial(double kappa, double theta, int m_max);

/// Truncation order used by the expansions: ceil(|arg|) + 40.
int default_truncation(double arg);

}  // namespace ptlab
