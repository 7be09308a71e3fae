#pragma once

#include <vector>

#include "ptlab/lattice.hpp"

namespace ptlab {

/// Maximum matrix dimension accepted by the dense eigensolver.
inline constexpr std::size_t kMaxDenseDim = 256;

/// All eigenvalues of a general complex matrix, unordered.
///
/// Householder reduction to upper Hessenberg form followed by single-shift
/// complex QR iteration with Wilkinson shifts and exceptional shifts on
/// stagnation. Throws NumericalError if an eigenvalue fails to converge within
/// 30 iterations per eigenvalue; throws DomainError for dim > kMaxDenseDim or
/// non-finite entries.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& h);

/// Reduces h to upper Hessenberg form by a unitary similarity.
ComplexMatrix hessenberg_form(const ComplexMatrix& h);

/// Relative eigenpair residual ||(H - E I) v|| / ||H||_F, where v is the
/// approximate eigenvector for E obtained by inverse iteration.
double eigen_residual(const ComplexMatrix& h, Complex eigenvalue);

/// Solves a x = b by LU with partial pivoting. Throws NumericalError if a is
/// exactly singular.
std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b);

}  // namespace ptlab
