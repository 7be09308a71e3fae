#include "ptlab/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ptlab/error.hpp"

namespace ptlab {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double abs1(Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }

struct Givens {
  double c;
  Complex s;
};

// Rotation with [c s; -conj(s) c] [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
  const double ax = std::abs(x);
  const double ay = std::abs(y);
  if (ay == 0.0) return {1.0, 0.0};
  if (ax == 0.0) return {0.0, std::conj(y) / ay};
  const double r = std::hypot(ax, ay);
  return {ax / r, (x / ax) * std::conj(y) / r};
}

// Eigenvalue of the 2x2 block [a b; c d] closest to d.
Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
  const Complex half = 0.5 * (a - d);
  const Complex disc = std::sqrt(half * half + b * c);
  const Complex mid = 0.5 * (a + d);
  const Complex e1 = mid + disc;
  const Complex e2 = mid - disc;
  return std::abs(e1 - d) < std::abs(e2 - d) ? e1 : e2;
}

}  // namespace

ComplexMatrix hessenberg_form(const ComplexMatrix& input) {
  ComplexMatrix a = input;
  const std::size_t n = a.dim();
  std::vector<Complex> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) == 0.0 ? Complex(1.0) : x0 / std::abs(x0);
    const Complex alpha = -phase * norm;
    // v = x - alpha e1, reflector I - 2 v v^H / (v^H v)
    std::fill(v.begin(), v.end(), Complex{});
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    if (vnorm2 == 0.0) continue;
    const double scale = 2.0 / vnorm2;
    // left: rows k+1..n-1
    for (std::size_t j = 0; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * a(i, j);
      dot *= scale;
      for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= v[i] * dot;
    }
    // right: columns k+1..n-1
    for (std::size_t i = 0; i < n; ++i) {
      Complex dot = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) dot += a(i, j) * v[j];
      dot *= scale;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= dot * std::conj(v[j]);
    }
    a(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  return a;
}

std::vector<Complex> general_eigenvalues(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  if (n > kMaxDenseDim)
    throw DomainError("dense eigensolver supports dim <= 256, got " + std::to_string(n));
  for (const auto& e : h.entries())
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw DomainError("matrix has non-finite entries");

  ComplexMatrix a = hessenberg_form(h);
  std::vector<Complex> eig(n);
  const double anorm = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
  const int max_iter = 30;

  std::vector<Givens> rot(n);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int iter = 0;
  while (hi >= 0) {
    // locate the top of the unreduced block ending at hi
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const auto k = static_cast<std::size_t>(lo);
      double ref = abs1(a(k, k)) + abs1(a(k - 1, k - 1));
      if (ref == 0.0) ref = anorm;
      if (abs1(a(k, k - 1)) <= kEps * ref) {
        a(k, k - 1) = 0.0;
        break;
      }
      --lo;
    }
    const auto top = static_cast<std::size_t>(lo);
    const auto bot = static_cast<std::size_t>(hi);
    if (top == bot) {
      eig[bot] = a(bot, bot);
      --hi;
      iter = 0;
      continue;
    }
    if (++iter > max_iter)
      throw NumericalError("QR iteration failed to converge for eigenvalue " + std::to_string(bot));

    Complex mu;
    if (iter % 10 == 0) {
      // exceptional shift breaks cycling
      mu = a(bot, bot) + 0.75 * std::abs(a(bot, bot - 1));
    } else {
      mu = wilkinson_shift(a(bot - 1, bot - 1), a(bot - 1, bot), a(bot, bot - 1), a(bot, bot));
    }

    for (std::size_t k = top; k <= bot; ++k) a(k, k) -= mu;
    // H - mu I = Q R
    for (std::size_t k = top; k < bot; ++k) {
      const Givens g = make_givens(a(k, k), a(k + 1, k));
      rot[k] = g;
      for (std::size_t j = k; j <= bot; ++j) {
        const Complex x = a(k, j);
        const Complex y = a(k + 1, j);
        a(k, j) = g.c * x + g.s * y;
        a(k + 1, j) = -std::conj(g.s) * x + g.c * y;
      }
    }
    // R Q
    for (std::size_t k = top; k < bot; ++k) {
      const Givens g = rot[k];
      const std::size_t last = std::min(k + 1, bot);
      for (std::size_t i = top; i <= last; ++i) {
        const Complex x = a(i, k);
        const Complex y = a(i, k + 1);
        a(i, k) = x * g.c + y * std::conj(g.s);
        a(i, k + 1) = -x * g.s + y * g.c;
      }
    }
    for (std::size_t k = top; k <= bot; ++k) a(k, k) += mu;
  }
  return eig;
}

std::vector<Complex> lu_solve(ComplexMatrix a, std::vector<Complex> b) {
  const std::size_t n = a.dim();
  if (b.size() != n) throw DomainError("right-hand side length does not match matrix");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == Complex{}) throw NumericalError("singular matrix in LU solve");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(b[k], b[piv]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex factor = a(i, k) / a(k, k);
      if (factor == Complex{}) continue;
      for (std::size_t j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b[i] -= factor * b[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    Complex acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * b[j];
    b[k] = acc / a(k, k);
  }
  return b;
}

double eigen_residual(const ComplexMatrix& h, Complex eigenvalue) {
  const std::size_t n = h.dim();
  const double hnorm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  ComplexMatrix shifted = h;
  // a tiny offset keeps the shifted matrix invertible at an exact eigenvalue
  const Complex offset = eigenvalue + Complex(hnorm * 1e-14, hnorm * 1e-14);
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= offset;

  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = Complex(1.0, 0.1 * static_cast<double>(i + 1)) / std::sqrt(double(n));
  double best = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 4; ++it) {
    std::vector<Complex> w;
    try {
      w = lu_solve(shifted, v);
    } catch (const NumericalError&) {
      break;
    }
    double norm = 0.0;
    for (const auto& x : w) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    for (auto& x : w) x /= norm;
    v = std::move(w);
    auto hv = h.apply(v);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) r += std::norm(hv[i] - eigenvalue * v[i]);
    best = std::min(best, std::sqrt(r) / hnorm);
  }
  return best;
}

}  // namespace ptlab
