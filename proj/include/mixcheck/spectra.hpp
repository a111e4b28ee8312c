#pragma once

// Dense eigenvalues of real square matrices and the second-eigenvalue
// statistic for stochastic matrices.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "mixcheck/errors.hpp"

namespace mixcheck {

using Complex = std::complex<double>;

/// All n eigenvalues, ordered by modulus desc, then real part desc, then
/// imaginary part desc.
struct Spectrum {
  std::vector<Complex> eigenvalues;

  std::size_t size() const { return eigenvalues.size(); }
  const Complex& operator[](std::size_t i) const { return eigenvalues[i]; }
};

struct Lambda2 {
  Complex value;
  double modulus;
  double gap;  // 1 - modulus
};

namespace detail {

inline bool spectral_order(const Complex& a, const Complex& b) {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  if (a.real() != b.real()) return a.real() > b.real();
  return a.imag() > b.imag();
}

// Diagonal similarity scaling by powers of two (the scaling half of
// LAPACK's gebal) so row and column norms are comparable. Exact in binary
// floating point, so the spectrum is unchanged.
inline void balance(Eigen::MatrixXd& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  bool converged = false;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

}  // namespace detail

inline Spectrum eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1)
    throw ShapeError("eigenvalues: matrix must be square and nonempty");
  if (!a.allFinite()) throw DomainError("eigenvalues: non-finite entry");
  Eigen::MatrixXd work = a;
  detail::balance(work);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(work, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw NumericalError("eigenvalues: QR iteration did not converge for " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.rows()) + " matrix");
  Spectrum s;
  const auto& ev = solver.eigenvalues();
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), detail::spectral_order);
  return s;
}

// Moduli closer than this count as tied when picking the second eigenvalue,
// so eigenvalues that are exactly on the unit circle in exact arithmetic
// (permutation matrices) break ties by real part as intended.
inline constexpr double kModulusTieTolerance = 1e-10;

/// Second eigenvalue of a stochastic matrix given its spectrum: drop the
/// single eigenvalue nearest 1, then take the largest modulus. Ties on
/// modulus go to the larger real part, then the larger imaginary part, so
/// a repeated eigenvalue 1 gives lambda2 = 1.
inline Lambda2 second_eigenvalue(const Spectrum& spectrum) {
  if (spectrum.size() < 2)
    throw DomainError("second_eigenvalue requires n >= 2");
  const auto& ev = spectrum.eigenvalues;
  std::size_t nearest = 0;
  for (std::size_t i = 1; i < ev.size(); ++i)
    if (std::abs(ev[i] - 1.0) < std::abs(ev[nearest] - 1.0)) nearest = i;

  const Complex* best = nullptr;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (i == nearest) continue;
    const Complex& z = ev[i];
    if (!best) {
      best = &z;
      continue;
    }
    const double dm = std::abs(z) - std::abs(*best);
    if (dm > kModulusTieTolerance) {
      best = &z;
    } else if (dm >= -kModulusTieTolerance) {
      if (z.real() > best->real() ||
          (z.real() == best->real() && z.imag() > best->imag()))
        best = &z;
    }
  }
  const double m = std::abs(*best);
  return {*best, m, 1.0 - m};
}

inline Lambda2 second_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw ShapeError("second_eigenvalue: matrix must be square");
  if (a.rows() < 2) throw DomainError("second_eigenvalue requires n >= 2");
  const Eigen::VectorXd dev = (a.rowwise().sum().array() - 1.0).abs();
  Eigen::Index worst = 0;
  if (!(dev.maxCoeff(&worst) <= 1e-6))
    throw DomainError("second_eigenvalue: row " + std::to_string(worst) +
                      " sums to " + std::to_string(a.row(worst).sum()) +
                      ", not 1");
  return second_eigenvalue(eigenvalues(a));
}

}  // namespace mixcheck
