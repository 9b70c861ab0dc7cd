// Test-only oracles, independent of the exact implementation paths they check.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <random>
#include <stdexcept>

#include "linkspec/linalg.hpp"
#include "linkspec/rational.hpp"

namespace oracles {

using linkspec::MatQ;
using linkspec::Rat;

inline Eigen::MatrixXd to_double(const MatQ& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

/// Inertia of a hermitian complex matrix by floating-point eigenvalues.
/// Throws when an eigenvalue is too close to the zero margin to classify,
/// so a passing oracle value is trustworthy.
inline linkspec::Inertia numeric_inertia(const Eigen::MatrixXcd& h, double zero_tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  linkspec::Inertia in;
  double scale = std::max(1.0, h.norm());
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double ev = es.eigenvalues()(i) / scale;
    if (ev > zero_tol) in.n_plus++;
    else if (ev < -zero_tol) in.n_minus++;
    else if (std::abs(ev) < zero_tol * 1e-3) in.n_zero++;
    else throw std::runtime_error("numeric_inertia: eigenvalue in the unclassifiable band");
  }
  return in;
}

/// The Tristram-Levine form (1-zeta)S + (1-conj(zeta))S^T at zeta = e^{2 pi i x},
/// assembled in floating point.
inline Eigen::MatrixXcd numeric_tl_form(const MatQ& s, double x) {
  constexpr double kTau = 6.283185307179586476925286766559;
  std::complex<double> zeta(std::cos(kTau * x), std::sin(kTau * x));
  Eigen::MatrixXcd sd = to_double(s).cast<std::complex<double>>();
  return (1.0 - zeta) * sd + (1.0 - std::conj(zeta)) * sd.transpose();
}

inline MatQ random_int_matrix(std::mt19937_64& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  MatQ m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rat(d(rng));
  return m;
}

/// Random unimodular integer matrix built from elementary row operations.
inline MatQ random_unimodular(std::mt19937_64& rng, int n, int ops = 12) {
  MatQ u = MatQ::Identity(n, n);
  if (n < 2) return u;
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2);
  for (int k = 0; k < ops; ++k) {
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    Rat c(coef(rng));
    for (int col = 0; col < n; ++col) u(i, col) += c * u(j, col);
  }
  return u;
}

}  // namespace oracles
