#pragma once

#include <stdexcept>
#include <vector>

#include "linkspec/cyclo.hpp"
#include "linkspec/polynomial.hpp"
#include "linkspec/rational.hpp"

namespace linkspec {

// Exact dense linear algebra over an arbitrary field scalar. The scalar must
// provide field arithmetic, operator==, and a member is_zero(). Pivoting only
// ever tests for zero, so no ordering on the scalar is required.

template <typename K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;

namespace detail {

// Row echelon elimination in place; returns pivot columns.
template <typename K>
std::vector<Eigen::Index> echelonize(Mat<K>& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < m.rows(); ++i) {
      if (!m(i, col).is_zero()) { p = i; break; }
    }
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    K inv = K(1) / m(row, col);
    for (Eigen::Index j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      K f = m(i, col);
      for (Eigen::Index j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

template <typename K>
long rank(Mat<K> m) {
  return static_cast<long>(detail::echelonize(m).size());
}

/// Columns form a basis of the right kernel {v : Mv = 0}, in the order of the
/// free columns of the reduced echelon form (column-echelon order).
template <typename K>
Mat<K> kernel_basis(Mat<K> m) {
  const Eigen::Index n = m.cols();
  auto pivots = detail::echelonize(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat<K> out(n, n - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    for (Eigen::Index i = 0; i < n; ++i) out(i, k) = K(0);
    out(free, k) = K(1);
    for (size_t r = 0; r < pivots.size(); ++r)
      out(pivots[r], k) = K(0) - m(static_cast<Eigen::Index>(r), free);
    ++k;
  }
  return out;
}

template <typename K>
Mat<K> inverse(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const Eigen::Index n = m.rows();
  Mat<K> aug(n, 2 * n);
  aug.leftCols(n) = m;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) aug(i, n + j) = K(i == j ? 1 : 0);
  auto pivots = detail::echelonize(aug);
  if (static_cast<Eigen::Index>(pivots.size()) != n || pivots.back() != n - 1)
    throw std::domain_error("inverse: singular matrix");
  return aug.rightCols(n);
}

/// Characteristic polynomial det(t*Id - M) by the Samuelson-Berkowitz
/// recurrence (division free, so it also works over rings).
Poly char_poly(const MatQ& m);

struct Inertia {
  long n_plus = 0;
  long n_minus = 0;
  long n_zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

namespace detail {

/// Congruence diagonalization of a hermitian matrix: diagonal pivots when
/// available, hyperbolic 2x2 pivots (contributing (1,1,0)) on a totally
/// isotropic diagonal. ConjFn gives the scalar conjugate, SignFn the exact
/// sign of (conjugation-invariant) pivots.
template <typename K, typename ConjFn, typename SignFn>
Inertia hermitian_inertia_impl(Mat<K> m, ConjFn conj, SignFn sign_of) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_inertia: matrix not square");
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!(m(i, j) == conj(m(j, i))))
        throw std::invalid_argument("hermitian_inertia: matrix is not hermitian");

  Inertia in;
  std::vector<Eigen::Index> act(n);
  for (Eigen::Index i = 0; i < n; ++i) act[i] = i;

  auto drop = [&act](Eigen::Index v) {
    act.erase(std::find(act.begin(), act.end(), v));
  };

  while (!act.empty()) {
    Eigen::Index piv = -1;
    for (auto i : act) {
      if (!m(i, i).is_zero()) { piv = i; break; }
    }
    if (piv >= 0) {
      (sign_of(m(piv, piv)) > 0 ? in.n_plus : in.n_minus)++;
      K d = m(piv, piv);
      for (auto j : act) {
        if (j == piv) continue;
        for (auto k : act) {
          if (k == piv) continue;
          m(j, k) = m(j, k) - m(j, piv) * m(piv, k) / d;
        }
      }
      drop(piv);
      continue;
    }
    Eigen::Index hi = -1, hj = -1;
    for (size_t a = 0; a < act.size() && hi < 0; ++a)
      for (size_t b = a + 1; b < act.size(); ++b)
        if (!m(act[a], act[b]).is_zero()) { hi = act[a]; hj = act[b]; break; }
    if (hi < 0) {
      in.n_zero += static_cast<long>(act.size());
      break;
    }
    in.n_plus++;
    in.n_minus++;
    K a = m(hi, hj), ab = m(hj, hi);
    for (auto k : act) {
      if (k == hi || k == hj) continue;
      for (auto l : act) {
        if (l == hi || l == hj) continue;
        m(k, l) = m(k, l) - m(k, hj) * m(hi, l) / a - m(k, hi) * m(hj, l) / ab;
      }
    }
    drop(hi);
    drop(hj);
  }
  return in;
}

}  // namespace detail

/// Inertia of a symmetric rational matrix.
Inertia hermitian_inertia(const MatQ& m);
/// Inertia of a hermitian matrix over a cyclotomic field; pivot signs come
/// from the certified real-embedding sign.
Inertia hermitian_inertia(const MatNf& m);

/// Ranks of (h - lambda*Id)^k for k = 0..kmax, over any field containing
/// lambda. The number of Jordan blocks of size k at lambda is
/// r_{k-1} - 2 r_k + r_{k+1}.
std::vector<long> rank_profile(const MatQ& h, const Nf& lambda, long kmax);

/// Evaluates a rational polynomial at a square rational matrix.
MatQ poly_at_matrix(const Poly& p, const MatQ& m);

}  // namespace linkspec
