#include "linkspec/linalg.hpp"

#include <algorithm>

namespace linkspec {

Poly char_poly(const MatQ& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: matrix not square");
  const Eigen::Index n = m.rows();
  // V holds det(t*Id - A_r) for the leading principal submatrix A_r,
  // V[0] = leading coefficient.
  std::vector<Rat> v{Rat(1)};
  for (Eigen::Index r = 1; r <= n; ++r) {
    // q = [1, -a, -(S R), -(S M R), ...] with A_r = [[M, R], [S, a]].
    std::vector<Rat> q(static_cast<size_t>(r) + 1, Rat(0));
    q[0] = Rat(1);
    q[1] = -m(r - 1, r - 1);
    if (r >= 2) {
      VecQ u = m.block(r - 1, 0, 1, r - 1).transpose();  // S^T
      VecQ rc = m.block(0, r - 1, r - 1, 1);
      for (Eigen::Index k = 2; k <= r; ++k) {
        Rat dot(0);
        for (Eigen::Index i = 0; i < r - 1; ++i) dot += u(i) * rc(i);
        q[static_cast<size_t>(k)] = -dot;
        if (k < r) u = (m.block(0, 0, r - 1, r - 1).transpose() * u).eval();
      }
    }
    // truncated Toeplitz product: only the first r+1 coefficients are kept
    std::vector<Rat> nv(static_cast<size_t>(r) + 1, Rat(0));
    for (size_t i = 0; i < q.size(); ++i)
      for (size_t j = 0; j < v.size() && i + j <= static_cast<size_t>(r); ++j)
        nv[i + j] += q[i] * v[j];
    v = std::move(nv);
  }
  std::reverse(v.begin(), v.end());  // to ascending powers of t
  return Poly(std::move(v));
}

Inertia hermitian_inertia(const MatQ& m) {
  return detail::hermitian_inertia_impl<Rat>(
      m, [](const Rat& x) { return x; }, [](const Rat& x) { return x.sign(); });
}

Inertia hermitian_inertia(const MatNf& m) {
  return detail::hermitian_inertia_impl<Nf>(
      m, [](const Nf& x) { return x.conj(); }, [](const Nf& x) { return x.sign(); });
}

std::vector<long> rank_profile(const MatQ& h, const Nf& lambda, long kmax) {
  if (h.rows() != h.cols()) throw std::invalid_argument("rank_profile: matrix not square");
  const Eigen::Index n = h.rows();
  MatNf a = lift(h, lambda.field());
  for (Eigen::Index i = 0; i < n; ++i) a(i, i) -= lambda;
  std::vector<long> ranks{static_cast<long>(n)};
  MatNf p = MatNf::Identity(n, n);
  for (long k = 1; k <= kmax; ++k) {
    p = (p * a).eval();
    ranks.push_back(rank<Nf>(p));
  }
  return ranks;
}

MatQ poly_at_matrix(const Poly& p, const MatQ& m) {
  const Eigen::Index n = m.rows();
  MatQ acc = MatQ::Zero(n, n);
  for (long k = p.degree(); k >= 0; --k) {
    acc = (acc * m).eval();
    for (Eigen::Index i = 0; i < n; ++i) acc(i, i) += p.coeff(k);
  }
  return acc;
}

}  // namespace linkspec
