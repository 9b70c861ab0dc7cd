#include "linkspec/factor.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace linkspec {
namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p a small prime. Coefficients in [0, p).
// ---------------------------------------------------------------------------

using ZpPoly = std::vector<long>;  // ascending powers, trimmed

long zp_inv(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long q = r / nr;
    long tmp = t - q * nt;
    t = nt; nt = tmp;
    tmp = r - q * nr;
    r = nr; nr = tmp;
  }
  return ((t % p) + p) % p;
}

void zp_trim(ZpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZpPoly zp_mul(const ZpPoly& a, const ZpPoly& b, long p) {
  if (a.empty() || b.empty()) return {};
  ZpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  zp_trim(c);
  return c;
}

ZpPoly zp_sub(ZpPoly a, const ZpPoly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % p + p) % p;
  zp_trim(a);
  return a;
}

// a mod b, b nonzero
ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, long p) {
  long linv = zp_inv(b.back(), p);
  while (!a.empty() && a.size() >= b.size()) {
    long f = a.back() * linv % p;
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] = ((a[off + i] - f * b[i]) % p + p) % p;
    zp_trim(a);  // clears the (now zero) top coefficient
  }
  return a;
}

ZpPoly zp_monic(ZpPoly a, long p) {
  if (a.empty()) return a;
  long inv = zp_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

ZpPoly zp_gcd(ZpPoly a, ZpPoly b, long p) {
  while (!b.empty()) {
    ZpPoly r = zp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return zp_monic(a, p);
}

// s*a + t*b = 1 for coprime a, b
void zp_bezout(const ZpPoly& a, const ZpPoly& b, long p, ZpPoly& s, ZpPoly& t) {
  ZpPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    // q = r0 div r1
    ZpPoly q;
    {
      ZpPoly rr = r0;
      long linv = zp_inv(r1.back(), p);
      if (rr.size() >= r1.size()) q.assign(rr.size() - r1.size() + 1, 0);
      while (rr.size() >= r1.size() && !rr.empty()) {
        long f = rr.back() * linv % p;
        size_t off = rr.size() - r1.size();
        q[off] = f;
        for (size_t i = 0; i < r1.size(); ++i)
          rr[off + i] = ((rr[off + i] - f * r1[i]) % p + p) % p;
        zp_trim(rr);
      }
      zp_trim(q);
      r0 = std::move(rr);
    }
    std::swap(r0, r1);
    ZpPoly s2 = zp_sub(s0, zp_mul(q, s1, p), p);
    s0 = std::move(s1); s1 = std::move(s2);
    ZpPoly t2 = zp_sub(t0, zp_mul(q, t1, p), p);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (r0.size() != 1) throw std::logic_error("zp_bezout: inputs not coprime");
  long inv = zp_inv(r0[0], p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = std::move(s0);
  t = std::move(t0);
}

ZpPoly zp_powmod_x(long e_base, const ZpPoly& f, long p) {
  // x^{e_base} mod f by square and multiply on the exponent
  ZpPoly result{1};
  ZpPoly base{0, 1};
  base = zp_rem(base, f, p);
  long e = e_base;
  while (e > 0) {
    if (e & 1) result = zp_rem(zp_mul(result, base, p), f, p);
    base = zp_rem(zp_mul(base, base, p), f, p);
    e >>= 1;
  }
  return result;
}

// Berlekamp: monic squarefree f over F_p -> monic irreducible factors.
std::vector<ZpPoly> berlekamp(const ZpPoly& f, long p) {
  long n = static_cast<long>(f.size()) - 1;
  if (n <= 1) return {f};
  // Q[i] = x^{ip} mod f as a coefficient row of length n
  std::vector<std::vector<long>> Q(n, std::vector<long>(n, 0));
  ZpPoly xp = zp_powmod_x(p, f, p);
  ZpPoly row{1};
  for (long i = 0; i < n; ++i) {
    for (size_t j = 0; j < row.size(); ++j) Q[i][j] = row[j];
    row = zp_rem(zp_mul(row, xp, p), f, p);
  }
  // left nullspace of (Q - I): eliminate (Q - I)^T
  std::vector<std::vector<long>> M(n, std::vector<long>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) M[i][j] = ((Q[j][i] - (i == j ? 1 : 0)) % p + p) % p;
  std::vector<long> pivot_col(n, -1);
  long rank = 0;
  for (long col = 0; col < n && rank < n; ++col) {
    long pr = -1;
    for (long i = rank; i < n; ++i)
      if (M[i][col] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(M[pr], M[rank]);
    long inv = zp_inv(M[rank][col], p);
    for (long j = 0; j < n; ++j) M[rank][j] = M[rank][j] * inv % p;
    for (long i = 0; i < n; ++i) {
      if (i == rank || M[i][col] == 0) continue;
      long fmul = M[i][col];
      for (long j = 0; j < n; ++j) M[i][j] = ((M[i][j] - fmul * M[rank][j]) % p + p) % p;
    }
    pivot_col[rank++] = col;
  }
  std::vector<ZpPoly> basis;
  std::vector<bool> is_pivot(n, false);
  for (long r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  for (long free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    ZpPoly v(n, 0);
    v[free] = 1;
    for (long r = 0; r < rank; ++r) v[pivot_col[r]] = (p - M[r][free]) % p;
    zp_trim(v);
    basis.push_back(std::move(v));
  }
  size_t target = basis.size();
  std::vector<ZpPoly> factors{zp_monic(f, p)};
  for (const auto& v : basis) {
    if (factors.size() == target) break;
    if (v.size() <= 1) continue;  // the constant subalgebra element never splits
    for (long c = 0; c < p && factors.size() < target; ++c) {
      ZpPoly vc = v;
      vc[0] = ((vc[0] - c) % p + p) % p;
      zp_trim(vc);
      std::vector<ZpPoly> next;
      for (const auto& h : factors) {
        if (h.size() <= 2) { next.push_back(h); continue; }
        ZpPoly d = zp_gcd(h, vc, p);
        if (d.size() <= 1 || d.size() == h.size()) {
          next.push_back(h);
        } else {
          ZpPoly quo;  // h / d, exact
          {
            ZpPoly rr = h;
            quo.assign(h.size() - d.size() + 1, 0);
            long linv = zp_inv(d.back(), p);
            while (rr.size() >= d.size() && !rr.empty()) {
              long fmul = rr.back() * linv % p;
              size_t off = rr.size() - d.size();
              quo[off] = fmul;
              for (size_t i = 0; i < d.size(); ++i)
                rr[off + i] = ((rr[off + i] - fmul * d[i]) % p + p) % p;
              zp_trim(rr);
            }
          }
          next.push_back(d);
          next.push_back(zp_monic(quo, p));
        }
      }
      factors = std::move(next);
    }
  }
  return factors;
}

// ---------------------------------------------------------------------------
// Arithmetic in (Z/M)[x], M = p^(2^j). Coefficients in [0, M).
// ---------------------------------------------------------------------------

using ZPoly = std::vector<mpz_class>;

void z_trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly z_reduce(ZPoly a, const mpz_class& M) {
  for (auto& c : a) {
    c %= M;
    if (c < 0) c += M;
  }
  z_trim(a);
  return a;
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b, const mpz_class& M) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1, mpz_class(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return z_reduce(std::move(c), M);
}

ZPoly z_add(ZPoly a, const ZPoly& b, const mpz_class& M) {
  if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return z_reduce(std::move(a), M);
}

ZPoly z_sub(ZPoly a, const ZPoly& b, const mpz_class& M) {
  if (a.size() < b.size()) a.resize(b.size(), mpz_class(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return z_reduce(std::move(a), M);
}

// divmod by a monic divisor, all mod M
std::pair<ZPoly, ZPoly> z_divmod_monic(ZPoly a, const ZPoly& b, const mpz_class& M) {
  if (b.empty() || b.back() != 1) throw std::logic_error("z_divmod_monic: divisor not monic");
  if (a.size() < b.size()) return {{}, std::move(a)};
  ZPoly q(a.size() - b.size() + 1, mpz_class(0));
  while (a.size() >= b.size() && !a.empty()) {
    mpz_class f = a.back();
    size_t off = a.size() - b.size();
    q[off] = f;
    for (size_t i = 0; i < b.size(); ++i) {
      a[off + i] -= f * b[i];
      a[off + i] %= M;
      if (a[off + i] < 0) a[off + i] += M;
    }
    z_trim(a);
  }
  z_trim(q);
  return {std::move(q), std::move(a)};
}

struct HenselPair {
  ZPoly g, h, s, t;
};

// One quadratic step: from (g,h,s,t) valid mod m to valid mod m^2.
// f, g, h monic; monicness of the lifts is restored explicitly (the leading
// coefficients stay congruent to 1, so rescaling is exact).
HenselPair hensel_step(const ZPoly& f, HenselPair in, const mpz_class& m) {
  mpz_class m2 = m * m;
  ZPoly e = z_sub(f, z_mul(in.g, in.h, m2), m2);
  auto [q, r] = z_divmod_monic(z_mul(in.s, e, m2), in.h, m2);
  ZPoly g1 = z_add(z_add(in.g, z_mul(in.t, e, m2), m2), z_mul(q, in.g, m2), m2);
  ZPoly h1 = z_add(in.h, r, m2);
  if (g1.size() != in.g.size() || h1.size() != in.h.size())
    throw std::logic_error("hensel_step: degree drift");
  if (g1.back() != 1) {
    mpz_class u = g1.back(), uinv;
    if (mpz_invert(uinv.get_mpz_t(), u.get_mpz_t(), m2.get_mpz_t()) == 0)
      throw std::logic_error("hensel_step: leading coefficient not invertible");
    for (auto& cc : g1) { cc = cc * uinv % m2; if (cc < 0) cc += m2; }
    for (auto& cc : h1) { cc = cc * u % m2; if (cc < 0) cc += m2; }
    for (auto& cc : in.s) { cc = cc * u % m2; if (cc < 0) cc += m2; }
    for (auto& cc : in.t) { cc = cc * uinv % m2; if (cc < 0) cc += m2; }
    if (g1.back() != 1 || h1.back() != 1)
      throw std::logic_error("hensel_step: could not restore monic lifts");
  }
  ZPoly b = z_sub(z_add(z_mul(in.s, g1, m2), z_mul(in.t, h1, m2), m2), ZPoly{1}, m2);
  auto [c, d] = z_divmod_monic(z_mul(in.s, b, m2), h1, m2);
  ZPoly s1 = z_sub(in.s, d, m2);
  ZPoly t1 = z_sub(in.t, z_add(z_mul(in.t, b, m2), z_mul(c, g1, m2), m2), m2);
  return {std::move(g1), std::move(h1), std::move(s1), std::move(t1)};
}

// Lifts the mod-p factors of f (monic, known mod M) to factors mod M.
// M must be p^(2^j) so that quadratic lifting lands exactly on M.
std::vector<ZPoly> lift_factors(const ZPoly& f, const std::vector<ZpPoly>& modp, long p,
                                const mpz_class& M) {
  if (modp.size() == 1) return {z_reduce(f, M)};
  size_t half = modp.size() / 2;
  std::vector<ZpPoly> left(modp.begin(), modp.begin() + half);
  std::vector<ZpPoly> right(modp.begin() + half, modp.end());
  ZpPoly g0{1}, h0{1};
  for (const auto& u : left) g0 = zp_mul(g0, u, p);
  for (const auto& u : right) h0 = zp_mul(h0, u, p);
  ZpPoly s0, t0;
  zp_bezout(g0, h0, p, s0, t0);
  auto to_z = [](const ZpPoly& a) {
    ZPoly z(a.size());
    for (size_t i = 0; i < a.size(); ++i) z[i] = a[i];
    return z;
  };
  HenselPair cur{to_z(g0), to_z(h0), to_z(s0), to_z(t0)};
  mpz_class m = p;
  while (m < M) {
    cur = hensel_step(z_reduce(f, m * m), std::move(cur), m);
    m *= m;
  }
  auto lg = lift_factors(cur.g, left, p, M);
  auto lh = lift_factors(cur.h, right, p, M);
  lg.insert(lg.end(), lh.begin(), lh.end());
  return lg;
}

// ---------------------------------------------------------------------------
// Zassenhaus driver for a monic squarefree integer polynomial.
// ---------------------------------------------------------------------------

Poly z_to_poly(const ZPoly& a) {
  std::vector<Rat> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = Rat(a[i]);
  return Poly(std::move(c));
}

std::vector<Poly> factor_monic_squarefree_int(const ZPoly& f) {
  long n = static_cast<long>(f.size()) - 1;
  if (n <= 1) return {z_to_poly(f)};
  // prime with f squarefree mod p
  long p = 0;
  for (long cand = 2;; ++cand) {
    bool prime = cand >= 2;
    for (long d = 2; d * d <= cand; ++d)
      if (cand % d == 0) { prime = false; break; }
    if (!prime) continue;
    ZpPoly fp(f.size());
    for (size_t i = 0; i < f.size(); ++i) {
      mpz_class r = f[i] % cand;
      if (r < 0) r += cand;
      fp[i] = r.get_si();
    }
    zp_trim(fp);
    if (static_cast<long>(fp.size()) - 1 != n) continue;  // cannot happen for monic
    ZpPoly d = fp;
    for (size_t i = 1; i < d.size(); ++i) d[i - 1] = d[i] * static_cast<long>(i) % cand;
    d.pop_back();
    zp_trim(d);
    if (d.empty()) continue;
    if (zp_gcd(fp, d, cand).size() == 1) { p = cand; break; }
    if (cand > 100000) throw std::logic_error("factor: no squarefree prime found");
  }
  ZpPoly fp(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    mpz_class r = f[i] % p;
    if (r < 0) r += p;
    fp[i] = r.get_si();
  }
  auto modp = berlekamp(fp, p);
  if (modp.size() == 1) return {z_to_poly(f)};
  std::sort(modp.begin(), modp.end());
  // Mignotte-style bound: |coeff of any monic factor| <= 2^n (n+1) maxc(f)
  mpz_class maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, mpz_class(abs(c)));
  mpz_class bound = (mpz_class(1) << n) * (n + 1) * maxc * 2 + 1;
  mpz_class M = p;
  while (M < bound) M *= M;
  auto lifted = lift_factors(f, modp, p, M);

  // subset recombination with symmetric residues
  auto center = [&M](ZPoly a) {
    mpz_class half = M / 2;
    for (auto& c : a)
      if (c > half) c -= M;
    z_trim(a);
    return a;
  };
  std::vector<Poly> result;
  Poly remaining = z_to_poly(f);
  std::vector<ZPoly> active = std::move(lifted);
  size_t d = 1;
  while (2 * d <= active.size()) {
    bool found = false;
    std::vector<size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      ZPoly cand{1};
      for (size_t i : idx) cand = z_mul(cand, active[i], M);
      Poly candidate = z_to_poly(center(cand));
      if (candidate.divides(remaining)) {
        result.push_back(candidate);
        remaining = remaining / candidate;
        std::vector<ZPoly> rest;
        for (size_t i = 0, k = 0; i < active.size(); ++i) {
          if (k < idx.size() && idx[k] == i) { ++k; continue; }
          rest.push_back(std::move(active[i]));
        }
        active = std::move(rest);
        found = true;
        break;
      }
      // next combination
      long pos = static_cast<long>(d) - 1;
      while (pos >= 0 && idx[pos] == active.size() - d + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (size_t q = pos + 1; q < d; ++q) idx[q] = idx[q - 1] + 1;
    }
    if (!found) ++d;
  }
  if (remaining.degree() > 0) result.push_back(remaining);
  return result;
}

// Monic squarefree g over Q -> monic irreducible factors.
std::vector<Poly> factor_monic_squarefree(const Poly& g) {
  if (g.degree() <= 1) return {g};
  // clear denominators to a primitive integer polynomial
  mpz_class den = 1;
  for (const Rat& c : g.coeffs()) den = lcm(den, c.den());
  ZPoly G(g.coeffs().size());
  for (size_t i = 0; i < G.size(); ++i) {
    Rat c = g.coeffs()[i] * Rat(den);
    G[i] = c.num();
  }
  mpz_class content = 0;
  for (const auto& c : G) content = gcd(content, c);
  for (auto& c : G) c /= content;
  mpz_class b = G.back();
  if (b < 0) { for (auto& c : G) c = -c; b = -b; }
  std::vector<Poly> out;
  if (b == 1) {
    out = factor_monic_squarefree_int(G);
  } else {
    // monicize: F(x) = b^{n-1} G(x/b), then map factors back via x -> b x
    long n = static_cast<long>(G.size()) - 1;
    ZPoly F(G.size());
    F[n] = 1;
    mpz_class pw = 1;  // b^{n-1-k}
    for (long k = n - 1; k >= 0; --k) {
      F[k] = G[k] * pw;
      pw *= b;
    }
    for (const Poly& Fi : factor_monic_squarefree_int(F)) {
      // Fi(b x), then primitive part, then monic
      std::vector<Rat> c(Fi.coeffs());
      Rat scale(1);
      for (size_t i = 0; i < c.size(); ++i) {
        c[i] = c[i] * scale;
        scale *= Rat(b);
      }
      out.push_back(Poly(std::move(c)).monic());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::pair<Poly, long>> factor_rational(const Poly& p) {
  std::vector<std::pair<Poly, long>> out;
  if (p.degree() <= 0) return out;
  Poly q = p.monic();
  // pull out powers of t so the squarefree machinery sees a nonzero constant term
  long tpow = 0;
  while (q.coeff(0).is_zero()) {
    q = q / Poly::t();
    ++tpow;
  }
  if (tpow > 0) out.emplace_back(Poly::t(), tpow);
  for (const auto& [g, mult] : squarefree_decomposition(q)) {
    for (const Poly& f : factor_monic_squarefree(g)) out.emplace_back(f, mult);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace linkspec
