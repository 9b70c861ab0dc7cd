#include <doctest.h>

#include <random>

#include "linkspec/cyclo.hpp"
#include "linkspec/factor.hpp"
#include "linkspec/linalg.hpp"
#include "linkspec/polynomial.hpp"
#include "linkspec/rational.hpp"
#include "oracles.hpp"

using namespace linkspec;

namespace {
Poly poly_from_ints(std::initializer_list<long> coeffs) {
  std::vector<Rat> c;
  for (long v : coeffs) c.emplace_back(v);
  return Poly(std::move(c));
}
}  // namespace

TEST_CASE("rational parsing and normalization") {
  CHECK(Rat::parse("4/6") == Rat(2, 3));
  CHECK(Rat::parse("-4/6").str() == "-2/3");
  CHECK(Rat::parse("7").is_integer());
  CHECK(Rat(5, -10) == Rat(-1, 2));
  CHECK(Rat(-1, 2).den() == 2);
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(7, 2).frac() == Rat(1, 2));
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
}

TEST_CASE("polynomial arithmetic and division") {
  Poly a = poly_from_ints({-1, 0, 1});  // t^2 - 1
  Poly b = poly_from_ints({1, 1});      // t + 1
  auto [q, r] = a.divmod(b);
  CHECK(q == poly_from_ints({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(a, b) == b.monic());
  CHECK(a.reciprocal() == poly_from_ints({1, 0, -1}));
  CHECK(poly_from_ints({1, -1, 1}).is_self_reciprocal());
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic(1) == poly_from_ints({-1, 1}));
  CHECK(cyclotomic(2) == poly_from_ints({1, 1}));
  CHECK(cyclotomic(6) == poly_from_ints({1, -1, 1}));
  CHECK(cyclotomic(12) == poly_from_ints({1, 0, -1, 0, 1}));
  CHECK(cyclotomic(105).degree() == euler_phi(105));
}

TEST_CASE("cyclotomic_factor spec examples") {
  // Phi_6 by definition
  auto f1 = cyclotomic_factor(poly_from_ints({1, -1, 1}));
  CHECK(f1.multiplicity == std::map<long, long>{{6, 1}});
  CHECK(f1.remainder.is_one());

  // (t^2-1)(t^2+t+1), the Briancon characteristic polynomial at infinity
  Poly p = poly_from_ints({-1, 0, 1}) * poly_from_ints({1, 1, 1});
  auto f2 = cyclotomic_factor(p);
  CHECK(f2.multiplicity == std::map<long, long>{{1, 1}, {2, 1}, {3, 1}});
  CHECK(f2.remainder.is_one());

  // t^2-3t+1 has real roots (3 +- sqrt(5))/2 != +-1: no cyclotomic part.
  // Independent check of the derivation: both roots real, off the unit circle.
  Poly g = poly_from_ints({1, -3, 1});
  CHECK(count_real_roots(g, Rat(-100), Rat(100)) == 2);
  CHECK(g.eval(Rat(1)) != Rat(0));
  CHECK(g.eval(Rat(-1)) != Rat(0));
  auto f3 = cyclotomic_factor(g);
  CHECK(f3.multiplicity.empty());
  CHECK(f3.remainder == g);
}

TEST_CASE("cyclotomic_factor multiplicities add on products") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> cond(1, 10), coeff(-3, 3);
  for (int iter = 0; iter < 25; ++iter) {
    Poly p = poly_from_ints({coeff(rng), 1});
    Poly q = poly_from_ints({coeff(rng), coeff(rng), 1});
    p = p * cyclotomic(cond(rng));
    q = q * cyclotomic(cond(rng));
    auto fp = cyclotomic_factor(p);
    auto fq = cyclotomic_factor(q);
    auto fpq = cyclotomic_factor(p * q);
    std::map<long, long> expect = fp.multiplicity;
    for (auto [d, m] : fq.multiplicity) expect[d] += m;
    CHECK(fpq.multiplicity == expect);
    CHECK(fpq.remainder == fp.remainder * fq.remainder);
  }
}

TEST_CASE("sturm root counting") {
  Poly p = poly_from_ints({-2, 0, 1});  // t^2 - 2
  CHECK(count_real_roots(p, Rat(0), Rat(2)) == 1);
  CHECK(count_real_roots(p, Rat(-2), Rat(2)) == 2);
  CHECK(count_real_roots(p, Rat(2), Rat(3)) == 0);
  // non squarefree input: roots still counted once
  CHECK(count_real_roots(p * p, Rat(-2), Rat(2)) == 2);
  // endpoints are excluded
  Poly q = poly_from_ints({-1, 1});
  CHECK(count_real_roots(q, Rat(0), Rat(1)) == 0);
  CHECK(count_real_roots(q, Rat(0), Rat(2)) == 1);
}

TEST_CASE("number field arithmetic in Q(zeta_6)") {
  Field f = NumberField::cyclotomic_field(6);
  Nf z = Nf::generator(f);
  CHECK((z * z - z + Nf(1)).is_zero());
  CHECK(z.conj() == Nf(1) - z);           // conj(zeta_6) = 1 - zeta_6
  CHECK((z * z.conj()) == Nf(1));         // |zeta| = 1
  CHECK((z + z.conj()).to_rational() == Rat(1));
  CHECK(!z.is_real());
  Nf w = (z + z - Nf(1));                 // 2 zeta - 1 = i sqrt(3)
  CHECK((w * w).to_rational() == Rat(-3));
  CHECK((w * w).sign() == -1);
  CHECK((z + z.conj()).sign() == 1);
  CHECK(z.inverse() == z.conj());
  CHECK_THROWS_AS(Nf(Rat(0)).inverse(), std::domain_error);
}

TEST_CASE("sign certification survives large denominators") {
  // zeta_7 + conj - tiny rational: sign decided by interval refinement.
  Field f = NumberField::cyclotomic_field(7);
  Nf z = Nf::generator(f);
  Nf re2 = z + z.conj();  // 2 cos(2 pi / 7) ~ 1.24698
  Rat close(124698, 100000);
  CHECK((re2 - Nf(close)).sign() == -1);  // 1.2469796... > 1.24698 is false
  CHECK((Nf(close) - re2).sign() == 1);
}

TEST_CASE("rank, kernel, inverse over Q") {
  MatQ m(3, 3);
  m << Rat(1), Rat(2), Rat(3), Rat(2), Rat(4), Rat(6), Rat(1), Rat(0), Rat(1);
  CHECK(rank<Rat>(m) == 2);
  MatQ k = kernel_basis<Rat>(m);
  CHECK(k.cols() == 1);
  MatQ prod = m * k;
  for (Eigen::Index i = 0; i < prod.rows(); ++i) CHECK(prod(i, 0).is_zero());

  MatQ inv_in(2, 2);
  inv_in << Rat(2), Rat(1), Rat(1), Rat(1);
  MatQ inv = inverse<Rat>(inv_in);
  CHECK(MatQ(inv_in * inv) == MatQ(MatQ::Identity(2, 2)));
  CHECK_THROWS_AS(inverse<Rat>(m), std::domain_error);
}

TEST_CASE("characteristic polynomial (Berkowitz) against structure") {
  MatQ j(2, 2);
  j << Rat(1), Rat(1), Rat(0), Rat(1);
  CHECK(char_poly(j) == poly_from_ints({1, -2, 1}));

  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 10; ++iter) {
    MatQ m = oracles::random_int_matrix(rng, 5, -3, 3);
    Poly cp = char_poly(m);
    CHECK(cp.degree() == 5);
    CHECK(cp.leading() == Rat(1));
    // trace and determinant read off the coefficients
    Rat tr(0);
    for (int i = 0; i < 5; ++i) tr += m(i, i);
    CHECK(cp.coeff(4) == -tr);
    // Cayley-Hamilton: cp(m) = 0
    MatQ z = poly_at_matrix(cp, m);
    CHECK(z == MatQ(MatQ::Zero(5, 5)));
  }
}

TEST_CASE("hermitian inertia spec examples") {
  MatQ a(2, 2);
  a << Rat(-4), Rat(2), Rat(2), Rat(-4);
  CHECK(hermitian_inertia(a) == Inertia{0, 2, 0});
  // derivation check: numeric eigenvalues are -2 and -6
  CHECK(oracles::numeric_inertia(oracles::to_double(a).cast<std::complex<double>>()) ==
        Inertia{0, 2, 0});

  MatQ h(2, 2);
  h << Rat(0), Rat(1), Rat(1), Rat(0);
  CHECK(hermitian_inertia(h) == Inertia{1, 1, 0});

  MatQ c(1, 1);
  c << Rat(2);
  CHECK(hermitian_inertia(c) == Inertia{1, 0, 0});

  MatQ bad(2, 2);
  bad << Rat(0), Rat(1), Rat(2), Rat(0);
  CHECK_THROWS_AS(hermitian_inertia(bad), std::invalid_argument);
}

TEST_CASE("hermitian inertia is a congruence invariant") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 30; ++iter) {
    int n = 2 + static_cast<int>(rng() % 5);
    MatQ s = oracles::random_int_matrix(rng, n, -3, 3);
    MatQ sym = s + s.transpose();
    MatQ p = oracles::random_unimodular(rng, n);
    Inertia before = hermitian_inertia(sym);
    Inertia after = hermitian_inertia(MatQ(p.transpose() * sym * p));
    CHECK(before == after);
    CHECK(before.n_plus + before.n_minus + before.n_zero == n);
  }
}

TEST_CASE("hermitian inertia over a cyclotomic field matches numerics") {
  Field f = NumberField::cyclotomic_field(5);
  Nf z = Nf::generator(f);
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 10; ++iter) {
    int n = 3;
    MatQ s = oracles::random_int_matrix(rng, n, -2, 2);
    // hermitian form: (1-zeta) S + (1-conj zeta) S^T
    MatNf m(n, n);
    Nf one(1);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m(i, j) = (one - z) * Nf(s(i, j)) + (one - z.conj()) * Nf(s(j, i));
    Inertia exact = hermitian_inertia(m);
    Inertia numeric = oracles::numeric_inertia(oracles::numeric_tl_form(s, 0.2));
    CHECK(exact == numeric);
  }
}

TEST_CASE("rank_profile spec examples") {
  Field q1 = NumberField::cyclotomic_field(1);
  MatQ jordan(2, 2);
  jordan << Rat(1), Rat(1), Rat(0), Rat(1);
  CHECK(rank_profile(jordan, Nf(1), 3) == std::vector<long>{2, 1, 0, 0});

  MatQ id2 = MatQ::Identity(2, 2);
  CHECK(rank_profile(id2, Nf(1), 2) == std::vector<long>{2, 0, 0});

  MatQ trefoil_h(2, 2);
  trefoil_h << Rat(1), Rat(-1), Rat(1), Rat(0);
  Field c6 = NumberField::cyclotomic_field(6);
  CHECK(rank_profile(trefoil_h, Nf::generator(c6), 2) == std::vector<long>{2, 1, 1});
  (void)q1;
}

TEST_CASE("rank_profile block counts add up to the matrix size") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 8; ++iter) {
    MatQ m = oracles::random_int_matrix(rng, 4, -2, 2);
    Poly cp = char_poly(m);
    long total = 0;
    for (const auto& [f, mult] : factor_rational(cp)) {
      if (f.degree() == 1) {
        Nf lambda(-f.coeff(0));
        auto r = rank_profile(m, lambda, mult + 1);
        for (long k = 1; k <= mult + 1; ++k) {
          long blocks = r[k - 1] - 2 * r[k] + (k + 1 < static_cast<long>(r.size()) ? r[k + 1]
                                                                                   : r[k]);
          total += k * blocks;
        }
      } else {
        total += f.degree() * mult;  // covered by conjugate roots
      }
    }
    CHECK(total == 4);
  }
}

TEST_CASE("rational factorization recovers known factors") {
  Poly f1 = poly_from_ints({1, -3, 1});      // irreducible, real quadratic
  Poly f2 = poly_from_ints({1, 1, 0, 0, 1}); // t^4+t+1, irreducible mod 2
  Poly f3 = poly_from_ints({-2, 1});         // t - 2
  Poly p = f1 * f2 * f3 * f3 * cyclotomic(6);
  auto fac = factor_rational(p);
  std::map<Poly, long> got(fac.begin(), fac.end());
  std::map<Poly, long> expect{{f1, 1}, {f2, 1}, {f3, 2}, {cyclotomic(6), 1}};
  CHECK(got == expect);
}

TEST_CASE("rational factorization on random integer products") {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int iter = 0; iter < 20; ++iter) {
    // random product of small polynomials, possibly reducible pieces
    Poly p = Poly::one();
    int parts = 2 + static_cast<int>(rng() % 3);
    for (int k = 0; k < parts; ++k) {
      Poly g = poly_from_ints({c(rng), c(rng), 1 + std::abs(c(rng))});
      if (g.degree() < 1) g = poly_from_ints({c(rng), 1});
      p = p * g;
    }
    if (p.degree() < 1) continue;
    auto fac = factor_rational(p);
    Poly back = Poly::constant(p.leading());
    for (const auto& [f, m] : fac) {
      CHECK(f.leading() == Rat(1));
      for (long i = 0; i < m; ++i) back = back * f;
    }
    CHECK(back == p);
    // every reported factor must be nontrivial and divide p
    for (const auto& [f, m] : fac) {
      CHECK(f.degree() >= 1);
      CHECK(f.divides(p));
    }
  }
}

TEST_CASE("factorization splits non-monic self-reciprocal circle factors") {
  // 5t^2 - 6t + 5: roots (3 +- 4i)/5, on the unit circle, not cyclotomic.
  Poly p = Poly({Rat(5), Rat(-6), Rat(5)});
  auto fac = factor_rational(p);
  REQUIRE(fac.size() == 1);
  CHECK(fac[0].first == p.monic());
  CHECK(fac[0].second == 1);
  // and the circle test: G(u) with p(t) = t G(t + 1/t), root u = 6/5 in (-2,2)
  CHECK(cyclotomic_factor(p).multiplicity.empty());
}
