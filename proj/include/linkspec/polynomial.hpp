#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "linkspec/rational.hpp"

namespace linkspec {

/// Dense univariate polynomial over the rationals, coefficient order
/// c[0] + c[1] t + ... Trailing zeros are stripped; the zero polynomial
/// has empty coefficient vector and degree -1.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }
  static Poly constant(Rat a) { return Poly({std::move(a)}); }
  static Poly zero() { return Poly(); }
  static Poly one() { return Poly({Rat(1)}); }
  static Poly t() { return Poly({Rat(0), Rat(1)}); }
  /// t^k with coefficient a.
  static Poly monomial(Rat a, long k);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == Rat(1); }
  const Rat& leading() const;
  Rat coeff(long k) const { return (k < 0 || k >= static_cast<long>(c_.size())) ? Rat(0) : c_[k]; }
  const std::vector<Rat>& coeffs() const { return c_; }

  Rat eval(const Rat& x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rat& s) const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Lexicographic by degree then coefficients; a total order for map keys.
  friend bool operator<(const Poly& a, const Poly& b);

  /// Euclidean division; remainder has degree < deg(divisor).
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& other) const { return other.divmod(*this).second.is_zero(); }

  Poly derivative() const;
  Poly monic() const;
  /// t^deg * p(1/t), the reciprocal polynomial.
  Poly reciprocal() const;
  bool is_self_reciprocal() const { return !is_zero() && reciprocal() == *this; }

  std::string str(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

Poly gcd(const Poly& a, const Poly& b);  // monic gcd

/// Yun squarefree decomposition: p = lc * prod f_i^i with f_i monic squarefree
/// pairwise coprime; returned as (f_i, i) pairs, multiplicity ascending.
std::vector<std::pair<Poly, long>> squarefree_decomposition(const Poly& p);

// Number-theoretic helpers used by the cyclotomic machinery.
long euler_phi(long m);
std::vector<long> divisors(long m);

/// The m-th cyclotomic polynomial, monic over Z.
const Poly& cyclotomic(long m);

/// Splits p into cyclotomic content and a cyclotomic-free remainder:
/// p = lc * remainder * prod Phi_d^{mult[d]}, remainder monic.
/// Candidate conductors are enumerated from phi(d) <= deg p.
struct CyclotomicFactorization {
  std::map<long, long> multiplicity;  // d -> multiplicity of Phi_d
  Poly remainder;                     // monic, no cyclotomic factor
  Rat unit;                           // leading coefficient of the input
};
CyclotomicFactorization cyclotomic_factor(const Poly& p);

/// Number of distinct real roots of p in the open interval (a, b),
/// computed exactly via Sturm chains. p need not be squarefree.
long count_real_roots(const Poly& p, const Rat& a, const Rat& b);

}  // namespace linkspec
