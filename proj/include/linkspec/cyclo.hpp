#pragma once

#include <memory>
#include <string>

#include "linkspec/polynomial.hpp"
#include "linkspec/rational.hpp"

namespace linkspec {

/// Q[t]/(f) for a monic f, irreducible over Q. When the field is cyclotomic
/// (f = Phi_m) the generator is pinned to the embedding t = e^{2*pi*i/m},
/// which gives complex conjugation and a real-embedding sign.
class NumberField {
 public:
  static std::shared_ptr<const NumberField> cyclotomic_field(long m);
  static std::shared_ptr<const NumberField> quotient(Poly modulus);

  const Poly& modulus() const { return modulus_; }
  long degree() const { return modulus_.degree(); }
  long conductor() const { return conductor_; }  // 0 when not cyclotomic
  bool is_cyclotomic() const { return conductor_ > 0; }

 private:
  NumberField(Poly modulus, long conductor)
      : modulus_(std::move(modulus)), conductor_(conductor) {}
  Poly modulus_;
  long conductor_;
};

using Field = std::shared_ptr<const NumberField>;

/// Element of a number field. A default-constructed or Rat-constructed value
/// carries no field and acts as a rational constant compatible with any
/// field; mixed operations lift it. This keeps Eigen's Matrix<Nf> usable.
class Nf {
 public:
  Nf() = default;
  Nf(int n) : rep_({Rat(n)}) {}  // NOLINT: implicit by design
  Nf(Rat r) : rep_({std::move(r)}) {}
  Nf(Field field, Poly rep);

  /// The class of t, i.e. e^{2*pi*i*k/m} in the cyclotomic case.
  static Nf generator(const Field& field, long power = 1);

  const Field& field() const { return field_; }
  const Poly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  bool is_rational() const { return rep_.degree() <= 0; }
  Rat to_rational() const;

  Nf operator+(const Nf& o) const;
  Nf operator-(const Nf& o) const;
  Nf operator-() const;
  Nf operator*(const Nf& o) const;
  Nf operator/(const Nf& o) const;
  Nf inverse() const;
  Nf& operator+=(const Nf& o) { *this = *this + o; return *this; }
  Nf& operator-=(const Nf& o) { *this = *this - o; return *this; }
  Nf& operator*=(const Nf& o) { *this = *this * o; return *this; }
  Nf& operator/=(const Nf& o) { *this = *this / o; return *this; }
  friend bool operator==(const Nf& a, const Nf& b);
  friend bool operator!=(const Nf& a, const Nf& b) { return !(a == b); }

  /// Complex conjugate under the distinguished embedding (cyclotomic only).
  Nf conj() const;
  bool is_real() const { return conj() == *this; }

  /// Exact sign of a real element: 0 is decided symbolically, otherwise the
  /// distinguished embedding is evaluated with MPFR interval arithmetic at
  /// doubling precision until the enclosure excludes zero.
  int sign() const;

  std::string str() const;

  friend std::ostream& operator<<(std::ostream& os, const Nf& x) { return os << x.str(); }

 private:
  static Field unify(const Field& a, const Field& b);
  Field field_;  // nullptr for rational constants
  Poly rep_;     // degree < deg(modulus) when field_ set
};

using MatNf = Eigen::Matrix<Nf, Eigen::Dynamic, Eigen::Dynamic>;

/// Lifts a rational matrix into a number field.
MatNf lift(const MatQ& m, const Field& field);

}  // namespace linkspec

namespace Eigen {
template <>
struct NumTraits<linkspec::Nf> : GenericNumTraits<linkspec::Nf> {
  typedef linkspec::Nf Real;
  typedef linkspec::Nf NonInteger;
  typedef linkspec::Nf Nested;
  static inline Real epsilon() { return linkspec::Nf(); }
  static inline Real dummy_precision() { return linkspec::Nf(); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,  // conjugation is handled explicitly by the algorithms
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 300,
    MulCost = 500
  };
};
}  // namespace Eigen
