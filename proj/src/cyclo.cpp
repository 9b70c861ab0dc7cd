#include "linkspec/cyclo.hpp"

#include <mpfr.h>

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace linkspec {

Field NumberField::cyclotomic_field(long m) {
  static std::unordered_map<long, Field> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (m <= 0) throw std::invalid_argument("cyclotomic_field: m must be positive");
  Field f(new NumberField(cyclotomic(m), m));
  cache.emplace(m, f);
  return f;
}

Field NumberField::quotient(Poly modulus) {
  if (modulus.degree() < 1) throw std::invalid_argument("NumberField: modulus must be nonconstant");
  return Field(new NumberField(modulus.monic(), 0));
}

Nf::Nf(Field field, Poly rep) : field_(std::move(field)), rep_(std::move(rep)) {
  if (!field_) throw std::invalid_argument("Nf: null field");
  rep_ = rep_ % field_->modulus();
  if (rep_.degree() <= 0) field_.reset();  // rational constants are field-free
}

Nf Nf::generator(const Field& field, long power) {
  long d = field->degree();
  long k = power;
  if (field->is_cyclotomic()) {
    long m = field->conductor();
    k = ((k % m) + m) % m;
  } else if (k < 0) {
    throw std::invalid_argument("Nf::generator: negative power in non-cyclotomic field");
  }
  if (k < d) return Nf(field, Poly::monomial(Rat(1), k));
  return Nf(field, Poly::monomial(Rat(1), k));  // reduced by the constructor
}

Rat Nf::to_rational() const {
  if (!is_rational()) throw std::logic_error("Nf: not a rational constant: " + str());
  return rep_.coeff(0);
}

Field Nf::unify(const Field& a, const Field& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b || a->modulus() == b->modulus()) return a;
  throw std::logic_error("Nf: elements of different number fields");
}

Nf Nf::operator+(const Nf& o) const {
  Field f = unify(field_, o.field_);
  Poly r = rep_ + o.rep_;
  return f ? Nf(f, std::move(r)) : Nf(r.coeff(0));
}

Nf Nf::operator-(const Nf& o) const { return *this + (-o); }

Nf Nf::operator-() const {
  Nf r = *this;
  r.rep_ = -r.rep_;
  return r;
}

Nf Nf::operator*(const Nf& o) const {
  Field f = unify(field_, o.field_);
  Poly r = rep_ * o.rep_;
  return f ? Nf(f, std::move(r)) : Nf(r.coeff(0));
}

Nf Nf::inverse() const {
  if (is_zero()) throw std::domain_error("Nf: inverse of zero");
  if (!field_) return Nf(Rat(1) / rep_.coeff(0));
  // Extended Euclid: u*rep + v*modulus = g; g must be a unit since the
  // modulus is irreducible and deg(rep) < deg(modulus).
  Poly r0 = field_->modulus(), r1 = rep_;
  Poly u0 = Poly::zero(), u1 = Poly::one();
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divmod(r1);
    Poly u2 = u0 - q * u1;
    r0 = std::move(r1); r1 = std::move(r2);
    u0 = std::move(u1); u1 = std::move(u2);
  }
  if (r0.degree() != 0)
    throw std::domain_error("Nf: modulus not irreducible (zero divisor hit): " + rep_.str());
  return Nf(field_, u0 * (Rat(1) / r0.coeff(0)));
}

Nf Nf::operator/(const Nf& o) const { return *this * o.inverse(); }

bool operator==(const Nf& a, const Nf& b) {
  if (a.field_ && b.field_) Nf::unify(a.field_, b.field_);
  return a.rep_ == b.rep_;
}

Nf Nf::conj() const {
  if (!field_) return *this;
  if (!field_->is_cyclotomic())
    throw std::logic_error("Nf: conjugation needs a cyclotomic field");
  // conj(zeta) = zeta^{m-1}; substitute and reduce.
  long m = field_->conductor();
  Nf zbar = generator(field_, m - 1);
  Nf acc(Rat(0));
  for (long k = rep_.degree(); k >= 0; --k) acc = acc * zbar + Nf(rep_.coeff(k));
  return acc;
}

namespace {

// Minimal directed-rounding interval on MPFR numbers.
struct Interval {
  mpfr_t lo, hi;
  explicit Interval(mpfr_prec_t prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_zero(lo, 1);
    mpfr_set_zero(hi, 1);
  }
  ~Interval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  Interval(const Interval&) = delete;
  Interval& operator=(const Interval&) = delete;
};

// acc += q * cos(2*pi*j/m), rigorously.
void add_cos_term(Interval& acc, const mpq_class& q, long j, long m, mpfr_prec_t prec) {
  mpfr_t pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, q_lo, q_hi, t1, t2;
  mpfr_inits2(prec, pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, q_lo, q_hi, t1, t2,
              static_cast<mpfr_ptr>(nullptr));
  mpfr_const_pi(pi_lo, MPFR_RNDD);
  mpfr_const_pi(pi_hi, MPFR_RNDU);
  // theta = 2*pi*j/m >= 0 (j normalized into [0, m))
  mpfr_mul_si(th_lo, pi_lo, 2 * j, MPFR_RNDD);
  mpfr_div_si(th_lo, th_lo, m, MPFR_RNDD);
  mpfr_mul_si(th_hi, pi_hi, 2 * j, MPFR_RNDU);
  mpfr_div_si(th_hi, th_hi, m, MPFR_RNDU);
  // cos over [th_lo, th_hi]: Lipschitz-1 padding by the interval width.
  mpfr_sub(w, th_hi, th_lo, MPFR_RNDU);
  mpfr_cos(c_lo, th_lo, MPFR_RNDD);
  mpfr_cos(c_hi, th_lo, MPFR_RNDU);
  mpfr_cos(t1, th_hi, MPFR_RNDD);
  mpfr_cos(t2, th_hi, MPFR_RNDU);
  mpfr_min(c_lo, c_lo, t1, MPFR_RNDD);
  mpfr_max(c_hi, c_hi, t2, MPFR_RNDU);
  mpfr_sub(c_lo, c_lo, w, MPFR_RNDD);
  mpfr_add(c_hi, c_hi, w, MPFR_RNDU);
  // multiply by the rational coefficient
  mpfr_set_q(q_lo, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(q_hi, q.get_mpq_t(), MPFR_RNDU);
  if (mpq_sgn(q.get_mpq_t()) >= 0) {
    mpfr_mul(t1, q_lo, c_lo, MPFR_RNDD);
    mpfr_mul(t2, q_hi, c_hi, MPFR_RNDU);
  } else {
    mpfr_mul(t1, q_lo, c_hi, MPFR_RNDD);
    mpfr_mul(t2, q_hi, c_lo, MPFR_RNDU);
  }
  mpfr_add(acc.lo, acc.lo, t1, MPFR_RNDD);
  mpfr_add(acc.hi, acc.hi, t2, MPFR_RNDU);
  mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, c_lo, c_hi, w, q_lo, q_hi, t1, t2,
              static_cast<mpfr_ptr>(nullptr));
}

}  // namespace

int Nf::sign() const {
  if (rep_.is_zero()) return 0;
  if (!field_) return rep_.coeff(0).sign();
  if (!field_->is_cyclotomic())
    throw std::logic_error("Nf: sign needs a cyclotomic field");
  if (!is_real()) throw std::logic_error("Nf: sign of a non-real element: " + str());
  long m = field_->conductor();
  // Re(sum c_j zeta^j) = sum c_j cos(2*pi*j/m); equals the value since the
  // element is real. Nonzero was decided symbolically, so this terminates.
  for (mpfr_prec_t prec = 128;; prec *= 2) {
    Interval acc(prec);
    for (long j = 0; j <= rep_.degree(); ++j) {
      const Rat& c = rep_.coeff(j);
      if (c.is_zero()) continue;
      add_cos_term(acc, c.raw(), j, m, prec);
    }
    if (mpfr_sgn(acc.lo) > 0) return 1;
    if (mpfr_sgn(acc.hi) < 0) return -1;
    if (prec > (mpfr_prec_t(1) << 22))
      throw std::logic_error("Nf: sign did not certify (is the element really nonzero?)");
  }
}

std::string Nf::str() const {
  if (!field_) return rep_.str();
  std::ostringstream os;
  os << rep_.str("z");
  if (field_->is_cyclotomic()) os << " (z = zeta_" << field_->conductor() << ")";
  else os << " mod " << field_->modulus().str();
  return os.str();
}

MatNf lift(const MatQ& m, const Field& field) {
  MatNf out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(i, j) = field ? Nf(field, Poly::constant(m(i, j))) : Nf(m(i, j));
  return out;
}

}  // namespace linkspec
