#include "linkspec/polynomial.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace linkspec {

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monomial(Rat a, long k) {
  if (a.is_zero()) return Poly();
  std::vector<Rat> c(static_cast<size_t>(k) + 1, Rat(0));
  c.back() = std::move(a);
  return Poly(std::move(c));
}

const Rat& Poly::leading() const {
  if (c_.empty()) throw std::logic_error("Poly: zero polynomial has no leading coefficient");
  return c_.back();
}

Rat Poly::eval(const Rat& x) const {
  Rat r(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return Poly(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x = -x;
  return Poly(std::move(c));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return Poly(std::move(c));
}

Poly Poly::operator*(const Rat& s) const {
  std::vector<Rat> c(c_);
  for (auto& x : c) x *= s;
  return Poly(std::move(c));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (long i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
  Poly r = *this;
  if (r.degree() < d.degree()) return {Poly(), r};
  std::vector<Rat> q(static_cast<size_t>(r.degree() - d.degree()) + 1, Rat(0));
  const Rat lc = d.leading();
  while (!r.is_zero() && r.degree() >= d.degree()) {
    long k = r.degree() - d.degree();
    Rat f = r.leading() / lc;
    q[k] = f;
    r = r - Poly::monomial(f, k) * d;
  }
  return {Poly(std::move(q)), r};
}

Poly Poly::derivative() const {
  if (degree() <= 0) return Poly();
  std::vector<Rat> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return Poly(std::move(c));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rat(1) / leading());
}

Poly Poly::reciprocal() const {
  std::vector<Rat> c(c_.rbegin(), c_.rend());
  return Poly(std::move(c));
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (long k = degree(); k >= 0; --k) {
    Rat a = coeff(k);
    if (a.is_zero()) continue;
    if (!first) os << (a.sign() > 0 ? " + " : " - ");
    else if (a.sign() < 0) os << "-";
    Rat m = abs(a);
    first = false;
    if (k == 0) { os << m.str(); continue; }
    if (m != Rat(1)) os << m.str() << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.is_zero() ? x : x.monic();
}

std::vector<std::pair<Poly, long>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, long>> out;
  if (p.degree() <= 0) return out;
  Poly f = p.monic();
  Poly g = gcd(f, f.derivative());
  Poly w = f / g;  // product of squarefree parts
  long i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, g);
    Poly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i);
    w = std::move(y);
    g = g / w;
    ++i;
  }
  return out;
}

long euler_phi(long m) {
  if (m <= 0) throw std::invalid_argument("euler_phi: m must be positive");
  long result = m, n = m;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long> divisors(long m) {
  std::vector<long> d;
  for (long i = 1; i * i <= m; ++i) {
    if (m % i == 0) {
      d.push_back(i);
      if (i != m / i) d.push_back(m / i);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

const Poly& cyclotomic(long m) {
  static std::unordered_map<long, Poly> cache;
  static std::mutex mu;
  if (m <= 0) throw std::invalid_argument("cyclotomic: m must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  // Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e, filled in divisor order.
  for (long d : divisors(m)) {
    if (cache.count(d)) continue;
    std::vector<Rat> td(static_cast<size_t>(d) + 1, Rat(0));
    td[0] = Rat(-1);
    td.back() = Rat(1);
    Poly num(std::move(td));
    for (long e : divisors(d)) {
      if (e == d) continue;
      num = num / cache.at(e);
    }
    cache.emplace(d, std::move(num));
  }
  return cache.at(m);
}

CyclotomicFactorization cyclotomic_factor(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("cyclotomic_factor: zero polynomial");
  CyclotomicFactorization out;
  out.unit = p.leading();
  Poly rem = p.monic();
  long n = p.degree();
  // phi(d)^2 >= d/2 for all d >= 1, so phi(d) <= n forces d <= 2n^2 (+1 for n=0).
  long dmax = 2 * n * n + 1;
  for (long d = 1; d <= dmax; ++d) {
    if (euler_phi(d) > n) continue;
    const Poly& phi = cyclotomic(d);
    long mult = 0;
    while (phi.degree() <= rem.degree()) {
      auto [q, r] = rem.divmod(phi);
      if (!r.is_zero()) break;
      rem = q;
      ++mult;
    }
    if (mult > 0) out.multiplicity[d] = mult;
  }
  out.remainder = rem;
  return out;
}

namespace {

// Signed remainder (Sturm) chain of the squarefree part of p.
std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  Poly f = p.monic();
  Poly g = gcd(f, f.derivative());
  if (g.degree() > 0) f = f / g;  // squarefree part; same real roots
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero()) {
    Poly r = -(chain[chain.size() - 2] % chain.back());
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  return chain;
}

long sign_variations(const std::vector<Poly>& chain, const Rat& x) {
  long v = 0;
  int prev = 0;
  for (const Poly& f : chain) {
    int s = f.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

}  // namespace

long count_real_roots(const Poly& p, const Rat& a, const Rat& b) {
  if (p.degree() <= 0) return 0;
  if (!(a < b)) return 0;
  auto chain = sturm_chain(p);
  // Sturm counts roots in (a, b]; subtract a root at b if present.
  long n = sign_variations(chain, a) - sign_variations(chain, b);
  if (chain.front().eval(b).is_zero()) --n;
  return n;
}

}  // namespace linkspec
