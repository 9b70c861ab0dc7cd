#include "linkspec/seifert.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace linkspec {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

std::string mat_shape(const MatQ& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

}  // namespace

RootOfUnity::RootOfUnity(long a_, long m_) {
  if (m_ <= 0) throw std::invalid_argument("RootOfUnity: m must be positive");
  a = ((a_ % m_) + m_) % m_;
  long g = std::gcd(a, m_);
  if (a == 0) { m = 1; return; }
  a /= g;
  m = m_ / g;
}

RootOfUnity RootOfUnity::from_angle(const Rat& x) {
  Rat f = x.frac();
  if (!f.num().fits_slong_p() || !f.den().fits_slong_p())
    throw std::invalid_argument("RootOfUnity: angle denominator too large");
  return RootOfUnity(f.num().get_si(), f.den().get_si());
}

// ---------------------------------------------------------------------------
// Keef reduction
// ---------------------------------------------------------------------------

namespace {

// Strips one split-off common-kernel vector (the first kernel basis column).
MatQ split_common_kernel(const MatQ& s, const VecQ& v) {
  const Eigen::Index n = s.rows();
  Eigen::Index j = -1;
  for (Eigen::Index i = 0; i < n; ++i)
    if (!v(i).is_zero()) { j = i; break; }
  MatQ p(n, n);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == j) continue;
    for (Eigen::Index r = 0; r < n; ++r) p(r, col) = Rat(r == i ? 1 : 0);
    ++col;
  }
  p.col(n - 1) = v;
  MatQ t = p.transpose() * s * p;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!t(i, n - 1).is_zero() || !t(n - 1, i).is_zero())
      throw std::logic_error("keef_reduce: common-kernel split failed");
  }
  return t.topLeftCorner(n - 1, n - 1);
}

// Undoes one column expansion, given a in ker S, b in ker S^T, a^T S b != 0.
MatQ undo_expansion(const MatQ& s, VecQ a, const VecQ& b) {
  const Eigen::Index n = s.rows();
  Rat c(0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c += a(i) * s(i, j) * b(j);
  for (Eigen::Index i = 0; i < n; ++i) a(i) /= c;  // now a^T S b = 1

  VecQ sa = s.transpose() * a;  // phi(x) = a^T S x = <S^T a, x>
  MatQ p(n, n);
  MatQ span(n, 2);
  span.col(0) = a;
  span.col(1) = b;
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < n && col < n - 2; ++i) {
    MatQ trial(n, 3 + col);
    trial.leftCols(2) = span;
    for (Eigen::Index k = 0; k < col; ++k) trial.col(2 + k) = p.col(k);
    for (Eigen::Index r = 0; r < n; ++r) trial(r, 2 + col) = Rat(r == i ? 1 : 0);
    if (rank<Rat>(trial) < 3 + col) continue;
    VecQ u = VecQ::Zero(n);
    u(i) = Rat(1);
    u -= b * sa(i);  // subtract phi(e_i) * b
    p.col(col++) = u;
  }
  if (col != n - 2) throw std::logic_error("keef_reduce: complement construction failed");
  p.col(n - 2) = b;
  p.col(n - 1) = a;
  MatQ t = p.transpose() * s * p;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool ok = t(n - 2, i).is_zero() && t(i, n - 1).is_zero();
    if (i < n - 2) ok = ok && t(n - 1, i).is_zero();
    if (!ok) throw std::logic_error("keef_reduce: expansion pattern check failed");
  }
  if (t(n - 1, n - 2) != Rat(1)) throw std::logic_error("keef_reduce: corner not normalized");
  return t.topLeftCorner(n - 2, n - 2);
}

}  // namespace

KeefDecomposition keef_reduce(const MatQ& s_in) {
  if (s_in.rows() != s_in.cols()) throw std::invalid_argument("keef_reduce: matrix not square");
  KeefDecomposition out;
  MatQ s = s_in;
  while (s.rows() > 0) {
    const Eigen::Index n = s.rows();
    // (i) split off common-kernel vectors
    MatQ stacked(2 * n, n);
    stacked.topRows(n) = s;
    stacked.bottomRows(n) = s.transpose();
    MatQ common = kernel_basis<Rat>(stacked);
    if (common.cols() > 0) {
      s = split_common_kernel(s, common.col(0));
      out.irr++;
      out.transform_witness.push_back("split_common_kernel");
      continue;
    }
    if (rank<Rat>(s) == n) break;
    // (ii) inverse column/row expansion via a kernel pairing
    MatQ ka = kernel_basis<Rat>(s);
    MatQ kb = kernel_basis<Rat>(MatQ(s.transpose()));
    MatQ pairing = ka.transpose() * s * kb;
    Eigen::Index ai = -1, bj = -1;
    for (Eigen::Index i = 0; i < pairing.rows() && ai < 0; ++i)
      for (Eigen::Index j = 0; j < pairing.cols(); ++j)
        if (!pairing(i, j).is_zero()) { ai = i; bj = j; break; }
    if (ai < 0)
      throw std::domain_error(
          "keef_reduce: degenerate matrix with trivial common kernel admits no "
          "S-reduction (not a Seifert matrix of a link)");
    s = undo_expansion(s, ka.col(ai), kb.col(bj));
    out.reduction_moves++;
    out.transform_witness.push_back("inverse_column_expansion");
  }
  out.s_ndeg = s;
  return out;
}

// ---------------------------------------------------------------------------
// HVS and characteristic polynomial data
// ---------------------------------------------------------------------------

HVS hvs_of(const MatQ& s_ndeg) {
  if (s_ndeg.rows() != s_ndeg.cols()) throw std::invalid_argument("hvs_of: matrix not square");
  const Eigen::Index n = s_ndeg.rows();
  HVS out;
  out.n = n;
  if (n == 0) {
    out.b = out.h = out.v = MatQ(0, 0);
    return out;
  }
  MatQ st = s_ndeg.transpose();
  out.v = inverse<Rat>(st);  // throws on degenerate input
  out.h = out.v * s_ndeg;
  out.b = s_ndeg - st;
  // completion identities
  if (MatQ(out.v * out.b) != MatQ(out.h - MatQ::Identity(n, n)))
    throw std::logic_error("hvs_of: V b != h - Id");
  if (MatQ(out.v.transpose()) != MatQ(out.v * out.h.transpose()))
    throw std::logic_error("hvs_of: V^T != V h^T");
  if (MatQ(out.h.transpose() * out.b * out.h) != out.b)
    throw std::logic_error("hvs_of: h does not preserve b");
  return out;
}

namespace {

// Roots of a polynomial as complex doubles, via the companion matrix.
std::vector<std::complex<double>> numeric_roots(const Poly& f) {
  const long n = f.degree();
  if (n <= 0) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  Rat lc = f.leading();
  for (long i = 0; i < n; ++i) {
    comp(i, n - 1) = -(f.coeff(i) / lc).to_double();
    if (i + 1 < n) comp(i + 1, i) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp);
  std::vector<std::complex<double>> roots(n);
  for (long i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  std::sort(roots.begin(), roots.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return roots;
}

// For self-reciprocal f of even degree 2m, the trace polynomial G with
// f(t) = t^m G(t + 1/t); circle roots of f <-> roots of G in (-2, 2).
Poly trace_polynomial(const Poly& f) {
  long two_m = f.degree();
  if (two_m % 2 != 0) throw std::logic_error("trace_polynomial: odd degree");
  long m = two_m / 2;
  Poly c_prev = Poly::constant(Rat(2));  // C_0 = 2
  Poly c_cur = Poly::t();                // C_1 = u
  Poly g = Poly::constant(f.coeff(m));
  for (long j = 1; j <= m; ++j) {
    g = g + c_cur * f.coeff(m + j);
    Poly c_next = Poly::t() * c_cur - c_prev;
    c_prev = c_cur;
    c_cur = c_next;
  }
  return g;
}

FactorSide classify_factor(const Poly& f) {
  if (f.is_self_reciprocal()) {
    if (count_real_roots(trace_polynomial(f), Rat(-2), Rat(2)) > 0) return FactorSide::on_circle;
    return FactorSide::split;
  }
  // not self-reciprocal: provably no roots on the unit circle
  bool any_in = false, any_out = false;
  for (const auto& z : numeric_roots(f)) {
    double r = std::abs(z);
    if (std::abs(r - 1.0) < 1e-9)
      throw std::logic_error("classify_factor: root too close to the unit circle");
    (r < 1.0 ? any_in : any_out) = true;
  }
  if (any_in && any_out) return FactorSide::mixed;
  return any_in ? FactorSide::inside : FactorSide::outside;
}

}  // namespace

bool CharPolyData::has_on_circle_factor() const {
  for (const auto& of : off_circle)
    if (of.side == FactorSide::on_circle) return true;
  return false;
}

long CharPolyData::mult_root_one() const {
  auto it = cyclo_mult.find(1);
  return it == cyclo_mult.end() ? 0 : it->second;
}

long CharPolyData::mult_at(const RootOfUnity& z) const {
  auto it = cyclo_mult.find(z.m);
  return it == cyclo_mult.end() ? 0 : it->second;
}

std::vector<Rat> CharPolyData::jump_angles() const {
  std::vector<Rat> out;
  for (const auto& [d, mult] : cyclo_mult) {
    if (d < 2) continue;
    for (long a = 1; a < d; ++a)
      if (std::gcd(a, d) == 1) out.push_back(Rat(a, d));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CharPolyData char_poly_data(const HVS& hvs, long irr) {
  CharPolyData out;
  out.irr = irr;
  Poly cp = char_poly(hvs.h);  // det(t Id - h), monic
  out.delta_h = (hvs.n % 2 == 0) ? cp : -cp;
  if (hvs.n == 0) return out;
  auto cf = cyclotomic_factor(out.delta_h);
  out.cyclo_mult = cf.multiplicity;
  if (cf.remainder.degree() > 0) {
    for (const auto& [f, mult] : factor_rational(cf.remainder)) {
      OffCircleFactor of;
      of.f = f;
      of.multiplicity = mult;
      of.side = classify_factor(f);
      out.off_circle.push_back(std::move(of));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tristram-Levine signatures
// ---------------------------------------------------------------------------

namespace {

// Interior angle: x in (0,1), zeta = e^{2 pi i x} a primitive root of unity.
TLPoint tl_interior(const MatQ& s, const Rat& x, long irr) {
  if (!x.den().fits_slong_p()) throw std::invalid_argument("tristram_levine: angle too fine");
  long den = x.den().get_si();
  long num = x.num().get_si();
  const Eigen::Index n = s.rows();
  TLPoint out;
  if (n == 0) return out;
  Field field = NumberField::cyclotomic_field(den);
  Nf zeta = Nf::generator(field, num);
  Nf one(1), w = one - zeta, wbar = one - zeta.conj();
  MatNf m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = w * Nf(s(i, j)) + wbar * Nf(s(j, i));
  Inertia in = hermitian_inertia(m);
  out.sigma = in.n_plus - in.n_minus;
  out.nullity = in.n_zero;
  out.ntilde = out.nullity - irr;
  return out;
}

TLPoint tl_at_one(long mult_root_one, long irr) {
  TLPoint out;
  out.sigma = 0;
  out.ntilde = mult_root_one;
  out.nullity = out.ntilde + irr;
  return out;
}

}  // namespace

TLPoint tristram_levine(const MatQ& s, const Rat& x, long irr) {
  if (x < Rat(0) || x > Rat(1)) throw std::invalid_argument("tristram_levine: x outside [0,1]");
  if (x == Rat(0) || x == Rat(1)) {
    auto kd = keef_reduce(s);
    auto cpd = char_poly_data(hvs_of(kd.s_ndeg), kd.irr);
    return tl_at_one(cpd.mult_root_one(), kd.irr);
  }
  return tl_interior(s, x, irr);
}

TLPoint tristram_levine(const MatQ& s, const Rat& x) {
  if (x < Rat(0) || x > Rat(1)) throw std::invalid_argument("tristram_levine: x outside [0,1]");
  auto kd = keef_reduce(s);
  if (x == Rat(0) || x == Rat(1)) {
    auto cpd = char_poly_data(hvs_of(kd.s_ndeg), kd.irr);
    return tl_at_one(cpd.mult_root_one(), kd.irr);
  }
  return tl_interior(s, x, kd.irr);
}

// ---------------------------------------------------------------------------
// Signature profile and spectrum
// ---------------------------------------------------------------------------

namespace {

SignatureProfile profile_impl(const MatQ& s, const KeefDecomposition& kd,
                              const CharPolyData& cpd) {
  if (cpd.has_on_circle_factor())
    throw std::domain_error(
        "unsupported on-circle factor: the characteristic polynomial has "
        "non-cyclotomic roots on the unit circle");
  SignatureProfile out;
  out.irr = kd.irr;
  out.jump_angles = cpd.jump_angles();
  std::vector<Rat> bounds{Rat(0)};
  bounds.insert(bounds.end(), out.jump_angles.begin(), out.jump_angles.end());
  bounds.push_back(Rat(1));
  for (size_t g = 0; g + 1 < bounds.size(); ++g) {
    const Rat &lo = bounds[g], &hi = bounds[g + 1];
    Rat len = hi - lo;
    TLPoint mid = tl_interior(s, lo + len / Rat(2), kd.irr);
    TLPoint q1 = tl_interior(s, lo + len / Rat(4), kd.irr);
    TLPoint q3 = tl_interior(s, lo + len * Rat(3, 4), kd.irr);
    if (mid.sigma != q1.sigma || mid.sigma != q3.sigma || mid.ntilde != 0 || q1.ntilde != 0 ||
        q3.ntilde != 0)
      throw std::logic_error("signature_profile: plateau constancy check failed");
    out.plateau_sigma.push_back(mid.sigma);
  }
  for (const Rat& x0 : out.jump_angles) out.at_jumps.push_back(tl_interior(s, x0, kd.irr));
  return out;
}

void add_sp(SpectrumData& sp, const Rat& x, long count) {
  if (count < 0) throw std::logic_error("spectrum: negative multiplicity computed");
  if (count > 0) sp.sp[x] += count;
}

SpectrumData spectrum_impl(const SignatureProfile& profile, const CharPolyData& cpd) {
  SpectrumData out;
  out.deg_delta = cpd.delta_h.degree();
  // unit-circle roots at interior angles
  for (size_t i = 0; i < profile.jump_angles.size(); ++i) {
    const Rat& x0 = profile.jump_angles[i];
    long m = cpd.mult_at(RootOfUnity::from_angle(x0));
    long j = profile.sigma_after(i) - profile.sigma_before(i);
    long num0 = 2 * m + j;  // 4 * s(x0)
    long num1 = 2 * m - j;
    if (num0 % 4 != 0 || num1 % 4 != 0 || num0 < 0 || num1 < 0)
      throw std::logic_error("spectrum: jump bookkeeping is inconsistent");
    add_sp(out, x0, num0 / 4);
    add_sp(out, x0 + Rat(1), num1 / 4);
  }
  // the root 1
  long m1 = cpd.mult_root_one();
  if (m1 > 0) {
    long s1m = profile.sigma_at_one_minus();
    if ((m1 - s1m) % 2 != 0 || m1 - s1m < 0 || m1 + s1m < 0)
      throw std::logic_error("spectrum: bookkeeping at the root 1 is inconsistent");
    add_sp(out, Rat(1), (m1 - s1m) / 2);
    add_sp(out, Rat(2), (m1 + s1m) / 2);
  }
  // off-circle part: eigenvalues inside the disc plus mirrors
  for (const auto& of : cpd.off_circle) {
    if (of.side == FactorSide::on_circle)
      throw std::domain_error("unsupported on-circle factor in spectrum extraction");
    for (const auto& z : numeric_roots(of.f)) {
      double r = std::abs(z);
      if (r >= 1.0) continue;
      double alpha = std::atan2(z.imag(), z.real()) / kTau;
      if (alpha <= 0.0) alpha += 1.0;
      double beta = -std::log(r) / kTau;
      out.isp.push_back({alpha, beta, of.multiplicity, of.f});
      out.isp.push_back({alpha + 1.0, -beta, of.multiplicity, of.f});
    }
  }
  std::sort(out.isp.begin(), out.isp.end(), [](const IspEntry& a, const IspEntry& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  // exactness checks: |ESp| = deg Delta^h and symmetry of Sp \ Z about 1
  if (out.sp_size() + out.isp_size() != out.deg_delta)
    throw std::logic_error("spectrum: |ESp| != deg Delta^h");
  for (const auto& [x, c] : out.sp) {
    if (x.is_integer()) continue;
    if (out.count(Rat(2) - x) != c) throw std::logic_error("spectrum: symmetry about 1 broken");
  }
  return out;
}

}  // namespace

SignatureProfile signature_profile(const MatQ& s) {
  auto kd = keef_reduce(s);
  auto cpd = char_poly_data(hvs_of(kd.s_ndeg), kd.irr);
  return profile_impl(s, kd, cpd);
}

long SpectrumData::sp_size() const {
  long n = 0;
  for (const auto& [x, c] : sp) n += c;
  return n;
}

long SpectrumData::isp_size() const {
  long n = 0;
  for (const auto& e : isp) n += e.count;
  return n;
}

long SpectrumData::count(const Rat& x) const {
  auto it = sp.find(x);
  return it == sp.end() ? 0 : it->second;
}

bool SpectrumData::operator==(const SpectrumData& o) const {
  if (sp != o.sp || deg_delta != o.deg_delta || isp.size() != o.isp.size()) return false;
  for (size_t i = 0; i < isp.size(); ++i) {
    if (isp[i].re != o.isp[i].re || isp[i].im != o.isp[i].im || isp[i].count != o.isp[i].count)
      return false;
  }
  return true;
}

SpectrumData spectrum(const MatQ& s) {
  auto kd = keef_reduce(s);
  auto cpd = char_poly_data(hvs_of(kd.s_ndeg), kd.irr);
  auto profile = profile_impl(s, kd, cpd);
  return spectrum_impl(profile, cpd);
}

IntervalCounts interval_counts(const SpectrumData& sp, const Rat& x) {
  IntervalCounts out;
  Rat x1 = x + Rat(1);
  for (const auto& [v, c] : sp.sp) {
    if (v == x || v == x1) out.boundary += c;
    else if (x < v && v < x1) out.inside += c;
    else out.outside += c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// H-numbers
// ---------------------------------------------------------------------------

long HNumbers::p_count(const RootOfUnity& z, long k, int u) const {
  auto it = p.find(z);
  if (it == p.end()) return 0;
  auto kt = it->second.find(k);
  if (kt == it->second.end()) return 0;
  return kt->second[u > 0 ? 0 : 1];
}

namespace {

struct BlockCounts {
  std::map<long, long> n;  // size -> number of blocks
  long max_size = 0;
};

BlockCounts blocks_from_ranks(const std::vector<long>& ranks) {
  BlockCounts out;
  for (long k = 1; k + 1 < static_cast<long>(ranks.size()); ++k) {
    long nk = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1];
    if (nk < 0) throw std::logic_error("h_numbers: rank profile not convex");
    if (nk > 0) {
      out.n[k] = nk;
      out.max_size = k;
    }
  }
  return out;
}

// S restricted to ker(b) = ker(h - Id); signs of the size-1 blocks at 1.
Inertia lambda_one_restriction_inertia(const HVS& hvs) {
  MatQ kb = kernel_basis<Rat>(hvs.b);
  MatQ s_ndeg = inverse<Rat>(hvs.v).transpose();
  MatQ r = kb.transpose() * s_ndeg * kb;
  return hermitian_inertia(r);
}

}  // namespace

HNumbers h_numbers(const HVS& hvs, const SignatureProfile& profile, const CharPolyData& cpd,
                   const SpectrumData& sp) {
  HNumbers hn;
  hn.deg_delta = cpd.delta_h.degree();

  // --- unit-circle eigenvalues ---
  for (const auto& [d, mult] : cpd.cyclo_mult) {
    // one rank profile per conductor; conjugate roots share Jordan data
    std::vector<long> ranks;
    {
      Field field = NumberField::cyclotomic_field(d);
      Nf lambda = d == 1 ? Nf(1) : Nf::generator(field);
      ranks = rank_profile(hvs.h, lambda, mult + 1);
    }
    BlockCounts bc = blocks_from_ranks(ranks);
    long n1 = bc.n.count(1) ? bc.n.at(1) : 0;
    long n2 = bc.n.count(2) ? bc.n.at(2) : 0;
    for (long a = 0; a < std::max(1L, d); ++a) {
      if (d > 1 && (a == 0 || std::gcd(a, d) != 1)) continue;
      RootOfUnity z(a, d);
      if (bc.max_size > 2) {
        for (const auto& [k, nk] : bc.n)
          hn.unresolved.push_back({true, z, Poly(), k, nk});
        continue;
      }
      if (z.is_one()) {
        long s1 = sp.count(Rat(1)), s2 = sp.count(Rat(2));
        long p1p = s1 - n2, p1m = s2 - n2;
        if (p1p < 0 || p1m < 0 || p1p + p1m != n1)
          throw std::logic_error("h_numbers: inconsistent counts at lambda = 1");
        if (p1p + p1m > 0) hn.p[z][1] = {p1p, p1m};
        if (n2 == 0 && n1 > 0) {
          Inertia in = lambda_one_restriction_inertia(hvs);
          if (in.n_zero != 0 || in.n_minus != p1p || in.n_plus != p1m)
            throw std::logic_error(
                "h_numbers: restriction inertia disagrees with the spectrum route at 1");
        }
        if (n2 > 0) hn.unresolved.push_back({true, z, Poly(), 2, n2});
      } else {
        Rat x0 = z.angle();
        long a_count = sp.count(x0), b_count = sp.count(x0 + Rat(1));
        auto pos = std::lower_bound(profile.jump_angles.begin(), profile.jump_angles.end(), x0);
        if (pos == profile.jump_angles.end() || *pos != x0)
          throw std::logic_error("h_numbers: jump angle missing from the profile");
        size_t idx = static_cast<size_t>(pos - profile.jump_angles.begin());
        long two_e = 2 * profile.at_jumps[idx].sigma -
                     (profile.sigma_before(idx) + profile.sigma_after(idx));
        if (two_e % 2 != 0) throw std::logic_error("h_numbers: E(lambda) is not an integer");
        long e = two_e / 2;
        long p1m = a_count - n2, p1p = b_count - n2;
        long p2p2 = n2 + e, p2m2 = n2 - e;
        if (p1m < 0 || p1p < 0 || p2p2 < 0 || p2m2 < 0 || p2p2 % 2 != 0 || p2m2 % 2 != 0 ||
            p1m + p1p != n1)
          throw std::logic_error("h_numbers: sign extraction inconsistent at a circle root");
        if (p1p + p1m > 0) hn.p[z][1] = {p1p, p1m};
        if (n2 > 0) hn.p[z][2] = {p2p2 / 2, p2m2 / 2};
      }
    }
  }

  // --- off-circle factors: V^{2k} summand counts per self-reciprocal key ---
  std::map<Poly, std::pair<Poly, long>> keys;  // key -> (squarefree key poly, mult)
  for (const auto& of : cpd.off_circle) {
    if (of.side == FactorSide::on_circle) {
      hn.unresolved.push_back({false, RootOfUnity(), of.f, 0, of.multiplicity * of.f.degree()});
      continue;
    }
    if (of.f.is_self_reciprocal()) {
      keys.emplace(of.f, std::make_pair(of.f, of.multiplicity));
    } else {
      Poly partner = of.f.reciprocal().monic();
      Poly key = std::min(of.f, partner);
      keys.emplace(key, std::make_pair(key * key.reciprocal().monic(), of.multiplicity));
    }
  }
  for (const auto& [key, info] : keys) {
    const auto& [kf, mult] = info;
    MatQ p = poly_at_matrix(kf, hvs.h);
    std::vector<long> ranks{static_cast<long>(hvs.n)};
    MatQ pk = MatQ::Identity(hvs.n, hvs.n);
    for (long k = 1; k <= mult + 1; ++k) {
      pk = (pk * p).eval();
      ranks.push_back(rank<Rat>(pk));
    }
    BlockCounts bc = blocks_from_ranks(ranks);
    for (const auto& [k, nk] : bc.n) {
      if (nk % 2 != 0) throw std::logic_error("h_numbers: odd off-circle block count");
      hn.q[kf][k] = nk / 2;
    }
  }

  // dimension audit: every summand accounted for
  long total = 0;
  for (const auto& [z, kmap] : hn.p)
    for (const auto& [k, arr] : kmap) total += k * (arr[0] + arr[1]);
  for (const auto& [key, kmap] : hn.q)
    for (const auto& [k, c] : kmap) total += 2 * k * c;
  for (const auto& u : hn.unresolved) total += u.circle ? u.k * u.count : u.count;
  if (total != hn.deg_delta) throw std::logic_error("h_numbers: dimension audit failed");
  return hn;
}

HNumbers h_numbers(const MatQ& s) {
  auto kd = keef_reduce(s);
  HVS hvs = hvs_of(kd.s_ndeg);
  auto cpd = char_poly_data(hvs, kd.irr);
  auto profile = profile_impl(s, kd, cpd);
  auto sp = spectrum_impl(profile, cpd);
  return h_numbers(hvs, profile, cpd, sp);
}

SpectrumData spectrum_from_h(const HNumbers& hn) {
  if (!hn.resolved()) throw std::domain_error("spectrum_from_h: unresolved H-numbers present");
  SpectrumData out;
  out.deg_delta = hn.deg_delta;
  for (const auto& [z, kmap] : hn.p) {
    std::vector<Rat> alphas =
        z.is_one() ? std::vector<Rat>{Rat(1), Rat(2)}
                   : std::vector<Rat>{z.angle(), z.angle() + Rat(1)};
    for (const Rat& alpha : alphas) {
      long fl = alpha.floor().get_si();
      long sgn = (fl % 2 == 0) ? 1 : -1;  // (-1)^floor(alpha)
      long s = 0;
      for (const auto& [k, arr] : kmap) {
        if (k % 2 == 1) {
          // u = +1 and u = -1 terms of (k - u (-1)^floor)/2 p^k(u)
          s += ((k - sgn) / 2) * arr[0] + ((k + sgn) / 2) * arr[1];
        } else {
          s += (k / 2) * (arr[0] + arr[1]);
        }
      }
      if (s > 0) out.sp[alpha] += s;
    }
  }
  for (const auto& [key, kmap] : hn.q) {
    long pairs = key.degree() / 2;
    long weighted = 0;
    for (const auto& [k, c] : kmap) weighted += k * c;
    if (weighted % pairs != 0)
      throw std::logic_error("spectrum_from_h: uneven distribution over conjugate roots");
    long per_root = weighted / pairs;
    for (const auto& zc : numeric_roots(key)) {
      double r = std::abs(zc);
      if (r >= 1.0) continue;
      double alpha = std::atan2(zc.imag(), zc.real()) / kTau;
      if (alpha <= 0.0) alpha += 1.0;
      double beta = -std::log(r) / kTau;
      out.isp.push_back({alpha, beta, per_root, key});
      out.isp.push_back({alpha + 1.0, -beta, per_root, key});
    }
  }
  std::sort(out.isp.begin(), out.isp.end(), [](const IspEntry& a, const IspEntry& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  });
  return out;
}

long delta_invariant(const SpectrumData& sp) {
  long n = 0;
  for (const auto& [x, c] : sp.sp)
    if (Rat(0) < x && x <= Rat(1)) n += c;
  return n;
}

// ---------------------------------------------------------------------------
// Validators
// ---------------------------------------------------------------------------

void ValidationReport::add(std::string id, std::string description, bool ok, std::string detail) {
  pass = pass && ok;
  clauses.push_back({std::move(id), std::move(description), ok, std::move(detail)});
}

namespace {

ValidationReport validate_common(const HNumbers& hn, bool at_infinity) {
  if (!hn.resolved())
    throw std::domain_error("validate: unresolved H-numbers (signs or on-circle factors)");
  ValidationReport rep;
  std::ostringstream det_a, det_b, det_c, det_d;
  bool a_ok = hn.q.empty();
  for (const auto& [key, kmap] : hn.q) det_a << " q-blocks on " << key.str() << ";";
  rep.add("a", "no V^{2k} summands and all eigenvalues are roots of unity", a_ok, det_a.str());

  bool b_ok = true;
  RootOfUnity one(0, 1);
  for (const auto& [z, kmap] : hn.p) {
    for (const auto& [k, arr] : kmap) {
      if (k > 2 && arr[0] + arr[1] > 0) {
        b_ok = false;
        det_b << " p^" << k << " at angle " << z.angle().str() << ";";
      }
    }
  }
  if (hn.p_count(one, 2, +1) + hn.p_count(one, 2, -1) > 0) {
    b_ok = false;
    det_b << " p^2_1(+-1) nonzero;";
  }
  rep.add("b", "no Jordan blocks of size > 2, and none of size 2 at lambda = 1", b_ok,
          det_b.str());

  if (!at_infinity) {
    bool c_ok = true;
    for (const auto& [z, kmap] : hn.p) {
      if (hn.p_count(z, 2, -1) > 0) {
        c_ok = false;
        det_c << " p^2(-1) at angle " << z.angle().str() << ";";
      }
    }
    if (hn.p_count(one, 1, -1) > 0) {
      c_ok = false;
      det_c << " p^1_1(-1) nonzero;";
    }
    rep.add("c", "p^2_lambda(-1) = 0 and p^1_1(-1) = 0", c_ok, det_c.str());
  } else {
    bool c_ok = hn.p_count(one, 1, -1) == 0;
    rep.add("c", "p^1_1(-1) = 0", c_ok, c_ok ? "" : " p^1_1(-1) nonzero;");
    bool d_ok = true;
    for (const auto& [z, kmap] : hn.p) {
      if (!z.is_one() && hn.p_count(z, 2, +1) > 0) {
        d_ok = false;
        det_d << " p^2(+1) at angle " << z.angle().str() << ";";
      }
    }
    rep.add("d", "p^2_lambda(+1) = 0 for lambda != 1", d_ok, det_d.str());
  }
  return rep;
}

}  // namespace

ValidationReport validate_local(const HNumbers& hn) { return validate_common(hn, false); }
ValidationReport validate_infinity(const HNumbers& hn) { return validate_common(hn, true); }

// ---------------------------------------------------------------------------
// Torus links and stabilization
// ---------------------------------------------------------------------------

namespace {

MatQ band_matrix(long n) {
  MatQ a = MatQ::Zero(n - 1, n - 1);
  for (long i = 0; i < n - 1; ++i) {
    a(i, i) = Rat(-1);
    if (i + 1 < n - 1) a(i, i + 1) = Rat(1);
  }
  return a;
}

}  // namespace

SeifertMatrix torus_seifert(long p, long q) {
  if (p < 2 || q < 2) throw std::invalid_argument("torus_seifert: p, q >= 2 required");
  MatQ a = band_matrix(p), b = band_matrix(q);
  MatQ s((p - 1) * (q - 1), (p - 1) * (q - 1));
  for (long i = 0; i < p - 1; ++i)
    for (long j = 0; j < p - 1; ++j)
      for (long k = 0; k < q - 1; ++k)
        for (long l = 0; l < q - 1; ++l)
          s(i * (q - 1) + k, j * (q - 1) + l) = -(a(i, j) * b(k, l));
  SeifertMatrix out;
  out.s = std::move(s);
  out.components = std::gcd(p, q);
  std::ostringstream name;
  name << "T(" << p << "," << q << ")";
  out.name = name.str();
  return out;
}

MatQ stabilize(const MatQ& s, std::mt19937_64& rng) {
  const Eigen::Index n = s.rows();
  std::uniform_int_distribution<int> coef(-2, 2);
  MatQ out = MatQ::Zero(n + 2, n + 2);
  out.topLeftCorner(n, n) = s;
  bool column_form = (rng() & 1) != 0;
  if (column_form) {
    for (Eigen::Index i = 0; i < n; ++i) out(i, n) = Rat(coef(rng));
    out(n + 1, n) = Rat(1);
  } else {
    for (Eigen::Index j = 0; j < n; ++j) out(n, j) = Rat(coef(rng));
    out(n, n + 1) = Rat(1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pipeline driver and reconstruction oracle
// ---------------------------------------------------------------------------

SeifertAnalysis analyze_seifert(const SeifertMatrix& sm) {
  SeifertAnalysis out;
  out.input = sm;
  out.keef = keef_reduce(sm.s);
  out.hvs = hvs_of(out.keef.s_ndeg);
  out.cpd = char_poly_data(out.hvs, out.keef.irr);
  out.profile = profile_impl(sm.s, out.keef, out.cpd);
  out.sp = spectrum_impl(out.profile, out.cpd);
  out.hn = h_numbers(out.hvs, out.profile, out.cpd, out.sp);
  return out;
}

TLPoint reconstruct_tl(const HNumbers& hn, const SpectrumData& sp, const Rat& x, long irr) {
  TLPoint out;
  if (x == Rat(0) || x == Rat(1)) {
    RootOfUnity one(0, 1);
    out.sigma = 0;
    long alg = 0;
    auto it = hn.p.find(one);
    if (it != hn.p.end())
      for (const auto& [k, arr] : it->second) alg += k * (arr[0] + arr[1]);
    out.ntilde = alg;
    out.nullity = alg + irr;
    return out;
  }
  IntervalCounts ic = interval_counts(sp, x);
  out.sigma = -ic.inside + ic.outside;
  RootOfUnity z = RootOfUnity::from_angle(x);
  auto it = hn.p.find(z);
  if (it != hn.p.end()) {
    for (const auto& [k, arr] : it->second) {
      if (k % 2 == 0) out.sigma += arr[0] - arr[1];  // sum_u u p^{2n}(u)
      out.ntilde += arr[0] + arr[1];
    }
  }
  out.nullity = out.ntilde + irr;
  return out;
}

}  // namespace linkspec
