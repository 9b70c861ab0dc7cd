#pragma once

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linkspec/linalg.hpp"
#include "linkspec/polynomial.hpp"
#include "linkspec/rational.hpp"

namespace linkspec {

/// lambda = e^{2*pi*i*a/m}, normalized to 0 <= a < m, gcd(a, m) = 1.
struct RootOfUnity {
  long a = 0;
  long m = 1;
  RootOfUnity() = default;
  RootOfUnity(long a_, long m_);
  static RootOfUnity from_angle(const Rat& x);  // x = a/m
  Rat angle() const { return Rat(a, m); }       // in [0, 1)
  bool is_one() const { return a == 0; }
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend bool operator<(const RootOfUnity& l, const RootOfUnity& r) {
    return l.angle() < r.angle();
  }
};

struct SeifertMatrix {
  MatQ s;
  std::optional<long> components;
  std::string name;
};

struct KeefDecomposition {
  long irr = 0;                 // size of the zero block S_0
  MatQ s_ndeg;                  // nondegenerate block (possibly 0x0)
  long reduction_moves = 0;     // inverse column/row expansions applied
  std::vector<std::string> transform_witness;
};

/// Reduces S to S_0 (+) S_ndeg by splitting common-kernel vectors and
/// undoing column/row expansions. Throws std::domain_error on matrices that
/// admit no such decomposition (those are not Seifert matrices of any link).
KeefDecomposition keef_reduce(const MatQ& s);

/// The hermitian variation structure of a nondegenerate Seifert block,
/// with the sign choice epsilon = -1.
struct HVS {
  long n = 0;
  MatQ b;  // S - S^T
  MatQ h;  // (S^T)^{-1} S
  MatQ v;  // (S^T)^{-1}
};
HVS hvs_of(const MatQ& s_ndeg);

enum class FactorSide {
  inside,     // all roots strictly inside the unit circle
  outside,    // all roots strictly outside
  split,      // self-reciprocal: half inside, half outside
  mixed,      // roots on both sides (factor not self-reciprocal)
  on_circle,  // has non-cyclotomic roots on the unit circle (unsupported
              // for sign extraction; counts remain valid)
};

struct OffCircleFactor {
  Poly f;  // monic irreducible, not cyclotomic
  long multiplicity = 0;
  FactorSide side = FactorSide::split;
};

struct CharPolyData {
  Poly delta_h;                     // det(h - t*Id), exact
  long irr = 0;
  std::map<long, long> cyclo_mult;  // conductor d -> multiplicity of Phi_d
  std::vector<OffCircleFactor> off_circle;

  bool has_on_circle_factor() const;
  long mult_root_one() const;                 // multiplicity of Phi_1
  long mult_at(const RootOfUnity& z) const;   // algebraic multiplicity of z
  std::vector<Rat> jump_angles() const;       // angles a/d in (0,1), sorted
};
CharPolyData char_poly_data(const HVS& hvs, long irr);

struct TLPoint {
  long sigma = 0;
  long nullity = 0;
  long ntilde = 0;
  friend bool operator==(const TLPoint&, const TLPoint&) = default;
};

/// Exact Tristram-Levine data at zeta = e^{2*pi*i*x}, x in [0,1].
/// At x in {0,1}: sigma = 0 by convention and ntilde is the multiplicity of
/// the root 1 of Delta^h. The overload with irr skips the internal reduction.
TLPoint tristram_levine(const MatQ& s, const Rat& x);
TLPoint tristram_levine(const MatQ& s, const Rat& x, long irr);

struct SignatureProfile {
  std::vector<Rat> jump_angles;      // sorted, in (0,1)
  std::vector<long> plateau_sigma;   // one value per gap; size = jumps + 1
  std::vector<TLPoint> at_jumps;     // exact point data at each jump angle
  long irr = 0;

  long sigma_before(size_t jump_index) const { return plateau_sigma[jump_index]; }
  long sigma_after(size_t jump_index) const { return plateau_sigma[jump_index + 1]; }
  /// sigma at 1^- (the last plateau); 0 when there are no jumps and sigma
  /// vanishes identically.
  long sigma_at_one_minus() const { return plateau_sigma.back(); }
  friend bool operator==(const SignatureProfile&, const SignatureProfile&) = default;
};
SignatureProfile signature_profile(const MatQ& s);

struct IspEntry {
  double re = 0;
  double im = 0;
  long count = 0;
  Poly source;  // the factor the root came from
};

struct SpectrumData {
  std::map<Rat, long> sp;      // multiset of rationals in (0, 2]
  std::vector<IspEntry> isp;   // off-circle part, tagged, approximate
  long deg_delta = 0;

  long sp_size() const;
  long isp_size() const;
  long count(const Rat& x) const;
  bool operator==(const SpectrumData& o) const;
};

/// Spectrum by the signature-limit algorithm: for each unit-circle root at
/// angle x0 in (0,1) with multiplicity m and signature jump j,
///   s(x0) = (m + j/2)/2 and s(x0+1) = (m - j/2)/2;
/// for the root 1, s(1) = (m1 - sigma(1^-))/2 and s(2) = (m1 + sigma(1^-))/2.
/// ISp collects the off-circle eigenvalues with their mirrors.
SpectrumData spectrum(const MatQ& s);

struct IntervalCounts {
  long inside = 0;    // |Sp /\ (x, x+1)|
  long outside = 0;   // |Sp \ [x, x+1]|
  long boundary = 0;  // D = |Sp /\ {x, x+1}|
  friend bool operator==(const IntervalCounts&, const IntervalCounts&) = default;
};
IntervalCounts interval_counts(const SpectrumData& sp, const Rat& x);

struct HNumbers {
  // p^k_lambda(u): block counts with signs, [0] = u=+1, [1] = u=-1
  std::map<RootOfUnity, std::map<long, std::array<long, 2>>> p;
  // q^k per self-reciprocal factor key (an irreducible factor, or the
  // product f * reciprocal(f) when f is not self-reciprocal); the count is
  // the number of V^{2k} summands carried by the key's root pairs.
  std::map<Poly, std::map<long, long>> q;

  struct Unresolved {
    bool circle = true;
    RootOfUnity lambda;  // when circle
    Poly factor;         // when !circle (on-circle non-cyclotomic factor)
    long k = 0;
    long count = 0;
  };
  std::vector<Unresolved> unresolved;
  long deg_delta = 0;

  bool resolved() const { return unresolved.empty(); }
  long p_count(const RootOfUnity& z, long k, int u) const;
};

HNumbers h_numbers(const MatQ& s);
HNumbers h_numbers(const HVS& hvs, const SignatureProfile& profile, const CharPolyData& cpd,
                   const SpectrumData& sp);

/// Literal evaluation of the spectrum definition from resolved H-numbers.
SpectrumData spectrum_from_h(const HNumbers& hn);

/// |Sp /\ (0, 1]|, the delta invariant.
long delta_invariant(const SpectrumData& sp);

struct ValidationReport {
  struct Clause {
    std::string id;
    std::string description;
    bool pass = true;
    std::string detail;
  };
  std::vector<Clause> clauses;
  bool pass = true;
  void add(std::string id, std::string description, bool ok, std::string detail = "");
};

/// Monodromy-theorem constraints for local algebraic links.
ValidationReport validate_local(const HNumbers& hn);
/// H-number constraints for regular links at infinity.
ValidationReport validate_infinity(const HNumbers& hn);

/// Seifert matrix of the (p,q) torus link, calibrated so that for coprime
/// p,q the spectrum is { i/p + j/q : 1<=i<=p-1, 1<=j<=q-1 }.
SeifertMatrix torus_seifert(long p, long q);

/// One random column/row expansion (an S-equivalence move); size grows by 2.
MatQ stabilize(const MatQ& s, std::mt19937_64& rng);

/// Convenience pipeline driver.
struct SeifertAnalysis {
  SeifertMatrix input;
  KeefDecomposition keef;
  HVS hvs;  // n = 0 when the nondegenerate block is empty
  CharPolyData cpd;
  SignatureProfile profile;
  SpectrumData sp;
  std::optional<HNumbers> hn;  // absent when an on-circle factor blocks extraction
};
SeifertAnalysis analyze_seifert(const SeifertMatrix& sm);

/// sigma and ntilde at e^{2*pi*i*x} rebuilt from resolved H-numbers through
/// the signature/nullity relations; used as the reconstruction oracle.
TLPoint reconstruct_tl(const HNumbers& hn, const SpectrumData& sp, const Rat& x, long irr);

}  // namespace linkspec
