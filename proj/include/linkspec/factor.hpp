#pragma once

#include <utility>
#include <vector>

#include "linkspec/polynomial.hpp"

namespace linkspec {

/// Complete factorization into monic irreducibles over Q:
/// p = leading * prod f_i^{m_i}. Monic irreducible factors with multiplicity,
/// sorted; the leading coefficient is dropped.
/// Squarefree split (Yun), then Berlekamp mod a good small prime, quadratic
/// Hensel lifting to a Mignotte-sized modulus and subset recombination.
std::vector<std::pair<Poly, long>> factor_rational(const Poly& p);

}  // namespace linkspec
