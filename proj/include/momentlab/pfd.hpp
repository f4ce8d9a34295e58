#pragma once

#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"

#include <vector>

namespace momentlab {

struct PfdTerm {
    Complex pole;
    int order;   // j in (z - pole)^{-j}
    Complex A;
};

struct PfdTable {
    std::vector<PfdTerm> terms;  // sorted by (Re pole, Im pole, order)
    int sourceDegreeP = 0;
    int sourceDegreeQ = 0;
};

// q/p = sum_i sum_{j<=b_i} A_i^j (z - alpha_i)^{-j}. A_i^j is the
// (b_i - j)th scaled Taylor coefficient of q/p_i at alpha_i, where
// p_i = p/(z-alpha_i)^{b_i}; computed by truncated series division with the
// p_i series formed directly from the factored form (no expanded-coefficient
// cancellation). Requires deg q < deg p and q nonzero at every pole.
PfdTable decompose(const RealPolynomial& q, const RootMultiset& roots);

// sum of A (z-pole)^{-order}; throws PoleHit within 1e-10*(1+|z|) of a pole
Complex reconstruct(const PfdTable& table, Complex z);

} // namespace momentlab
