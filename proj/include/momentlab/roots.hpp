#pragma once

#include "momentlab/polynomial.hpp"

#include <vector>

namespace momentlab {

struct RootEntry {
    Complex root;
    int multiplicity;
};

struct ConjugatePair {
    double x;  // real part
    double y;  // imaginary part, > 0
    int multiplicity;
};

// Roots of a real polynomial with multiplicities. Non-real entries come in
// conjugate pairs with equal multiplicity; entries are kept sorted by
// (Re, Im) so downstream output is deterministic.
class RootMultiset {
public:
    RootMultiset() : leadingCoeff_(1.0) {}
    RootMultiset(std::vector<RootEntry> entries, double leadingCoeff);

    const std::vector<RootEntry>& entries() const { return entries_; }
    double leadingCoeff() const { return leadingCoeff_; }
    int degree() const;

    std::vector<RootEntry> realRoots() const;
    std::vector<ConjugatePair> conjugatePairs() const;  // y > 0 representatives
    bool allReal() const;

    // expand back into coefficient form (leadingCoeff times product of factors)
    RealPolynomial expand() const;

    // p(n) for real n in extended precision, exploiting the factored form
    long double evalLong(long double n) const;

private:
    std::vector<RootEntry> entries_;
    double leadingCoeff_;
};

// Simultaneous (Aberth-Ehrlich) iteration, multiplicity clustering over an
// escalating radius ladder, Newton polishing on the (m-1)th derivative, and
// conjugate symmetrization. The clustering level is chosen by minimal
// round-trip error against the input coefficients. Throws NonConvergence if
// no clustering reproduces the polynomial to 1e-8 relative.
RootMultiset find_roots(const RealPolynomial& p);

bool is_stable(const RootMultiset& roots);

} // namespace momentlab
