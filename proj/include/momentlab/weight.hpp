#pragma once

#include "momentlab/pfd.hpp"
#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"

#include <cstdint>
#include <vector>

namespace momentlab {

// w(t) on (0,1] in real form: per real pole r with multiplicity l a block
//   (sum_j A_j x^{j-1}/(j-1)!) e^{(r+1)x},        x = log(1/t),
// and per conjugate pair (x0 +- i y, m) a block
//   (sum_j 2|A_j| x^{j-1} cos(theta_j + y x)/(j-1)!) e^{(x0+1)x}.
struct RealPoleBlock {
    double r;
    int l;
    std::vector<double> A;  // A[j-1], j = 1..l
};
struct PairBlock {
    double x;
    double y;  // > 0
    int m;
    std::vector<double> mag;    // 2|A_j|
    std::vector<double> phase;  // principal argument of A_j, in (-pi, pi]
};

struct MomentReport {
    long long n = 0;
    double claimed = 0;     // q(n)/p(n)
    double integrated = 0;  // quadrature of t^n w(t)
    double relError = 0;    // |integrated - claimed| / max(|claimed|, 1e-300)
};

enum class CertKind { NegativityWitness, PositivityMargin };

struct SignCertificate {
    CertKind kind = CertKind::PositivityMargin;
    double witnessT = 0.0;      // set iff NegativityWitness
    double witnessValue = 0.0;  // w(witnessT), < 0 for a witness
    std::int64_t gridSize = 0;  // points actually evaluated
    double minValue = 0.0;
    double minLocation = 0.0;   // t of the grid minimum
    double maxAbsValue = 0.0;   // largest |w| seen on the grid
};

class WeightFunction {
public:
    // requires stable roots, deg q < deg p, no common zero
    WeightFunction(RealPolynomial q, RootMultiset roots);

    double operator()(double t) const;   // throws DomainError outside (0,1]
    double evalAtX(double x) const;      // x = log(1/t) >= 0
    Complex evalViaPfd(double t) const;  // complex-form cross check

    // sum of |A| envelopes with an extra e^{-damping x} factor: bound on the
    // roundoff scale of evalAtX (damping 0) or of the moment integrand
    double envelope(double x, double damping = 0.0) const;

    MomentReport moment(long long n) const;

    // log-uniform grid in x over [0, X], X = max(20, 6 periods of the slowest
    // oscillation), plus caller candidates plus the dominant-pair trough
    // family; deterministic min reduction (ties broken by smaller t)
    SignCertificate sign_scan(int gridSize, const std::vector<double>& candidateTs = {}) const;

    // weight of the shifted (roots + c) and argument-rescaled (roots * d)
    // family, as an exact transform of the coefficient table:
    // shift multiplies w by t^{-c}; rescale maps A at order j to d^j A.
    WeightFunction shift_rescale(double c, double d) const;

    const PfdTable& pfd() const { return pfd_; }
    const RootMultiset& roots() const { return roots_; }
    const RealPolynomial& q() const { return q_; }
    const std::vector<RealPoleBlock>& realBlocks() const { return realBlocks_; }
    const std::vector<PairBlock>& pairBlocks() const { return pairBlocks_; }

private:
    WeightFunction() = default;
    void buildRealForm();
    double scanWindow() const;

    RealPolynomial q_;
    RootMultiset roots_;
    PfdTable pfd_;
    std::vector<RealPoleBlock> realBlocks_;
    std::vector<PairBlock> pairBlocks_;
};

inline WeightFunction build_weight(const RealPolynomial& q, const RootMultiset& roots) {
    return WeightFunction(q, roots);
}

} // namespace momentlab
