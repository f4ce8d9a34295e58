#pragma once

#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"

#include <memory>
#include <utility>
#include <vector>

namespace momentlab {

// nodes with repetition counts; distinct points must stay separated by more
// than 1e-6*(1+|x|) (callers merge closer ones into repetitions)
struct NodeList {
    std::vector<std::pair<Complex, int>> nodes;
};

// evaluator supplying scaled derivatives f^{(k)}(z)/k!
class AnalyticFn {
public:
    virtual ~AnalyticFn() = default;
    virtual Complex scaledDerivative(Complex z, int k) const = 0;
};

class PolynomialFn : public AnalyticFn {
public:
    explicit PolynomialFn(const RealPolynomial& p);
    Complex scaledDerivative(Complex z, int k) const override;

private:
    std::vector<RealPolynomial> derivs_;  // p^{(k)}/k!
};

// F_t(z) = q(z) t^{-z-1}; derivatives by the Leibniz rule with
// log(1/t) powers and exact polynomial derivatives
class WeightKernelFn : public AnalyticFn {
public:
    WeightKernelFn(const RealPolynomial& q, double t);
    Complex scaledDerivative(Complex z, int k) const override;

private:
    std::vector<RealPolynomial> qDerivs_;  // q^{(j)}/j!
    double logInvT_;
};

// Newton tableau with confluent diagonal entries f^{(r)}(x)/r! for repeated
// nodes. Invariant under permutation of the node multiset.
Complex divided_difference(const AnalyticFn& f, const NodeList& nodes);

// F_t over the root multiset (each root repeated to its multiplicity),
// divided by the leading coefficient of p; the imaginary residue is checked
// small and discarded
double weight_via_divdiff(const RealPolynomial& q, const RootMultiset& roots, double t);

struct SufficientConditionResult {
    std::vector<double> values;  // q[a1], q[a1,a2], ..., nodes sorted descending
    bool allNonnegative = false;
};

// Certificate rule for distinct negative real poles: if every prefix divided
// difference of q at the poles is >= 0, the sequence q(n)/p(n) is a moment
// sequence. Throws PreconditionViolated for non-real, repeated, or
// nonnegative poles.
SufficientConditionResult sufficient_condition(const RealPolynomial& q, const RootMultiset& roots);

} // namespace momentlab
