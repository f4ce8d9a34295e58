#pragma once

#include "momentlab/classify.hpp"
#include "momentlab/polynomial.hpp"

#include <functional>
#include <string>
#include <utility>

namespace momentlab {

// diagonal reproducing-kernel coefficients a_n > 0
struct KernelCoefficients {
    std::function<long double(long long)> a;
    std::string description;
};

// Schur product with the Szego kernel replaces a_n by the partial sum
// sum_{j<=n} a_j (compensated summation; DomainError if any a_j <= 0)
long double schur_product_with_szego(const KernelCoefficients& k, long long n);

// Subnormality of the multiplication operator reduces to: is (1/a_n) a
// moment sequence? With a rational representation supplied, delegate to the
// full decision engine; otherwise run the finite-difference test, which can
// refute but never fully certify (pass => Undetermined).
Verdict subnormality_test(const KernelCoefficients& k, const Budget& budget = {});
Verdict subnormality_test(const RealPolynomial& q, const RealPolynomial& p, const Budget& budget = {});

// The partial-sum kernel pipeline: p_c(n) = sum_{j<=n} (j+c)^6, then decide
// whether (1/p_c(n)) is a moment sequence. c = 1 is the counterexample: each
// (n+c)^6 kernel is subnormal, the Schur product with the Szego kernel is not.
Verdict misra_counterexample(double c, const Budget& budget = {});

// c-interval around 1 with the NotMoment verdict, located by bisection on
// the scan minimum sign; returns {lower edge, upper edge}
std::pair<double, double> counterexample_neighborhood(double lo = 0.5, double hi = 2.0,
                                                      double tol = 1e-3,
                                                      const Budget& budget = {});

} // namespace momentlab
