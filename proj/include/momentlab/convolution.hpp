#pragma once

#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"
#include "momentlab/weight.hpp"

#include <functional>
#include <vector>

namespace momentlab {

struct ExpFamily {
    std::vector<Complex> exponents;  // with repetition, all Re < 0
};

// Iterated convolution of f_j(y) = exp(a_j y) on [0, ymax]. Intermediate
// levels are memoized as Chebyshev-Lobatto barycentric interpolants after
// factoring out exp(sigma y), sigma = max Re a_j, so the interpolated
// remainder is smooth and bounded. The final level is integrated directly
// per evaluation point.
class ExpConvolver {
public:
    ExpConvolver(ExpFamily fam, double ymax);
    Complex operator()(double y) const;

private:
    Complex levelValue(double y) const;  // level m-2 interpolant / closed form

    std::vector<Complex> betas_;  // exponents - sigma
    double sigma_ = 0.0;
    double ymax_ = 1.0;
    double maxImag_ = 0.0;
    // barycentric data for levels 1..m-2 (level 0 is exp(beta_0 y) exactly)
    struct Cheb {
        std::vector<double> xs;
        std::vector<Complex> vals;
        std::vector<double> w;
    };
    std::vector<Cheb> levels_;
};

// (f_1 * ... * f_m)(y)
Complex convolve_exponentials(const ExpFamily& fam, double y);

struct SimplexEstimate {
    Complex value;
    double stderror = 0.0;
};

// Monte Carlo form of the same convolution: y^{m-1}/(m-1)! times the mean of
// exp(y sum lambda_j a_j) over the uniform simplex, Dirichlet(1,...,1)
// sampling. Deterministic for a fixed seed.
SimplexEstimate simplex_form(const ExpFamily& fam, double y, long long samples,
                             unsigned long long seed = 12345);

// w_p(t) = (1/t)(f_1 * ... * f_m)(log(1/t)) for the unit numerator
double weight_via_convolution(const RootMultiset& roots, double t);
std::vector<double> weight_via_convolution(const RootMultiset& roots, const std::vector<double>& ts);

// (w1 <> w2)(t) = integral_t^1 w1(s) w2(t/s) ds/s, via s = e^{-u}; the
// moments of the product weight are the products of the factor moments
double multiplicative_convolution(const WeightFunction& w1, const WeightFunction& w2, double t);

} // namespace momentlab
