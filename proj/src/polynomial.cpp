#include "momentlab/polynomial.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace momentlab {

RealPolynomial::RealPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_ = {0.0};
    for (double c : coeffs_)
        if (!std::isfinite(c)) throw DomainError("non-finite polynomial coefficient");
    double maxAbs = 0.0;
    for (double c : coeffs_) maxAbs = std::max(maxAbs, std::fabs(c));
    if (maxAbs > 0.0) {
        for (double& c : coeffs_)
            if (std::fabs(c) < 1e-14 * maxAbs) c = 0.0;
    }
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

Complex RealPolynomial::operator()(Complex z) const {
    Complex acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double RealPolynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

long double RealPolynomial::evalLong(long double x) const {
    long double acc = 0.0L;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + static_cast<long double>(*it);
    return acc;
}

RealPolynomial RealPolynomial::derivative(int order) const {
    if (order < 0) throw DomainError("negative derivative order");
    std::vector<double> c = coeffs_;
    for (int k = 0; k < order; ++k) {
        if (c.size() == 1) {
            c = {0.0};
            break;
        }
        std::vector<double> d(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return RealPolynomial(c);
}

RealPolynomial RealPolynomial::operator*(const RealPolynomial& o) const {
    if (isZero() || o.isZero()) return RealPolynomial();
    std::vector<double> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
    return RealPolynomial(c);
}

RealPolynomial RealPolynomial::operator+(const RealPolynomial& o) const {
    std::vector<double> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
    return RealPolynomial(c);
}

RealPolynomial RealPolynomial::operator-(const RealPolynomial& o) const {
    return *this + o.scaled(-1.0);
}

RealPolynomial RealPolynomial::scaled(double s) const {
    std::vector<double> c = coeffs_;
    for (double& v : c) v *= s;
    return RealPolynomial(c);
}

RealPolynomial RealPolynomial::shifted(double c) const {
    // Taylor coefficients of q(z - c) by in-place repeated synthetic division
    std::vector<double> a = coeffs_;
    const std::size_t n = a.size();
    const double s = -c;
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i-- > k;) a[i] += s * a[i + 1];
    return RealPolynomial(a);
}

RealPolynomial RealPolynomial::argScaled(double d) const {
    if (d == 0.0) throw DomainError("argument scale must be nonzero");
    std::vector<double> c = coeffs_;
    double f = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        c[i] *= f;
        f /= d;
    }
    return RealPolynomial(c);
}

namespace {

// Bernoulli numbers B_0..B_12 (odd ones beyond B_1 vanish), B_1 = -1/2
double bernoulli(int i) {
    switch (i) {
        case 0: return 1.0;
        case 1: return -0.5;
        case 2: return 1.0 / 6.0;
        case 4: return -1.0 / 30.0;
        case 6: return 1.0 / 42.0;
        case 8: return -1.0 / 30.0;
        case 10: return 5.0 / 66.0;
        case 12: return -691.0 / 2730.0;
        default: return 0.0;
    }
}

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

} // namespace

RealPolynomial faulhaber_partial_sum(double c, int k) {
    if (k < 1) throw DomainError("power must be positive");
    if (k > 12) throw DegreeTooLarge("partial-sum power limited to 12");
    if (!(c > 0.0)) throw DomainError("offset must be positive");
    // Bernoulli expansion of the power sum: with S(x) = 1/(k+1) *
    // sum_{i=1}^{k+1} C(k+1,i) B_{k+1-i} x^i one has
    // sum_{j=1}^{n} (j+c)^k = S(n+c+1) - S(c+1), so the coefficient of n^j
    // (j >= 1) is 1/(k+1) sum_{i>=j} C(k+1,i) B_{k+1-i} C(i,j) (c+1)^{i-j};
    // the constant term is pinned to c^k exactly (the n = 0 value).
    std::vector<double> coeffs(static_cast<std::size_t>(k) + 2, 0.0);
    coeffs[0] = std::pow(c, k);  // the n = 0 term, exact
    for (int j = 1; j <= k + 1; ++j) {
        double acc = 0.0, comp = 0.0;
        for (int i = std::max(j, 1); i <= k + 1; ++i) {
            double term = binom(k + 1, i) * bernoulli(k + 1 - i) * binom(i, j) *
                          std::pow(c + 1.0, static_cast<double>(i - j));
            double t = acc + term;  // Kahan
            if (std::fabs(acc) >= std::fabs(term))
                comp += (acc - t) + term;
            else
                comp += (term - t) + acc;
            acc = t;
        }
        coeffs[j] = (acc + comp) / static_cast<double>(k + 1);
    }
    return RealPolynomial(coeffs);
}

} // namespace momentlab
