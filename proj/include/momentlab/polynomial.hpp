#pragma once

#include <complex>
#include <vector>

namespace momentlab {

using Complex = std::complex<double>;

// Real-coefficient polynomial, coefficients stored ascending.
// Construction normalizes: trailing zeros stripped, coefficients below
// 1e-14 * max|c_i| zeroed.
class RealPolynomial {
public:
    RealPolynomial() : coeffs_{0.0} {}
    explicit RealPolynomial(std::vector<double> coeffs);
    static RealPolynomial constant(double c) { return RealPolynomial({c}); }

    const std::vector<double>& coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool isZero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    bool isConstant() const { return coeffs_.size() == 1; }
    double leading() const { return coeffs_.back(); }

    Complex operator()(Complex z) const;
    double operator()(double x) const;
    long double evalLong(long double x) const;

    RealPolynomial derivative(int order = 1) const;
    RealPolynomial operator*(const RealPolynomial& o) const;
    RealPolynomial operator+(const RealPolynomial& o) const;
    RealPolynomial operator-(const RealPolynomial& o) const;
    RealPolynomial scaled(double s) const;

    // q(z - c): real Taylor shift via repeated synthetic division
    RealPolynomial shifted(double c) const;
    // q(z / d)
    RealPolynomial argScaled(double d) const;

    bool operator==(const RealPolynomial& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<double> coeffs_;
};

// The polynomial P of degree k+1 with P(n) = sum_{j=0..n} (j+c)^k for every
// integer n >= 0, built from the Bernoulli-number expansion of power sums.
// Throws DegreeTooLarge for k > 12 (double-precision coefficient blow-up).
RealPolynomial faulhaber_partial_sum(double c, int k);

} // namespace momentlab
