#include "momentlab/pfd.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace momentlab {

namespace {

double binom(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return r;
}

// Taylor coefficients of q about center a (complex), by repeated synthetic
// division; returns the first `count` scaled derivatives q^{(k)}(a)/k!
std::vector<Complex> taylorAt(const RealPolynomial& q, Complex a, int count) {
    std::vector<Complex> w(q.coeffs().begin(), q.coeffs().end());
    const std::size_t n = w.size();
    for (std::size_t k = 0; k + 1 < n; ++k)
        for (std::size_t i = n - 1; i-- > k;) w[i] += a * w[i + 1];
    w.resize(count, Complex(0.0, 0.0));
    return w;
}

} // namespace

PfdTable decompose(const RealPolynomial& q, const RootMultiset& roots) {
    const int degP = roots.degree();
    if (q.isZero() || q.degree() >= degP)
        throw DegreeViolation("numerator degree must be below denominator degree");
    // common-zero guard, scaled by the size of q over the root cluster
    double qScale = 1.0;
    for (const auto& e : roots.entries()) qScale = std::max(qScale, std::abs(q(e.root)));
    for (const auto& e : roots.entries())
        if (std::abs(q(e.root)) <= 1e-10 * qScale)
            throw CommonZero("numerator vanishes at a pole");

    PfdTable table;
    table.sourceDegreeP = degP;
    table.sourceDegreeQ = q.degree();
    for (const auto& e : roots.entries()) {
        const int b = e.multiplicity;
        const Complex a = e.root;
        // series of p_i = p/(z-a)^b about a, as a product over the other
        // factors: lc * prod_j ((a - a_j) + u)^{b_j}, truncated at order b
        std::vector<Complex> den(b, Complex(0.0, 0.0));
        den[0] = Complex(roots.leadingCoeff(), 0.0);
        for (const auto& o : roots.entries()) {
            if (&o == &e) continue;
            const Complex d = a - o.root;
            std::vector<Complex> fac(std::min(b, o.multiplicity + 1), Complex(0.0, 0.0));
            for (int k = 0; k < static_cast<int>(fac.size()); ++k)
                fac[k] = binom(o.multiplicity, k) * std::pow(d, o.multiplicity - k);
            std::vector<Complex> next(b, Complex(0.0, 0.0));
            for (int i = 0; i < b; ++i)
                for (int k = 0; k < static_cast<int>(fac.size()) && i + k < b; ++k)
                    next[i + k] += den[i] * fac[k];
            den = std::move(next);
        }
        // q/p_i series by truncated division
        std::vector<Complex> num = taylorAt(q, a, b);
        std::vector<Complex> c(b);
        for (int k = 0; k < b; ++k) {
            Complex acc = num[k];
            for (int l = 0; l < k; ++l) acc -= c[l] * den[k - l];
            c[k] = acc / den[0];
        }
        for (int j = 1; j <= b; ++j) table.terms.push_back({a, j, c[b - j]});
    }
    std::sort(table.terms.begin(), table.terms.end(), [](const PfdTerm& l, const PfdTerm& r) {
        if (l.pole.real() != r.pole.real()) return l.pole.real() < r.pole.real();
        if (l.pole.imag() != r.pole.imag()) return l.pole.imag() < r.pole.imag();
        return l.order < r.order;
    });
    return table;
}

Complex reconstruct(const PfdTable& table, Complex z) {
    for (const auto& t : table.terms)
        if (std::abs(z - t.pole) < 1e-10 * (1.0 + std::abs(z)))
            throw PoleHit("evaluation point too close to a pole");
    Complex acc = 0.0;
    for (const auto& t : table.terms) {
        Complex inv = 1.0 / (z - t.pole);
        Complex pw = inv;
        for (int j = 1; j < t.order; ++j) pw *= inv;
        acc += t.A * pw;
    }
    return acc;
}

} // namespace momentlab
