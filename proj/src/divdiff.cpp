#include "momentlab/divdiff.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace momentlab {

PolynomialFn::PolynomialFn(const RealPolynomial& p) {
    derivs_.push_back(p);
    double fact = 1.0;
    for (int k = 1; k <= p.degree(); ++k) {
        fact *= k;
        derivs_.push_back(p.derivative(k).scaled(1.0 / fact));
    }
}

Complex PolynomialFn::scaledDerivative(Complex z, int k) const {
    if (k >= static_cast<int>(derivs_.size())) return Complex(0.0, 0.0);
    return derivs_[static_cast<std::size_t>(k)](z);
}

WeightKernelFn::WeightKernelFn(const RealPolynomial& q, double t) {
    if (!(t > 0.0) || t > 1.0) throw DomainError("kernel defined for t in (0,1]");
    logInvT_ = std::log(1.0 / t);
    qDerivs_.push_back(q);
    double fact = 1.0;
    for (int j = 1; j <= q.degree(); ++j) {
        fact *= j;
        qDerivs_.push_back(q.derivative(j).scaled(1.0 / fact));
    }
}

Complex WeightKernelFn::scaledDerivative(Complex z, int k) const {
    // (d/dz)^k [q(z) t^{-z-1}] / k!
    //   = t^{-z-1} sum_{j<=k} (q^{(j)}(z)/j!) L^{k-j}/(k-j)!,  L = log(1/t)
    Complex base = std::exp((z + 1.0) * logInvT_);
    Complex acc = 0.0;
    double lpow = 1.0;  // L^r / r! walking r = 0 upward
    for (int r = 0; r <= k; ++r) {
        int j = k - r;
        if (j < static_cast<int>(qDerivs_.size())) acc += qDerivs_[j](z) * lpow;
        lpow *= logInvT_ / (r + 1.0);
    }
    return base * acc;
}

Complex divided_difference(const AnalyticFn& f, const NodeList& nodes) {
    std::vector<Complex> flat;
    for (const auto& [pt, rep] : nodes.nodes) {
        if (rep < 1) throw DomainError("node repetition must be positive");
        for (int i = 0; i < rep; ++i) flat.push_back(pt);
    }
    if (flat.empty()) throw DomainError("empty node list");
    for (std::size_t i = 0; i < nodes.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.nodes.size(); ++j) {
            double d = std::abs(nodes.nodes[i].first - nodes.nodes[j].first);
            if (d <= 1e-6 * (1.0 + std::abs(nodes.nodes[i].first)))
                throw NodesTooClose("merge nearly coincident nodes into repetitions");
        }
    const std::size_t n = flat.size();
    // tableau d[i][j] = f[x_i..x_j]; confluent diagonals take f^{(span)}/span!
    std::vector<std::vector<Complex>> d(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = f.scaledDerivative(flat[i], 0);
    for (std::size_t span = 1; span < n; ++span) {
        for (std::size_t i = 0; i + span < n; ++i) {
            std::size_t j = i + span;
            if (flat[i] == flat[j]) {
                d[i][j] = f.scaledDerivative(flat[i], static_cast<int>(span));
            } else {
                d[i][j] = (d[i + 1][j] - d[i][j - 1]) / (flat[j] - flat[i]);
            }
        }
    }
    return d[0][n - 1];
}

double weight_via_divdiff(const RealPolynomial& q, const RootMultiset& roots, double t) {
    if (!is_stable(roots)) throw UnstablePolynomial("poles must lie in the open left half-plane");
    if (q.isZero() || q.degree() >= roots.degree())
        throw DegreeViolation("numerator degree must be below denominator degree");
    WeightKernelFn f(q, t);
    NodeList nodes;
    for (const auto& e : roots.entries()) nodes.nodes.emplace_back(e.root, e.multiplicity);
    Complex v = divided_difference(f, nodes) / roots.leadingCoeff();
    return v.real();
}

SufficientConditionResult sufficient_condition(const RealPolynomial& q, const RootMultiset& roots) {
    for (const auto& e : roots.entries()) {
        if (e.root.imag() != 0.0) throw PreconditionViolated("poles must be real");
        if (e.multiplicity != 1) throw PreconditionViolated("poles must be simple");
        if (!(e.root.real() < 0.0)) throw PreconditionViolated("poles must be negative");
    }
    if (q.isZero() || q.degree() >= roots.degree())
        throw DegreeViolation("numerator degree must be below denominator degree");
    std::vector<double> xs;
    for (const auto& e : roots.entries()) xs.push_back(e.root.real());
    std::sort(xs.rbegin(), xs.rend());  // largest pole first
    PolynomialFn f(q);
    const std::size_t n = xs.size();
    std::vector<std::vector<Complex>> d(n, std::vector<Complex>(n, Complex(0.0, 0.0)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = f.scaledDerivative(Complex(xs[i], 0.0), 0);
    for (std::size_t span = 1; span < n; ++span)
        for (std::size_t i = 0; i + span < n; ++i) {
            std::size_t j = i + span;
            d[i][j] = (d[i + 1][j] - d[i][j - 1]) / Complex(xs[j] - xs[i], 0.0);
        }
    SufficientConditionResult res;
    double maxAbs = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        res.values.push_back(d[0][j].real());
        maxAbs = std::max(maxAbs, std::fabs(d[0][j].real()));
    }
    res.allNonnegative = true;
    for (double v : res.values)
        if (v < -1e-12 * maxAbs) res.allNonnegative = false;
    return res;
}

} // namespace momentlab
