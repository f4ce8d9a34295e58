#include "momentlab/convolution.hpp"

#include "momentlab/errors.hpp"
#include "momentlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace momentlab {

namespace {

void checkFamily(const ExpFamily& fam) {
    if (fam.exponents.empty()) throw DomainError("exponent family is empty");
    for (const auto& a : fam.exponents)
        if (!(a.real() < 0.0)) throw DomainError("exponents must have negative real part");
}

} // namespace

ExpConvolver::ExpConvolver(ExpFamily fam, double ymax) {
    checkFamily(fam);
    if (!(ymax > 0.0)) throw DomainError("convolution window must be positive");
    ymax_ = std::max(ymax, 1e-6);
    sigma_ = fam.exponents[0].real();
    for (const auto& a : fam.exponents) sigma_ = std::max(sigma_, a.real());
    for (const auto& a : fam.exponents) {
        betas_.push_back(a - sigma_);
        maxImag_ = std::max(maxImag_, std::fabs(a.imag()));
    }
    const int m = static_cast<int>(betas_.size());
    if (m <= 2) return;  // no interpolated intermediate levels needed
    const int N = static_cast<int>(64 + 1.4 * ymax_ * maxImag_) + 8;

    // previous level as a callable: starts as exp(beta_0 y)
    auto evalPrev = [this](int level, double y) -> Complex {
        if (level < 0) return std::exp(betas_[0] * y);
        const Cheb& c = levels_[static_cast<std::size_t>(level)];
        Complex num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < c.xs.size(); ++k) {
            double dx = y - c.xs[k];
            if (dx == 0.0) return c.vals[k];
            double wk = c.w[k] / dx;
            num += wk * c.vals[k];
            den += wk;
        }
        return num / den;
    };
    for (int lev = 1; lev <= m - 2; ++lev) {
        Cheb c;
        c.xs.resize(N + 1);
        c.w.resize(N + 1);
        c.vals.resize(N + 1);
        for (int k = 0; k <= N; ++k) {
            c.xs[k] = 0.5 * ymax_ * (1.0 + std::cos(M_PI * k / N));
            c.w[k] = ((k % 2 == 0) ? 1.0 : -1.0) * ((k == 0 || k == N) ? 0.5 : 1.0);
        }
        const Complex bk = betas_[static_cast<std::size_t>(lev)];
        for (int k = 0; k <= N; ++k) {
            double y = c.xs[k];
            if (y <= 0.0) {
                c.vals[k] = Complex(0.0, 0.0);
                continue;
            }
            AdaptiveOptions opt;
            opt.relTol = 1e-11;
            double per = M_PI / (2.0 * std::max({std::fabs(bk.imag()), maxImag_, 1e-9}));
            for (double p = per; p < y; p += per) {
                opt.breakpoints.push_back(p);
                if (opt.breakpoints.size() > 2000) break;
            }
            c.vals[k] = adaptive_integrate_complex(
                [&](double x) { return evalPrev(lev - 2, x) * std::exp(bk * (y - x)); }, 0.0, y, opt);
        }
        levels_.push_back(std::move(c));
    }
}

Complex ExpConvolver::levelValue(double y) const {
    if (levels_.empty()) return std::exp(betas_[0] * y);
    const Cheb& c = levels_.back();
    Complex num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < c.xs.size(); ++k) {
        double dx = y - c.xs[k];
        if (dx == 0.0) return c.vals[k];
        double wk = c.w[k] / dx;
        num += wk * c.vals[k];
        den += wk;
    }
    return num / den;
}

Complex ExpConvolver::operator()(double y) const {
    if (y < 0.0) throw DomainError("convolution argument must be nonnegative");
    const int m = static_cast<int>(betas_.size());
    if (m == 1) return std::exp(betas_[0] * y + sigma_ * y);
    if (y == 0.0) return Complex(0.0, 0.0);
    const Complex bLast = betas_.back();
    AdaptiveOptions opt;
    opt.relTol = 1e-11;
    double per = M_PI / (2.0 * std::max({std::fabs(bLast.imag()), maxImag_, 1e-9}));
    for (double p = per; p < y; p += per) {
        opt.breakpoints.push_back(p);
        if (opt.breakpoints.size() > 2000) break;
    }
    Complex inner = adaptive_integrate_complex(
        [&](double x) { return levelValue(x) * std::exp(bLast * (y - x)); }, 0.0, y, opt);
    return inner * std::exp(sigma_ * y);
}

Complex convolve_exponentials(const ExpFamily& fam, double y) {
    checkFamily(fam);
    if (y < 0.0) throw DomainError("convolution argument must be nonnegative");
    ExpConvolver conv(fam, std::max(y, 1e-6));
    return conv(y);
}

SimplexEstimate simplex_form(const ExpFamily& fam, double y, long long samples,
                             unsigned long long seed) {
    checkFamily(fam);
    const int m = static_cast<int>(fam.exponents.size());
    if (m < 2) throw DomainError("simplex form needs at least two exponents");
    if (samples < 10000) throw DomainError("at least 1e4 samples required");
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    Complex tot = 0.0;
    double tot2 = 0.0;
    std::vector<double> e(m);
    for (long long s = 0; s < samples; ++s) {
        double sum = 0.0;
        for (int i = 0; i < m; ++i) {
            double u = unit();
            if (u <= 0.0) u = 0x1.0p-53;
            e[i] = -std::log(u);  // Exp(1); normalized -> Dirichlet(1,...,1)
            sum += e[i];
        }
        Complex expo = 0.0;
        for (int i = 0; i < m; ++i) expo += (e[i] / sum) * fam.exponents[i];
        Complex v = std::exp(y * expo);
        tot += v;
        tot2 += std::norm(v);
    }
    const double nS = static_cast<double>(samples);
    Complex mean = tot / nS;
    double var = std::max(tot2 / nS - std::norm(mean), 0.0);
    double volFactor = std::pow(y, m - 1);
    for (int i = 2; i <= m - 1; ++i) volFactor /= i;
    SimplexEstimate est;
    est.value = volFactor * mean;
    est.stderror = volFactor * std::sqrt(var / nS);
    return est;
}

double weight_via_convolution(const RootMultiset& roots, double t) {
    return weight_via_convolution(roots, std::vector<double>{t})[0];
}

std::vector<double> weight_via_convolution(const RootMultiset& roots, const std::vector<double>& ts) {
    if (!is_stable(roots)) throw UnstablePolynomial("poles must lie in the open left half-plane");
    ExpFamily fam;
    for (const auto& e : roots.entries())
        for (int k = 0; k < e.multiplicity; ++k) fam.exponents.push_back(e.root);
    double ymax = 1e-6;
    for (double t : ts) {
        if (!(t > 0.0) || t > 1.0) throw DomainError("weight defined on (0,1]");
        ymax = std::max(ymax, std::log(1.0 / t));
    }
    ExpConvolver conv(fam, ymax);
    std::vector<double> out;
    out.reserve(ts.size());
    for (double t : ts) {
        Complex v = conv(std::log(1.0 / t)) / roots.leadingCoeff();
        out.push_back(v.real() / t);
    }
    return out;
}

double multiplicative_convolution(const WeightFunction& w1, const WeightFunction& w2, double t) {
    if (!(t > 0.0) || t > 1.0) throw DomainError("defined on (0,1]");
    const double X = std::log(1.0 / t);
    if (X == 0.0) return 0.0;
    // s = e^{-u}: int_t^1 w1(s) w2(t/s) ds/s = int_0^X w1(e^{-u}) w2(t e^u) du
    AdaptiveOptions opt;
    opt.relTol = 1e-9;
    double ymax = 1e-9;
    for (const auto& b : w1.pairBlocks()) ymax = std::max(ymax, b.y);
    for (const auto& b : w2.pairBlocks()) ymax = std::max(ymax, b.y);
    double per = M_PI / (2.0 * ymax);
    for (double p = per; p < X; p += per) {
        opt.breakpoints.push_back(p);
        if (opt.breakpoints.size() > 2000) break;
    }
    return adaptive_integrate(
        [&](double u) { return w1.evalAtX(u) * w2.evalAtX(X - u); }, 0.0, X, opt);
}

} // namespace momentlab
