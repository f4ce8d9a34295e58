#include "momentlab/weight.hpp"

#include "momentlab/errors.hpp"
#include "momentlab/parallel.hpp"
#include "momentlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momentlab {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

WeightFunction::WeightFunction(RealPolynomial q, RootMultiset roots)
    : q_(std::move(q)), roots_(std::move(roots)) {
    if (!is_stable(roots_)) throw UnstablePolynomial("poles must lie in the open left half-plane");
    pfd_ = decompose(q_, roots_);
    buildRealForm();
}

void WeightFunction::buildRealForm() {
    realBlocks_.clear();
    pairBlocks_.clear();
    for (const auto& e : roots_.entries()) {
        if (e.root.imag() < 0.0) continue;
        if (e.root.imag() == 0.0) {
            RealPoleBlock blk;
            blk.r = e.root.real();
            blk.l = e.multiplicity;
            blk.A.assign(e.multiplicity, 0.0);
            for (const auto& t : pfd_.terms)
                if (std::abs(t.pole - e.root) <= 1e-12 * (1.0 + std::abs(e.root)))
                    blk.A[t.order - 1] = t.A.real();
            realBlocks_.push_back(std::move(blk));
        } else {
            PairBlock blk;
            blk.x = e.root.real();
            blk.y = e.root.imag();
            blk.m = e.multiplicity;
            blk.mag.assign(e.multiplicity, 0.0);
            blk.phase.assign(e.multiplicity, 0.0);
            for (const auto& t : pfd_.terms)
                if (std::abs(t.pole - e.root) <= 1e-12 * (1.0 + std::abs(e.root))) {
                    blk.mag[t.order - 1] = 2.0 * std::abs(t.A);
                    blk.phase[t.order - 1] = std::arg(t.A);
                }
            pairBlocks_.push_back(std::move(blk));
        }
    }
}

double WeightFunction::evalAtX(double x) const {
    double acc = 0.0;
    for (const auto& b : realBlocks_) {
        double poly = 0.0, xp = 1.0;
        for (int j = 1; j <= b.l; ++j) {
            poly += b.A[j - 1] * xp / factorial(j - 1);
            xp *= x;
        }
        acc += poly * std::exp((b.r + 1.0) * x);
    }
    for (const auto& b : pairBlocks_) {
        double poly = 0.0, xp = 1.0;
        for (int j = 1; j <= b.m; ++j) {
            poly += b.mag[j - 1] * xp * std::cos(b.phase[j - 1] + b.y * x) / factorial(j - 1);
            xp *= x;
        }
        acc += poly * std::exp((b.x + 1.0) * x);
    }
    return acc;
}

double WeightFunction::operator()(double t) const {
    if (!(t > 0.0) || t > 1.0) throw DomainError("weight defined on (0,1]");
    return evalAtX(std::log(1.0 / t));
}

Complex WeightFunction::evalViaPfd(double t) const {
    if (!(t > 0.0) || t > 1.0) throw DomainError("weight defined on (0,1]");
    const double x = std::log(1.0 / t);
    Complex acc = 0.0;
    for (const auto& term : pfd_.terms) {
        // A * (log(1/t))^{j-1}/(j-1)! * t^{-pole-1}
        Complex tpow = std::exp((term.pole + 1.0) * x);
        acc += term.A * std::pow(x, term.order - 1) / factorial(term.order - 1) * tpow;
    }
    return acc;
}

double WeightFunction::envelope(double x, double damping) const {
    // keeping the damping inside each exponent avoids inf * 0 when a block
    // grows past double range but the damped product is tame
    double acc = 0.0;
    for (const auto& b : realBlocks_) {
        double poly = 0.0, xp = 1.0;
        for (int j = 1; j <= b.l; ++j) {
            poly += std::fabs(b.A[j - 1]) * xp / factorial(j - 1);
            xp *= x;
        }
        acc += poly * std::exp((b.r + 1.0 - damping) * x);
    }
    for (const auto& b : pairBlocks_) {
        double poly = 0.0, xp = 1.0;
        for (int j = 1; j <= b.m; ++j) {
            poly += b.mag[j - 1] * xp / factorial(j - 1);
            xp *= x;
        }
        acc += poly * std::exp((b.x + 1.0 - damping) * x);
    }
    return acc;
}

MomentReport WeightFunction::moment(long long n) const {
    MomentReport rep;
    rep.n = n;
    if (n < 0) throw DomainError("moment order must be nonnegative");
    const long double nl = static_cast<long double>(n);
    const long double pn = roots_.evalLong(nl);
    rep.claimed = static_cast<double>(q_.evalLong(nl) / pn);

    // integrate g(x) = w(e^{-x}) e^{-(n+1)x} over [0, X]; decay exponents
    // lambda_i = n - Re(alpha_i) > 0 give an analytic tail bound
    struct Term {
        double absA, lam;
        int jm1;
    };
    std::vector<Term> terms;
    double ymax = 0.0;
    for (const auto& t : pfd_.terms) {
        terms.push_back({std::abs(t.A), static_cast<double>(n) - t.pole.real(), t.order - 1});
        ymax = std::max(ymax, std::fabs(t.pole.imag()));
    }
    auto tailBound = [&](double X) {
        double acc = 0.0;
        for (const auto& t : terms) {
            // int_X^inf x^j e^{-lam x} dx = e^{-lam X} sum_{i<=j} (j!/i!) X^i / lam^{j-i+1}
            double lx = t.lam * X;
            if (lx > 745.0) continue;
            double sum = 0.0, coef = 1.0;  // j!/i! walking i = j down to 0
            double Xp = std::pow(X, t.jm1);
            for (int i = t.jm1; i >= 0; --i) {
                sum += coef * Xp / std::pow(t.lam, t.jm1 - i + 1);
                coef *= i > 0 ? static_cast<double>(i) : 1.0;
                Xp = (X > 0.0) ? Xp / X : 0.0;
            }
            acc += t.absA / factorial(t.jm1) * std::exp(-lx) * sum;
        }
        return acc;
    };
    double lamMin = 1e300;
    for (const auto& t : terms) lamMin = std::min(lamMin, t.lam);
    double X = std::max(10.0, 20.0 / lamMin);
    const double target = 1e-16 * std::max(std::fabs(rep.claimed), 1e-300);
    while (tailBound(X) > target && X < 1e4) X *= 1.4;

    auto g = [&](double x) { return evalAtX(x) * std::exp(-(static_cast<double>(n) + 1.0) * x); };
    AdaptiveOptions opt;
    opt.relTol = 1e-12;
    // evaluation noise scales with the envelope, not with |w|: the block sum
    // cancels structurally near t = 1, so a |w|-based floor over-refines
    opt.noiseFloor = [&](double mid, double h) {
        return 25.0 * std::numeric_limits<double>::epsilon() *
               envelope(mid, static_cast<double>(n) + 1.0) * h;
    };
    double h0 = std::min(2.0, ymax > 0.0 ? M_PI / (2.0 * ymax) : 2.0);
    for (double p = h0; p < X; p += h0) {
        opt.breakpoints.push_back(p);
        if (opt.breakpoints.size() > 4000) break;
    }
    rep.integrated = adaptive_integrate(g, 0.0, X, opt);
    rep.relError = std::fabs(rep.integrated - rep.claimed) / std::max(std::fabs(rep.claimed), 1e-300);
    return rep;
}

double WeightFunction::scanWindow() const {
    double yMin = 0.0;
    for (const auto& b : pairBlocks_) yMin = (yMin == 0.0) ? b.y : std::min(yMin, b.y);
    double X = (yMin > 0.0) ? std::max(20.0, 6.0 * 2.0 * M_PI / yMin) : 20.0;
    // keep the envelope finite in double precision when a block grows
    double growth = 0.0;
    for (const auto& b : realBlocks_) growth = std::max(growth, b.r + 1.0);
    for (const auto& b : pairBlocks_) growth = std::max(growth, b.x + 1.0);
    if (growth > 1e-12) {
        double sumA = 1.0;
        for (const auto& b : realBlocks_)
            for (double a : b.A) sumA += std::fabs(a);
        for (const auto& b : pairBlocks_)
            for (double m : b.mag) sumA += m;
        // 660 leaves headroom for the (log 1/t)^{j-1} factors of repeated poles
        X = std::min(X, (660.0 - std::log(sumA)) / growth);
    }
    return std::max(X, 1.0);
}

SignCertificate WeightFunction::sign_scan(int gridSize, const std::vector<double>& candidateTs) const {
    if (gridSize < 1000) throw DomainError("scan grid must have at least 1000 points");
    const double X = scanWindow();
    std::vector<double> xs;
    xs.reserve(gridSize + candidateTs.size() + 32);
    xs.push_back(0.0);  // t = 1
    const int nLin = std::max(gridSize / 5, 50);
    const double xSplit = std::min(2.0, X);
    for (int i = 0; i < nLin; ++i)
        xs.push_back(1e-6 + (xSplit - 1e-6) * static_cast<double>(i) / (nLin - 1));
    const int nLog = std::max(gridSize - nLin, 50);
    if (X > xSplit) {
        const double l0 = std::log(xSplit), l1 = std::log(X);
        for (int i = 1; i <= nLog; ++i)
            xs.push_back(std::exp(l0 + (l1 - l0) * static_cast<double>(i) / nLog));
    }
    for (double t : candidateTs) {
        if (!(t > 0.0) || t > 1.0) throw DomainError("candidate t outside (0,1]");
        xs.push_back(std::log(1.0 / t));
    }
    // trough family of the slowest-decaying pair: phase theta + y x at odd
    // multiples of pi, where theta is the top-order coefficient phase
    if (!pairBlocks_.empty()) {
        const PairBlock* dom = &pairBlocks_[0];
        for (const auto& b : pairBlocks_)
            if (b.x > dom->x) dom = &b;
        const double theta = dom->phase[dom->m - 1];
        for (int k = 0; k < 24; ++k) {
            double xk = ((2.0 * k + 1.0) * M_PI - theta) / dom->y;
            if (xk > 0.0 && xk <= X) xs.push_back(xk);
        }
    }
    // drop points where the block envelope overflows double range: a clamped
    // value there could not be reproduced by direct re-evaluation
    std::vector<double> kept;
    kept.reserve(xs.size());
    for (double x : xs)
        if (x == 0.0 || envelope(x) < 1e290) kept.push_back(x);
    xs.swap(kept);

    std::vector<double> vals(xs.size());
    parallel_fill(
        xs.size(),
        [&](std::size_t i) {
            double v = evalAtX(xs[i]);
            if (std::isnan(v)) return 0.0;
            return std::clamp(v, -1e300, 1e300);
        },
        vals);

    SignCertificate cert;
    cert.gridSize = static_cast<std::int64_t>(xs.size());
    std::size_t argmin = 0;
    double maxAbs = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        maxAbs = std::max(maxAbs, std::fabs(vals[i]));
        // smaller value wins; ties resolved toward smaller t (larger x)
        if (vals[i] < vals[argmin] || (vals[i] == vals[argmin] && xs[i] > xs[argmin])) argmin = i;
    }
    cert.minValue = vals[argmin];
    cert.minLocation = std::exp(-xs[argmin]);
    cert.maxAbsValue = maxAbs;
    const double absTol = 1e-11 * (1.0 + maxAbs);
    if (cert.minValue < -absTol) {
        cert.kind = CertKind::NegativityWitness;
        cert.witnessT = cert.minLocation;
        cert.witnessValue = cert.minValue;
    } else {
        cert.kind = CertKind::PositivityMargin;
    }
    return cert;
}

WeightFunction WeightFunction::shift_rescale(double c, double d) const {
    if (!(d >= 1.0)) throw DomainError("rescale factor must be >= 1");
    for (const auto& e : roots_.entries())
        if (!(e.root.real() + c < 0.0))
            throw UnstableShift("shifted pole leaves the open left half-plane");
    // table transform: pole -> d*(pole + c), coefficient at order j -> d^j A;
    // the shift alone multiplies w by t^{-c} identically
    WeightFunction out;
    out.q_ = q_.shifted(c).argScaled(d);
    std::vector<RootEntry> entries;
    for (const auto& e : roots_.entries()) entries.push_back({d * (e.root + c), e.multiplicity});
    out.roots_ = RootMultiset(entries, roots_.leadingCoeff() / std::pow(d, roots_.degree()));
    out.pfd_.sourceDegreeP = pfd_.sourceDegreeP;
    out.pfd_.sourceDegreeQ = pfd_.sourceDegreeQ;
    for (const auto& t : pfd_.terms)
        out.pfd_.terms.push_back({d * (t.pole + c), t.order, std::pow(d, t.order) * t.A});
    out.buildRealForm();
    return out;
}

} // namespace momentlab
