#include "momentlab/classify.hpp"

#include "momentlab/divdiff.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/pfd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momentlab {

const char* to_string(Decision d) {
    switch (d) {
        case Decision::Moment: return "Moment";
        case Decision::NotMoment: return "NotMoment";
        default: return "Undetermined";
    }
}

namespace {

long double binomialDifference(const SequenceFn& x, int m, long long n, long double& cancel) {
    // compensated alternating binomial sum; cancel reports sum|terms| / |result|
    long double acc = 0.0L, comp = 0.0L, absSum = 0.0L;
    long double coef = 1.0L;
    for (int j = 0; j <= m; ++j) {
        long double term = ((j % 2) ? -coef : coef) * x(n + j);
        absSum += std::fabs(term);
        long double t = acc + term;
        if (std::fabs(acc) >= std::fabs(term))
            comp += (acc - t) + term;
        else
            comp += (term - t) + acc;
        acc = t;
        coef = coef * static_cast<long double>(m - j) / static_cast<long double>(j + 1);
    }
    long double res = acc + comp;
    cancel = absSum / std::max(std::fabs(res), 1e-300L);
    return res;
}

} // namespace

FdResult hausdorff_finite_test(const SequenceFn& x, int maxOrder, long long maxOffset) {
    if (maxOrder < 0 || maxOffset < 0) throw DomainError("nonnegative test sizes required");
    FdResult res;
    res.maxOrder = maxOrder;
    res.maxOffset = maxOffset;
    const long long len = maxOffset + maxOrder + 1;
    std::vector<long double> base(len), row(len);
    for (long long i = 0; i < len; ++i) {
        base[i] = x(i);
        if (!std::isfinite(static_cast<double>(base[i])))
            throw DomainError("sequence value not finite");
        row[i] = base[i];
    }
    for (int m = 0; m <= maxOrder; ++m) {
        if (m > 0)
            for (long long i = 0; i + m < len; ++i) row[i] = row[i] - row[i + 1];
        for (long long n = 0; n <= maxOffset && n + m < len; ++n) {
            const long double tol = -1e-10L * std::fabs(base[n]);
            if (row[n] >= tol) continue;
            long double value = row[n];
            if (m > 0) {
                // candidate violation: re-verify against the direct
                // compensated binomial sum before reporting it
                if (m > 60) throw Overflow("binomial verification unavailable beyond order 60");
                long double cancel = 0.0L;
                value = binomialDifference(x, m, n, cancel);
                if (value >= tol) continue;
            }
            res.pass = false;
            res.violation = FdViolation{m, n, static_cast<double>(value), static_cast<double>(tol)};
            return res;
        }
    }
    return res;
}

NecessaryOutcome necessary_condition(const RootMultiset& roots) {
    auto pairs = roots.conjugatePairs();
    if (pairs.empty()) return NecessaryOutcome::Inconclusive;
    std::size_t top = 0;
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i].x > pairs[top].x) top = i;
    const double x1 = pairs[top].x;
    const double tie = 1e-12 * (1.0 + std::fabs(x1));
    for (const auto& e : roots.realRoots())
        if (e.root.real() >= x1 - tie) return NecessaryOutcome::Inconclusive;
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (i != top && pairs[i].x >= x1 - tie) return NecessaryOutcome::Inconclusive;
    return NecessaryOutcome::Violated;
}

RationalQOutcome rational_necessary_q(const RealPolynomial& q, const RootMultiset& roots) {
    if (!roots.allReal()) throw PreconditionViolated("rule requires all-real poles");
    if (!is_stable(roots)) throw PreconditionViolated("rule requires negative poles");
    if (q.isZero() || q.degree() >= roots.degree())
        throw DegreeViolation("numerator degree must be below denominator degree");
    double a1 = -std::numeric_limits<double>::infinity();
    for (const auto& e : roots.entries()) a1 = std::max(a1, e.root.real());
    const double qa1 = q(a1);
    if (qa1 <= 0.0) return RationalQOutcome::Violated;
    if (q.degree() == 1 && q.coeffs()[1] == 1.0) return RationalQOutcome::SufficientDeg1;
    return RationalQOutcome::Inconclusive;
}

double g_function(double u, double x) {
    if (!(u > 1.0)) throw DomainError("ratio must exceed 1");
    if (x < 0.0) throw DomainError("argument must be nonnegative");
    return u * u - 1.0 - u * u * std::cos(x) + std::cos(u * x);
}

namespace {

SequenceFn rationalSequence(const RealPolynomial& q, const RootMultiset& roots) {
    return [q, roots](long long n) -> long double {
        return q.evalLong(static_cast<long double>(n)) / roots.evalLong(static_cast<long double>(n));
    };
}

// finite-difference audit attached to Moment verdicts
void auditMoment(Verdict& v, const RealPolynomial& q, const RootMultiset& roots,
                 const Budget& budget, bool fromExactRule) {
    FdResult fd = hausdorff_finite_test(rationalSequence(q, roots), budget.maxOrder, budget.maxOffset);
    v.fdAuditPassed = fd.pass;
    v.fdAuditOrder = budget.maxOrder;
    if (!fd.pass) {
        if (fromExactRule)
            throw RuleAuditError("finite differences contradict rule " + v.rule);
        v.decision = Decision::NotMoment;
        v.rule = "finite-difference";
        v.fdViolation = fd.violation;
    }
}

std::vector<double> troughCandidates(const WeightFunction& w) {
    // extend the dominant-pair trough family further out than the default
    // scan, for weights whose first negative dip sits beyond the window
    std::vector<double> ts;
    const PairBlock* dom = nullptr;
    for (const auto& b : w.pairBlocks())
        if (!dom || b.x > dom->x) dom = &b;
    if (!dom) return ts;
    const double theta = dom->phase[dom->m - 1];
    for (int k = 0; k < 400; ++k) {
        double xk = ((2.0 * k + 1.0) * M_PI - theta) / dom->y;
        if (xk <= 0.0) continue;
        if (xk > 700.0) break;
        ts.push_back(std::exp(-xk));
    }
    return ts;
}

Verdict scanFallback(const RealPolynomial& q, const RootMultiset& roots, const Budget& budget) {
    WeightFunction w(q, roots);
    SignCertificate cert = w.sign_scan(budget.gridSize, troughCandidates(w));
    Verdict v;
    v.sign = cert;
    v.scanMargin = cert.minValue / (1.0 + cert.maxAbsValue);
    const double scale = 1.0 + cert.maxAbsValue;
    if (cert.minValue < -1e-9 * scale) {
        v.decision = Decision::NotMoment;
        v.rule = "sign-scan";
        return v;
    }
    if (cert.minValue < -1e-11 * scale) {
        // inside numerical noise: refuse to certify either way
        v.decision = Decision::Undetermined;
        v.rule = "scan-margin-ambiguous";
        return v;
    }
    v.decision = Decision::Moment;
    v.rule = "scan-positivity";
    auditMoment(v, q, roots, budget, false);
    return v;
}

// confirm a rule-based NotMoment with a reproducible negativity witness
Verdict confirmNegative(const std::string& rule, const RealPolynomial& q,
                        const RootMultiset& roots, const Budget& budget,
                        const std::vector<double>& extraTs = {}) {
    WeightFunction w(q, roots);
    std::vector<double> cands = troughCandidates(w);
    cands.insert(cands.end(), extraTs.begin(), extraTs.end());
    SignCertificate cert = w.sign_scan(budget.gridSize, cands);
    Verdict v;
    v.sign = cert;
    v.scanMargin = cert.minValue / (1.0 + cert.maxAbsValue);
    if (cert.kind == CertKind::NegativityWitness) {
        v.decision = Decision::NotMoment;
        v.rule = rule;
    } else {
        // the rule is sound, but no representable witness was found; report
        // the margin rather than an unverifiable certificate
        v.decision = Decision::Undetermined;
        v.rule = rule + "-unconfirmed";
    }
    return v;
}

bool qIsPositiveConstant(const RealPolynomial& q) {
    return q.isConstant() && q.coeffs()[0] > 0.0;
}

} // namespace

Verdict classify_degree3(double r, Complex alpha) {
    if (!(r < 0.0) || !(alpha.real() < 0.0) || alpha.imag() == 0.0)
        throw PreconditionViolated("need a negative real root and a non-real stable pair");
    RootMultiset roots({{Complex(r, 0.0), 1},
                        {Complex(alpha.real(), std::fabs(alpha.imag())), 1},
                        {Complex(alpha.real(), -std::fabs(alpha.imag())), 1}},
                       1.0);
    const RealPolynomial one = RealPolynomial::constant(1.0);
    const double tie = 1e-12 * (1.0 + std::fabs(r));
    Budget budget;
    Verdict v;
    if (alpha.real() <= r + tie) {
        WeightFunction w(one, roots);
        v.decision = Decision::Moment;
        v.rule = "degree3";
        v.boundaryFlag = std::fabs(alpha.real() - r) <= tie;
        v.sign = w.sign_scan(budget.gridSize);
        v.scanMargin = v.sign->minValue / (1.0 + v.sign->maxAbsValue);
        auditMoment(v, one, roots, budget, true);
    } else {
        v = confirmNegative("degree3", one, roots, budget);
        if (v.decision == Decision::Undetermined)
            throw RuleAuditError("no negativity witness for a dominated degree-3 pair");
    }
    return v;
}

Verdict classify_degree4(const RootMultiset& roots) {
    if (roots.degree() != 4) throw PreconditionViolated("degree-4 rule");
    if (!is_stable(roots)) throw PreconditionViolated("rule requires a stable polynomial");
    auto pairs = roots.conjugatePairs();
    if (pairs.empty()) throw PreconditionViolated("rule requires a conjugate pair");
    const RealPolynomial one = RealPolynomial::constant(1.0);
    Budget budget;
    bool moment = false, boundary = false;
    for (const auto& pr : pairs) {
        const double tie = 1e-12 * (1.0 + std::fabs(pr.x));
        bool covered = false;
        for (const auto& e : roots.realRoots())
            if (pr.x <= e.root.real() + tie) {
                covered = true;
                if (std::fabs(pr.x - e.root.real()) <= tie) boundary = true;
            }
        moment = covered;
        if (!covered) break;
    }
    if (pairs.size() == 2 || (pairs.size() == 1 && pairs[0].multiplicity == 2)) moment = false;
    Verdict v;
    if (moment) {
        WeightFunction w(one, roots);
        v.decision = Decision::Moment;
        v.rule = "degree4";
        v.boundaryFlag = boundary;
        v.sign = w.sign_scan(budget.gridSize);
        v.scanMargin = v.sign->minValue / (1.0 + v.sign->maxAbsValue);
        if (v.sign->kind == CertKind::NegativityWitness)
            throw RuleAuditError("scan found a witness against the degree-4 Moment rule");
        auditMoment(v, one, roots, budget, true);
    } else {
        v = confirmNegative("degree4", one, roots, budget);
        if (v.decision == Decision::Undetermined)
            throw RuleAuditError("no negativity witness for a degree-4 NotMoment case");
        v.boundaryFlag = boundary;
    }
    return v;
}

Verdict classify_degree5_vertical(double r, double y1, double y2) {
    if (!(r < 0.0) || !(y1 > 0.0) || !(y2 > 0.0))
        throw PreconditionViolated("need r < 0 and positive pair offsets");
    if (y2 < y1) std::swap(y1, y2);
    const RealPolynomial one = RealPolynomial::constant(1.0);
    Budget budget;
    const double tieY = 1e-9 * (1.0 + y1);
    if (std::fabs(y2 - y1) <= tieY) {
        // equal pairs: the trough family t_k = exp(-(4k+1)pi/(2 y1))
        RootMultiset eq({{Complex(r, 0.0), 1}, {Complex(r, y1), 2}, {Complex(r, -y1), 2}}, 1.0);
        std::vector<double> ts;
        for (int k = 0; k < 40; ++k) {
            double xk = (4.0 * k + 1.0) * M_PI / (2.0 * y1);
            if (xk > 700.0) break;
            ts.push_back(std::exp(-xk));
        }
        Verdict v = confirmNegative("degree5-vertical", one, eq, budget, ts);
        if (v.decision == Decision::Undetermined)
            throw RuleAuditError("no witness for the equal-pair vertical case");
        return v;
    }
    RootMultiset roots({{Complex(r, 0.0), 1},
                        {Complex(r, y1), 1},
                        {Complex(r, -y1), 1},
                        {Complex(r, y2), 1},
                        {Complex(r, -y2), 1}},
                       1.0);
    const double u = y2 / y1;
    const double uRound = std::round(u);
    Verdict v;
    if (std::fabs(u - uRound) <= 1e-9 * u && uRound >= 2.0) {
        WeightFunction w(one, roots);
        v.decision = Decision::Moment;
        v.rule = "degree5-vertical";
        v.sign = w.sign_scan(budget.gridSize);
        v.scanMargin = v.sign->minValue / (1.0 + v.sign->maxAbsValue);
        auditMoment(v, one, roots, budget, true);
        return v;
    }
    v = confirmNegative("degree5-vertical", one, roots, budget);
    v.gAt2Pi = g_function(u, 2.0 * M_PI);
    if (v.decision == Decision::Undetermined)
        throw RuleAuditError("no witness for a non-integer vertical ratio");
    return v;
}

Verdict decide(const RealPolynomial& q, const RealPolynomial& p, const Budget& budget) {
    return decide(q, find_roots(p), budget);
}

Verdict decide(const RealPolynomial& q, const RootMultiset& roots, const Budget& budget) {
    if (q.isZero()) {
        Verdict v;
        v.decision = Decision::Moment;
        v.rule = "zero-sequence";
        return v;
    }
    if (!is_stable(roots)) {
        // poles outside the open left half-plane never give moment sequences;
        // attach a finite-difference certificate when the sequence is finite
        Verdict v;
        v.decision = Decision::NotMoment;
        v.rule = "stability";
        try {
            FdResult fd =
                hausdorff_finite_test(rationalSequence(q, roots), budget.maxOrder, budget.maxOffset);
            if (!fd.pass) v.fdViolation = fd.violation;
        } catch (const Error&) {
        }
        return v;
    }
    if (q.degree() >= roots.degree())
        throw DegreeViolation("numerator degree must be below denominator degree");
    {
        double qScale = 1.0;
        for (const auto& e : roots.entries()) qScale = std::max(qScale, std::abs(q(e.root)));
        for (const auto& e : roots.entries())
            if (std::abs(q(e.root)) <= 1e-10 * qScale)
                throw CommonZero("numerator vanishes at a pole");
    }
    const bool qConst = q.isConstant();
    if (qConst && q.coeffs()[0] < 0.0) {
        Verdict v;
        v.decision = Decision::NotMoment;
        v.rule = "negative-sequence";
        long double x0 = rationalSequence(q, roots)(0);
        v.fdViolation = FdViolation{0, 0, static_cast<double>(x0), 0.0};
        return v;
    }

    if (roots.allReal()) {
        if (qIsPositiveConstant(q)) {
            // a product of simple building blocks, each a moment weight
            Verdict v;
            v.decision = Decision::Moment;
            v.rule = "real-poles-product";
            WeightFunction w(q, roots);
            v.sign = w.sign_scan(budget.gridSize);
            v.scanMargin = v.sign->minValue / (1.0 + v.sign->maxAbsValue);
            auditMoment(v, q, roots, budget, true);
            return v;
        }
        bool allSimple = true;
        for (const auto& e : roots.entries()) allSimple = allSimple && e.multiplicity == 1;
        if (allSimple) {
            RationalQOutcome rq = rational_necessary_q(q, roots);
            if (rq == RationalQOutcome::Violated) {
                std::vector<double> far;
                for (int j = 1; j <= 40; ++j) far.push_back(std::exp(-5.0 * j));
                Verdict v = confirmNegative("q-negative-at-dominant-pole", q, roots, budget, far);
                return v;
            }
            if (rq == RationalQOutcome::SufficientDeg1) {
                Verdict v;
                v.decision = Decision::Moment;
                v.rule = "monic-linear-numerator";
                auditMoment(v, q, roots, budget, true);
                return v;
            }
            SufficientConditionResult sc = sufficient_condition(q, roots);
            if (sc.allNonnegative) {
                Verdict v;
                v.decision = Decision::Moment;
                v.rule = "divided-difference-positivity";
                v.divdiffValues = sc.values;
                auditMoment(v, q, roots, budget, true);
                return v;
            }
        }
        return scanFallback(q, roots, budget);
    }

    if (qConst) {
        // the shape rules certify with q == 1; a positive constant only
        // rescales the weight, so rescale the certificate to match q
        const double c0 = q.coeffs()[0];
        auto rescaled = [c0](Verdict v) {
            if (c0 != 1.0 && v.sign) {
                v.sign->witnessValue *= c0;
                v.sign->minValue *= c0;
                v.sign->maxAbsValue *= c0;
                v.scanMargin = v.sign->minValue / (1.0 + v.sign->maxAbsValue);
            }
            return v;
        };
        auto pairs = roots.conjugatePairs();
        auto reals = roots.realRoots();
        if (roots.degree() == 3 && pairs.size() == 1 && reals.size() == 1)
            return rescaled(
                classify_degree3(reals[0].root.real(), Complex(pairs[0].x, pairs[0].y)));
        if (roots.degree() == 4) return rescaled(classify_degree4(roots));
        if (roots.degree() == 5 && pairs.size() == 2 && reals.size() == 1 &&
            reals[0].multiplicity == 1) {
            const double r = reals[0].root.real();
            const double tie = 1e-12 * (1.0 + std::fabs(r));
            if (std::fabs(pairs[0].x - r) <= tie && std::fabs(pairs[1].x - r) <= tie &&
                pairs[0].multiplicity == 1 && pairs[1].multiplicity == 1)
                return rescaled(classify_degree5_vertical(r, pairs[0].y, pairs[1].y));
        }
    }
    if (necessary_condition(roots) == NecessaryOutcome::Violated)
        return confirmNegative("dominant-pair", q, roots, budget);
    return scanFallback(q, roots, budget);
}

} // namespace momentlab
