#include "momentlab/kernel.hpp"

#include "momentlab/errors.hpp"

#include <cmath>
#include <vector>

namespace momentlab {

long double schur_product_with_szego(const KernelCoefficients& k, long long n) {
    if (n < 0) throw DomainError("schur product index must be nonnegative");
    // Kahan summation: the p_c coefficients span ~14 digits by n = 40
    long double sum = 0.0L, comp = 0.0L;
    for (long long j = 0; j <= n; ++j) {
        long double aj = k.a(j);
        if (!std::isfinite((double)aj) || aj <= 0.0L)
            throw DomainError("kernel coefficient must be positive and finite");
        long double y = aj - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Verdict subnormality_test(const KernelCoefficients& k, const Budget& budget) {
    std::vector<long double> probe(41);
    bool constant = true;
    for (int n = 0; n <= 40; ++n) {
        probe[n] = k.a(n);
        if (!std::isfinite((double)probe[n]) || probe[n] <= 0.0L)
            throw DomainError("kernel coefficient must be positive and finite");
        if (probe[n] != probe[0]) constant = false;
    }
    Verdict v;
    if (constant) {
        // 1/a_n constant: the measure a_0^{-1} * (point mass at 1)
        v.decision = Decision::Moment;
        v.rule = "constant-sequence";
        v.fdAuditPassed = true;
        v.fdAuditOrder = budget.maxOrder;
        return v;
    }
    // no rational representation supplied: the finite-difference test can
    // refute but never certify
    FdResult fd = hausdorff_finite_test([&k](long long n) { return 1.0L / k.a(n); },
                                        budget.maxOrder, budget.maxOffset);
    if (!fd.pass) {
        v.decision = Decision::NotMoment;
        v.rule = "finite-difference";
        v.fdViolation = fd.violation;
        return v;
    }
    v.decision = Decision::Undetermined;
    v.rule = "finite-difference-audit-passed";
    v.fdAuditPassed = true;
    v.fdAuditOrder = budget.maxOrder;
    return v;
}

Verdict subnormality_test(const RealPolynomial& q, const RealPolynomial& p,
                          const Budget& budget) {
    return decide(q, p, budget);
}

Verdict misra_counterexample(double c, const Budget& budget) {
    if (!(c > 0.0)) throw DomainError("partial-sum kernel requires c > 0");
    RealPolynomial pc = faulhaber_partial_sum(c, 6);
    return decide(RealPolynomial({1.0}), pc, budget);
}

std::pair<double, double> counterexample_neighborhood(double lo, double hi, double tol,
                                                      const Budget& budget) {
    if (!(lo > 0.0 && lo < 1.0 && hi > 1.0))
        throw DomainError("bracket must satisfy 0 < lo < 1 < hi");
    if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
    auto refuted = [&budget](double c) {
        return misra_counterexample(c, budget).decision == Decision::NotMoment;
    };
    if (!refuted(1.0))
        throw PreconditionViolated("no counterexample at c = 1");

    double lower = lo;
    if (!refuted(lo)) {
        double a = lo, b = 1.0; // a keeps the verdict flip, b stays refuted
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            (refuted(mid) ? b : a) = mid;
        }
        lower = 0.5 * (a + b);
    }
    double upper = hi;
    if (!refuted(hi)) {
        double a = 1.0, b = hi;
        while (b - a > tol) {
            double mid = 0.5 * (a + b);
            (refuted(mid) ? a : b) = mid;
        }
        upper = 0.5 * (a + b);
    }
    return {lower, upper};
}

} // namespace momentlab
