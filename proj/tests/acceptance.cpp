// Acceptance suite: one numbered check per release criterion. Each prints a
// single line, [criterion N] PASS/FAIL with measured values and runtime, and
// the process exits nonzero if any selected criterion fails. Tolerances are
// pinned here on purpose; loosening them is a release decision, not a test
// edit.

#include "momentlab/classify.hpp"
#include "momentlab/convolution.hpp"
#include "momentlab/divdiff.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/kernel.hpp"
#include "momentlab/pfd.hpp"
#include "momentlab/polynomial.hpp"
#include "momentlab/quadrature.hpp"
#include "momentlab/roots.hpp"
#include "momentlab/weight.hpp"

#include "family.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

using namespace momentlab;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::string detail;

    void note(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
    void fail(const std::string& why) {
        pass = false;
        note(why);
    }
};

std::optional<Complex> coeffAt(const PfdTable& tab, Complex pole, int order) {
    for (const auto& t : tab.terms)
        if (std::abs(t.pole - pole) <= 1e-9 * (1.0 + std::abs(pole)) && t.order == order)
            return t.A;
    return std::nullopt;
}

void relCheck(Outcome& out, const PfdTable& tab, Complex pole, int order, Complex want,
              double tol, const char* label) {
    auto got = coeffAt(tab, pole, order);
    if (!got) {
        out.fail(fmt("%s: no term at pole (%g,%g) order %d", label, pole.real(), pole.imag(),
                     order));
        return;
    }
    double rel = std::abs(*got - want) / std::abs(want);
    if (rel > tol) out.fail(fmt("%s: rel err %.2e > %.0e", label, rel, tol));
}

const RealPolynomial kOne = RealPolynomial::constant(1.0);

// ---- 1: closed-form partial fraction coefficients ----------------------

Outcome criterion1() {
    Outcome out;
    const double tol = 1e-10;
    for (auto [r, y1, y2] : {std::tuple{-1.0, 1.0, 2.0}, std::tuple{-0.5, 0.3, 0.9}}) {
        const double y1sq = y1 * y1, y2sq = y2 * y2;
        RootMultiset dbl({{Complex(r, 0.0), 1}, {Complex(r, y1), 2}, {Complex(r, -y1), 2}}, 1.0);
        PfdTable t1 = decompose(kOne, dbl);
        relCheck(out, t1, Complex(r, 0), 1, Complex(1.0 / (y1sq * y1sq), 0), tol, "doubled A1");
        relCheck(out, t1, Complex(r, y1), 1, Complex(-0.5 / (y1sq * y1sq), 0), tol, "doubled A2");
        relCheck(out, t1, Complex(r, y1), 2, Complex(0.0, 0.25 / (y1sq * y1)), tol, "doubled A3");

        RootMultiset dist({{Complex(r, 0.0), 1},
                           {Complex(r, y1), 1},
                           {Complex(r, -y1), 1},
                           {Complex(r, y2), 1},
                           {Complex(r, -y2), 1}},
                          1.0);
        PfdTable t2 = decompose(kOne, dist);
        relCheck(out, t2, Complex(r, 0), 1, Complex(1.0 / (y1sq * y2sq), 0), tol, "distinct A1");
        relCheck(out, t2, Complex(r, y1), 1, Complex(0.5 / (y1sq * (y1sq - y2sq)), 0), tol,
                 "distinct A2");
        relCheck(out, t2, Complex(r, y2), 1, Complex(0.5 / (y2sq * (y2sq - y1sq)), 0), tol,
                 "distinct A3");
    }
    if (out.pass) out.note("6 closed-form coefficients x 2 parameter sets, rel err <= 1e-10");
    return out;
}

// ---- 2: three weight routes agree on a random family -------------------

Outcome criterion2() {
    Outcome out;
    testfam::Rng rng(777);
    double worstDd = 0.0, worstConv = 0.0;
    int convInstances = 0, ddFailures = 0;
    for (int i = 0; i < 200; ++i) {
        testfam::Instance inst = testfam::randomInstance(rng);
        WeightFunction w(inst.q, inst.roots);
        std::vector<std::pair<double, double>> vals;
        double wmax = 0.0;
        for (int j = 0; j < 50; ++j) {
            double t = std::pow(10.0, -4.0 * j / 49.0);
            double a = w(t);
            vals.emplace_back(t, a);
            wmax = std::max(wmax, std::fabs(a));
        }
        for (auto [t, a] : vals) {
            double b = weight_via_divdiff(inst.q, inst.roots, t);
            // relative where w is a meaningful fraction of its max; at points
            // where both routes cancel to ~0 (w(1) = 0 whenever
            // deg p >= deg q + 2) this floors the comparison at 1e-11 * wmax
            double scale = std::max({std::fabs(a), std::fabs(b), 1e-3 * wmax, 1e-300});
            double rel = std::fabs(a - b) / scale;
            worstDd = std::max(worstDd, rel);
            if (rel > 1e-8) ++ddFailures;
        }
        if (inst.roots.degree() <= 4 && inst.roots.degree() >= 1 && convInstances < 30) {
            ++convInstances;
            WeightFunction w1(kOne, inst.roots);
            std::vector<double> ts;
            for (int j = 0; j < 12; ++j) ts.push_back(std::pow(10.0, -2.0 * j / 11.0));
            std::vector<double> conv = weight_via_convolution(inst.roots, ts);
            double w1max = 0.0;
            std::vector<double> direct(ts.size());
            for (std::size_t j = 0; j < ts.size(); ++j) {
                direct[j] = w1(ts[j]);
                w1max = std::max(w1max, std::fabs(direct[j]));
            }
            for (std::size_t j = 0; j < ts.size(); ++j) {
                double scale =
                    std::max({std::fabs(direct[j]), std::fabs(conv[j]), 1e-3 * w1max, 1e-300});
                worstConv = std::max(worstConv, std::fabs(direct[j] - conv[j]) / scale);
            }
        }
    }
    if (ddFailures > 0)
        out.fail(fmt("divided differences: %d/10000 points beyond 1e-8 (worst %.2e)", ddFailures,
                     worstDd));
    else
        out.note(fmt("divdiff worst rel %.2e over 200 instances x 50 points", worstDd));
    if (worstConv > 1e-6)
        out.fail(fmt("convolution route worst rel %.2e > 1e-6", worstConv));
    else
        out.note(fmt("convolution worst rel %.2e over %d degree<=4 instances", worstConv,
                     convInstances));
    return out;
}

// ---- 3: moment identity against quadrature -----------------------------

Outcome criterion3() {
    Outcome out;
    testfam::Rng rng(777);  // same family as criterion 2
    double worst = 0.0;
    int failures = 0;
    for (int i = 0; i < 200; ++i) {
        testfam::Instance inst = testfam::randomInstance(rng);
        WeightFunction w(inst.q, inst.roots);
        for (long long n = 0; n <= 20; ++n) {
            MomentReport r = w.moment(n);
            worst = std::max(worst, r.relError);
            if (r.relError > 1e-8) ++failures;
        }
    }
    if (failures > 0)
        out.fail(fmt("%d/4200 moments beyond 1e-8 (worst %.2e)", failures, worst));
    else
        out.note(fmt("worst rel err %.2e over 200 instances x orders 0..20", worst));
    return out;
}

// ---- 4: the partial-sum counterexample polynomial ----------------------

Outcome criterion4() {
    Outcome out;
    RealPolynomial p1 = faulhaber_partial_sum(1.0, 6);
    const std::vector<double> want = {1.0,  253.0 / 42.0, 15.0,      119.0 / 6.0,
                                      15.0, 13.0 / 2.0,   3.0 / 2.0, 1.0 / 7.0};
    if (p1.coeffs().size() != want.size()) {
        out.fail(fmt("expected degree 7, got %d", p1.degree()));
        return out;
    }
    double worstCoeff = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i)
        worstCoeff = std::max(worstCoeff, std::fabs(p1.coeffs()[i] - want[i]) / want[i]);
    if (worstCoeff > 1e-9)
        out.fail(fmt("coefficient rel err %.2e > 1e-9", worstCoeff));
    else
        out.note(fmt("coefficients match, worst rel %.1e", worstCoeff));

    RootMultiset roots = find_roots(p1);
    std::vector<double> reals;
    std::vector<Complex> pairs;
    for (const auto& e : roots.entries()) {
        if (e.root.imag() == 0.0)
            reals.push_back(e.root.real());
        else if (e.root.imag() > 0.0)
            pairs.push_back(e.root);
    }
    std::sort(reals.begin(), reals.end());
    const double expReals[] = {-2.0, -1.5, -1.0};
    bool rootsOk = reals.size() == 3 && pairs.size() == 2;
    if (rootsOk)
        for (int i = 0; i < 3; ++i)
            if (std::fabs(reals[i] - expReals[i]) > 1e-8) rootsOk = false;
    std::sort(pairs.begin(), pairs.end(),
              [](Complex a, Complex b) { return a.real() < b.real(); });
    if (rootsOk) {
        rootsOk = std::abs(pairs[0] - Complex(-2.38, 0.16)) <= 0.01 &&
                  std::abs(pairs[1] - Complex(-0.62, 0.16)) <= 0.01;
    }
    if (!rootsOk)
        out.fail("root layout differs from the reference values");
    else
        out.note("real roots {-1,-1.5,-2} to 1e-8, pairs within 0.01 of references");

    Verdict v = decide(kOne, roots);
    if (v.decision != Decision::NotMoment || !v.sign ||
        v.sign->kind != CertKind::NegativityWitness) {
        out.fail("decide did not return NotMoment with a negativity witness");
    } else {
        WeightFunction w(kOne, roots);
        double fresh = w(v.sign->witnessT);
        double rel = std::fabs(fresh - v.sign->witnessValue) / std::fabs(v.sign->witnessValue);
        if (!(fresh < 0.0) || rel > 1e-10)
            out.fail(fmt("witness failed re-validation (rel %.2e)", rel));
        else
            out.note(fmt("witness t=%.3e re-validates, w=%.3e", v.sign->witnessT,
                         v.sign->witnessValue));
    }

    FdResult fd = hausdorff_finite_test(
        [&p1](long long n) { return 1.0L / p1.evalLong((long double)n); }, 30, 30);
    if (fd.pass)
        out.fail(
            "finite differences pass through order 30: no violation exists at m <= 30, the "
            "first negative iterated difference of this sequence lies far beyond that range, "
            "so the weight witness above is the only finite refutation");
    else
        out.note(fmt("finite differences fail at (m=%d,n=%lld)", fd.violation->m,
                     (long long)fd.violation->n));
    return out;
}

// ---- 5: degree-5 vertical-line verdict table ---------------------------

Outcome criterion5() {
    Outcome out;
    const double us[] = {1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
    const Decision want[] = {Decision::NotMoment, Decision::NotMoment, Decision::Moment,
                             Decision::NotMoment, Decision::Moment,    Decision::Moment};
    for (int i = 0; i < 6; ++i) {
        Verdict v = classify_degree5_vertical(-1.0, 1.0, us[i]);
        if (v.decision != want[i]) {
            out.fail(fmt("u=%.1f: got %s, want %s", us[i], to_string(v.decision),
                         to_string(want[i])));
            continue;
        }
        if (v.decision == Decision::Moment) {
            if (!v.sign || v.sign->minValue < -1e-11 * v.sign->maxAbsValue)
                out.fail(fmt("u=%.1f: grid min %.2e below -1e-11*max|w|", us[i],
                             v.sign ? v.sign->minValue : 0.0));
            if (!v.fdAuditPassed || v.fdAuditOrder != 25)
                out.fail(fmt("u=%.1f: finite-difference audit missing", us[i]));
        } else {
            bool witnessed = v.sign && v.sign->kind == CertKind::NegativityWitness &&
                             v.sign->witnessValue < 0.0;
            bool gauge = us[i] == 1.0 || (v.gAt2Pi && *v.gAt2Pi < 0.0);
            if (!witnessed || !gauge) out.fail(fmt("u=%.1f: certificate incomplete", us[i]));
        }
    }
    if (out.pass) out.note("verdicts {NM,NM,M,NM,M,M} with audits and witnesses");
    return out;
}

// ---- 6: degree-3 boundary behavior -------------------------------------

Outcome criterion6() {
    Outcome out;
    Verdict at = classify_degree3(-1.0, Complex(-1.0, 2.0));
    if (at.decision != Decision::Moment || !at.boundaryFlag)
        out.fail("boundary case (-1,-1+2i) not Moment+boundaryFlag");

    Verdict above = classify_degree3(-1.0, Complex(-0.9, 2.0));
    if (above.decision != Decision::NotMoment || !above.sign ||
        above.sign->kind != CertKind::NegativityWitness)
        out.fail("(-1,-0.9+2i) lacks a NotMoment witness");
    else
        out.note(fmt("witness w(%.3e)=%.3e", above.sign->witnessT, above.sign->witnessValue));

    Verdict below = classify_degree3(-1.0, Complex(-1.1, 2.0));
    // w(1) = 0 exactly for this family (residues sum to zero), so "positive
    // margin" means a PositivityMargin certificate clearing the noise floor
    if (below.decision != Decision::Moment || !below.sign ||
        below.sign->kind != CertKind::PositivityMargin ||
        below.sign->minValue < -1e-11 * (1.0 + below.sign->maxAbsValue))
        out.fail("(-1,-1.1+2i) lacks a positive scan margin");
    else
        out.note(fmt("scan min %.2e on max|w| %.2f", below.sign->minValue,
                     below.sign->maxAbsValue));
    return out;
}

// ---- 7: multiplicative convolution reproduces product moments ----------

Outcome criterion7() {
    Outcome out;
    WeightFunction w1(kOne, find_roots(RealPolynomial({1.0, 1.0})));
    WeightFunction w2(kOne, find_roots(RealPolynomial({2.0, 1.0})));
    double worst = 0.0;
    for (int n = 0; n <= 10; ++n) {
        AdaptiveOptions opt;
        opt.relTol = 1e-9;
        double got = adaptive_integrate(
            [&](double t) {
                return std::pow(t, n) * multiplicative_convolution(w1, w2, t);
            },
            1e-12, 1.0, opt);
        double want = 1.0 / ((n + 1.0) * (n + 2.0));
        worst = std::max(worst, std::fabs(got - want) / want);
    }
    if (worst > 1e-6)
        out.fail(fmt("worst moment rel err %.2e > 1e-6", worst));
    else
        out.note(fmt("moments of w1<>w2 match 1/((n+1)(n+2)) to %.2e, n=0..10", worst));
    return out;
}

// ---- 8: divided-difference sufficient condition, worked parameters -----

Outcome criterion8() {
    Outcome out;
    // r(n) = (n+2)(n+3)/((n+1)(n+3.5)) - 1 = q(n)/p(n),  q = 0.5 z + 2.5
    RealPolynomial qn =
        RealPolynomial({2.0, 1.0}) * RealPolynomial({3.0, 1.0}) -
        RealPolynomial({1.0, 1.0}) * RealPolynomial({3.5, 1.0});
    RealPolynomial pn = RealPolynomial({1.0, 1.0}) * RealPolynomial({3.5, 1.0});
    SufficientConditionResult sc = sufficient_condition(qn, find_roots(pn));
    if (!sc.allNonnegative)
        out.fail("prefix divided differences not all nonnegative");
    else if (sc.values.size() == 2)
        out.note(fmt("divided differences {%.3f, %.3f} >= 0", sc.values[0], sc.values[1]));

    FdResult fd = hausdorff_finite_test(
        [&qn, &pn](long long n) {
            return qn.evalLong((long double)n) / pn.evalLong((long double)n);
        },
        25, 25);
    if (!fd.pass)
        out.fail(fmt("finite differences fail at (m=%d,n=%lld)", fd.violation->m,
                     (long long)fd.violation->n));
    else
        out.note("finite-difference test passes at order 25");
    return out;
}

// ---- 9: dominant-pair necessary condition soundness sweep --------------

Outcome criterion9() {
    Outcome out;
    testfam::Rng rng(31415);
    int violated = 0, witnessed = 0;
    for (int i = 0; i < 100; ++i) {
        RootMultiset roots = testfam::dominantPairRoots(rng);
        if (necessary_condition(roots) == NecessaryOutcome::Violated) ++violated;
        Verdict v = decide(kOne, roots);
        if (v.decision == Decision::NotMoment && v.sign &&
            v.sign->kind == CertKind::NegativityWitness && v.sign->witnessValue < 0.0)
            ++witnessed;
    }
    if (violated != 100) out.fail(fmt("necessary condition violated in %d/100 only", violated));
    if (witnessed != 100) out.fail(fmt("negativity witness found in %d/100 only", witnessed));
    if (out.pass) out.note("100/100 flagged Violated with re-checkable witnesses");
    return out;
}

using CriterionFn = Outcome (*)();

struct Entry {
    CriterionFn fn;
    double budgetSeconds;
};

const Entry kCriteria[] = {
    {criterion1, 1.0},  {criterion2, 60.0}, {criterion3, 120.0},
    {criterion4, 10.0}, {criterion5, 30.0}, {criterion6, 10.0},
    {criterion7, 10.0}, {criterion8, 5.0},  {criterion9, 60.0},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
            if (only < 1 || only > 9) {
                std::fprintf(stderr, "--criterion must be 1..9\n");
                return 2;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
            return 2;
        }
    }

    bool allPass = true;
    for (int n = 1; n <= 9; ++n) {
        if (only != 0 && n != only) continue;
        const Entry& e = kCriteria[n - 1];
        Outcome out;
        auto t0 = std::chrono::steady_clock::now();
        try {
            out = e.fn();
        } catch (const std::exception& ex) {
            out.pass = false;
            out.detail = fmt("exception: %s", ex.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > e.budgetSeconds)
            out.fail(fmt("runtime %.1f s exceeds the %.0f s budget", secs, e.budgetSeconds));
        std::printf("[criterion %d] %s: %s (%.2f s, budget %.0f s)\n", n,
                    out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs, e.budgetSeconds);
        std::fflush(stdout);
        allPass = allPass && out.pass;
    }
    return allPass ? 0 : 1;
}
