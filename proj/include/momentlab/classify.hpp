#pragma once

#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"
#include "momentlab/weight.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace momentlab {

enum class Decision { Moment, NotMoment, Undetermined };
const char* to_string(Decision d);

struct FdViolation {
    int m = 0;
    long long n = 0;
    double value = 0;  // the offending iterated difference
    double tol = 0;    // the (negative) threshold it crossed
};

struct FdResult {
    bool pass = true;
    std::optional<FdViolation> violation;
    int maxOrder = 0;
    long long maxOffset = 0;
};

using SequenceFn = std::function<long double(long long)>;

// Alternating-difference test: sum_j (-1)^j C(m,j) x_{n+j} >= -1e-10*|x_n|
// for all m <= maxOrder, n <= maxOffset. Differences run through the
// iterated-difference recurrence in extended precision; a candidate
// violation with cancellation beyond 1e8 is re-verified by a compensated
// binomial sum (Overflow for m > 60 on that path).
FdResult hausdorff_finite_test(const SequenceFn& x, int maxOrder, long long maxOffset);

enum class NecessaryOutcome { Violated, Inconclusive };

// Violated when some conjugate pair strictly dominates every real root and
// every other pair in real part (such sequences are never moment sequences);
// ties are Inconclusive
NecessaryOutcome necessary_condition(const RootMultiset& roots);

enum class RationalQOutcome { Violated, Inconclusive, SufficientDeg1 };

// For all-real negative poles with largest root a1: q(a1) <= 0 refutes the
// moment property; a monic degree-1 q with q(a1) > 0 certifies it
RationalQOutcome rational_necessary_q(const RealPolynomial& q, const RootMultiset& roots);

// u^2 - 1 - u^2 cos(x) + cos(u x); nonnegativity for all x >= 0 decides the
// two-pairs-on-a-vertical-line family
double g_function(double u, double x);

struct Budget {
    int gridSize = 4000;
    int maxOrder = 25;
    long long maxOffset = 25;
    double quadTol = 1e-12;
    unsigned long long seed = 12345;
};

struct Verdict {
    Decision decision = Decision::Undetermined;
    std::string rule;
    bool boundaryFlag = false;
    std::optional<SignCertificate> sign;
    std::optional<FdViolation> fdViolation;
    bool fdAuditPassed = false;
    int fdAuditOrder = 0;
    std::vector<double> divdiffValues;
    double scanMargin = 0.0;  // min w / (1 + max |w|) when a scan ran
    std::optional<double> gAt2Pi;
};

// p = (z-r)(z-alpha)(z-conj alpha): Moment iff Re(alpha) <= r, boundary at
// equality; scan certificate attached either way
Verdict classify_degree3(double r, Complex alpha);

// degree-4 stable p with a conjugate pair: Moment iff some real root lies at
// or above Re(alpha); no real root (two pairs) is never a moment sequence.
// Every rule outcome is audited against the sign scan; disagreement throws
// RuleAuditError.
Verdict classify_degree4(const RootMultiset& roots);

// p = (z-r) (pair r,y1) (pair r,y2): Moment iff y2/y1 is an integer >= 2
Verdict classify_degree5_vertical(double r, double y1, double y2);

// decision cascade: stability gate, exact shape rules, dominant-pair
// necessary condition with witness confirmation, all-real-pole rules, then
// the numeric fallback (sign scan + finite-difference audit)
Verdict decide(const RealPolynomial& q, const RealPolynomial& p, const Budget& budget = {});
Verdict decide(const RealPolynomial& q, const RootMultiset& roots, const Budget& budget = {});

} // namespace momentlab
