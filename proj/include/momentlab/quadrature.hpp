#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace momentlab {

// Gauss-Legendre nodes/weights on [-1, 1], computed by Newton iteration on
// the Legendre polynomial. Cached for n = 7 and 15.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussRule& gauss_rule(int n);

struct AdaptiveOptions {
    double relTol = 1e-12;
    int maxPanels = 20000;
    // optional absolute noise floor: given panel midpoint and width, return
    // the roundoff level below which refinement is pointless
    std::function<double(double mid, double h)> noiseFloor;
    // initial breakpoints (interior); endpoints are added automatically
    std::vector<double> breakpoints;
};

// Adaptive composite Gauss-Legendre with a GL7/GL15 error estimate. The
// per-panel tolerance is relTol * (first-pass |integral| estimate) * h / L,
// so the total error is bounded by relTol * scale plus the noise floor.
double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt = {});
std::complex<double> adaptive_integrate_complex(const std::function<std::complex<double>(double)>& f,
                                                double a, double b,
                                                const AdaptiveOptions& opt = {});

} // namespace momentlab
