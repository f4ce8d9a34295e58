#include "momentlab/quadrature.hpp"

#include "momentlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace momentlab {

namespace {

GaussRule computeRule(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based starting guess, then Newton on P_n
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

template <typename T>
T panel(const std::function<T(double)>& f, double a, double b, const GaussRule& r) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    T acc{};
    for (std::size_t i = 0; i < r.nodes.size(); ++i)
        acc += r.weights[i] * f(mid + half * r.nodes[i]);
    return acc * half;
}

template <typename T>
T adaptiveImpl(const std::function<T(double)>& f, double a, double b, const AdaptiveOptions& opt) {
    if (!(b > a)) return T{};
    const GaussRule& g7 = gauss_rule(7);
    const GaussRule& g15 = gauss_rule(15);
    std::vector<std::pair<double, double>> stack;
    {
        std::vector<double> pts{a};
        for (double p : opt.breakpoints)
            if (p > a && p < b) pts.push_back(p);
        pts.push_back(b);
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            if (pts[i + 1] > pts[i]) stack.emplace_back(pts[i], pts[i + 1]);
    }
    double scale = 1e-300;
    for (const auto& [s0, s1] : stack) scale += std::abs(panel<T>(f, s0, s1, g15));
    const double L = b - a;
    T total{};
    int used = 0;
    while (!stack.empty()) {
        auto [s0, s1] = stack.back();
        stack.pop_back();
        if (++used > opt.maxPanels) throw QuadratureFailure("panel budget exhausted");
        T i7 = panel<T>(f, s0, s1, g7);
        T i15 = panel<T>(f, s0, s1, g15);
        double err = std::abs(i15 - i7);
        double h = s1 - s0;
        double tol = opt.relTol * scale * h / L;
        if (opt.noiseFloor) tol = std::max(tol, opt.noiseFloor(0.5 * (s0 + s1), h));
        if (err <= tol || h < 1e-13 * L) {
            total += i15;
        } else {
            double m = 0.5 * (s0 + s1);
            stack.emplace_back(s0, m);
            stack.emplace_back(m, s1);
        }
    }
    return total;
}

} // namespace

const GaussRule& gauss_rule(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, computeRule(n)).first;
    return it->second;
}

double adaptive_integrate(const std::function<double(double)>& f, double a, double b,
                          const AdaptiveOptions& opt) {
    return adaptiveImpl<double>(f, a, b, opt);
}

std::complex<double> adaptive_integrate_complex(const std::function<std::complex<double>(double)>& f,
                                                double a, double b, const AdaptiveOptions& opt) {
    return adaptiveImpl<std::complex<double>>(f, a, b, opt);
}

} // namespace momentlab
