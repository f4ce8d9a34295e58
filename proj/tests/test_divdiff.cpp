#include "momentlab/divdiff.hpp"
#include "momentlab/errors.hpp"
#include "momentlab/pfd.hpp"
#include "momentlab/polynomial.hpp"
#include "momentlab/roots.hpp"
#include "momentlab/weight.hpp"

#include "doctest.h"
#include "family.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

using namespace momentlab;

TEST_SUITE("divdiff") {

TEST_CASE("polynomial tableau basics") {
    PolynomialFn f(RealPolynomial({0.0, 0.0, 1.0}));  // z^2
    NodeList two{{{Complex(1.0, 0.0), 1}, {Complex(4.0, 0.0), 1}}};
    CHECK(divided_difference(f, two).real() == doctest::Approx(5.0).epsilon(1e-14));
    // confluent pair equals the derivative
    NodeList confl{{{Complex(3.0, 0.0), 2}}};
    CHECK(divided_difference(f, confl).real() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("exactness degree: d+1 nodes give the leading coefficient, more give zero") {
    RealPolynomial p({1.0, -2.0, 0.0, 2.5});  // degree 3, leading 2.5
    PolynomialFn f(p);
    NodeList four{{{Complex(0.2, 0.0), 1},
                   {Complex(-1.0, 0.0), 1},
                   {Complex(2.0, 0.0), 1},
                   {Complex(5.0, 0.0), 1}}};
    CHECK(divided_difference(f, four).real() == doctest::Approx(2.5).epsilon(1e-12));
    NodeList five = four;
    five.nodes.push_back({Complex(-3.0, 0.0), 1});
    CHECK(std::abs(divided_difference(f, five)) <= 1e-12);
    // repeated-node variant carries the same exactness
    NodeList fourConfl{{{Complex(0.2, 0.0), 2}, {Complex(2.0, 0.0), 2}}};
    CHECK(divided_difference(f, fourConfl).real() == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("node order does not matter") {
    PolynomialFn f(RealPolynomial({1.0, 1.0, 1.0, 1.0}));
    NodeList a{{{Complex(-1.0, 0.0), 2}, {Complex(0.5, 0.0), 1}}};
    NodeList b{{{Complex(0.5, 0.0), 1}, {Complex(-1.0, 0.0), 2}}};
    CHECK(std::abs(divided_difference(f, a) - divided_difference(f, b)) <= 1e-13);
}

TEST_CASE("kernel derivatives match a central difference") {
    WeightKernelFn f(RealPolynomial({1.0, 2.0}), 0.3);
    auto F = [](Complex z) { return (1.0 + 2.0 * z) * std::pow(Complex(0.3, 0.0), -z - 1.0); };
    Complex z0(-0.7, 0.4);
    double h = 1e-5;
    Complex fd1 = (F(z0 + h) - F(z0 - h)) / (2.0 * h);
    CHECK(std::abs(f.scaledDerivative(z0, 1) - fd1) <= 1e-6 * (1.0 + std::abs(fd1)));
    Complex fd2 = (F(z0 + h) - 2.0 * F(z0) + F(z0 - h)) / (h * h) / 2.0;
    CHECK(std::abs(f.scaledDerivative(z0, 2) - fd2) <= 1e-4 * (1.0 + std::abs(fd2)));
    CHECK(std::abs(f.scaledDerivative(z0, 0) - F(z0)) <= 1e-12 * (1.0 + std::abs(F(z0))));
}

TEST_CASE("distinct nodes closer than the merge tolerance are rejected") {
    PolynomialFn f(RealPolynomial({0.0, 1.0}));
    NodeList close{{{Complex(-1.0, 0.0), 1}, {Complex(-1.0 + 1e-8, 0.0), 1}}};
    CHECK_THROWS_AS(divided_difference(f, close), NodesTooClose);
}

TEST_CASE("weight via divided differences matches the partial-fraction weight") {
    testfam::Rng rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        auto inst = testfam::randomInstance(rng);
        WeightFunction w(inst.q, inst.roots);
        double wmax = 0.0;
        std::vector<double> ts{0.95, 0.6, 0.25, 0.05, 0.004};
        for (double t : ts) wmax = std::max(wmax, std::fabs(w(t)));
        for (double t : ts) {
            double a = w(t), b = weight_via_divdiff(inst.q, inst.roots, t);
            // floor keeps the comparison meaningful where both routes cancel
            // toward zero (t near 1 when residues sum to zero)
            double rel = std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-3 * wmax});
            CHECK(rel <= 1e-8);
        }
    }
}

TEST_CASE("closed-form check: log-weight from a doubled pole") {
    RootMultiset rm({{Complex(-1.0, 0.0), 2}}, 1.0);
    CHECK(weight_via_divdiff(RealPolynomial({1.0}), rm, 0.2) ==
          doctest::Approx(std::log(5.0)).epsilon(1e-12));
}

TEST_CASE("positivity certificate: the worked parameter set (2,3,1,3.5)") {
    RealPolynomial qb = RealPolynomial({2.0, 1.0}) * RealPolynomial({3.0, 1.0});
    RealPolynomial pb = RealPolynomial({1.0, 1.0}) * RealPolynomial({3.5, 1.0});
    auto roots = find_roots(pb);
    SufficientConditionResult sc = sufficient_condition(qb - pb, roots);
    REQUIRE(sc.values.size() == 2);
    CHECK(sc.values[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(sc.values[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sc.allNonnegative);
}

TEST_CASE("positivity certificate: prefix values at descending nodes") {
    RootMultiset rm({{Complex(-1, 0), 1}, {Complex(-2, 0), 1}, {Complex(-3, 0), 1}}, 1.0);
    SufficientConditionResult sc = sufficient_condition(RealPolynomial({5.0, 1.0}), rm);
    REQUIRE(sc.values.size() == 3);
    CHECK(sc.values[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sc.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(sc.values[2]) <= 1e-12);
    CHECK(sc.allNonnegative);

    // a numerator that dips below zero at the dominant pole fails
    SufficientConditionResult bad = sufficient_condition(RealPolynomial({0.5, 1.0}), rm);
    CHECK_FALSE(bad.allNonnegative);
}

TEST_CASE("positivity certificate preconditions") {
    auto pairRoots = find_roots(RealPolynomial({5.0, 2.0, 1.0}));
    CHECK_THROWS_AS(sufficient_condition(RealPolynomial({1.0}), pairRoots), PreconditionViolated);
    RootMultiset repeated({{Complex(-1, 0), 2}}, 1.0);
    CHECK_THROWS_AS(sufficient_condition(RealPolynomial({1.0}), repeated), PreconditionViolated);
    RootMultiset unstable({{Complex(1.0, 0.0), 1}}, 1.0);
    CHECK_THROWS_AS(sufficient_condition(RealPolynomial({1.0}), unstable), PreconditionViolated);
}

} // TEST_SUITE
