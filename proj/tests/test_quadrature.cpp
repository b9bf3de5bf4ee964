#include <doctest.h>

#include <cmath>

#include "minkprop/quadrature.hpp"

using namespace mkp;

TEST_CASE("adaptive integration of a gaussian") {
    const auto r = integrate_1d([](double x) { return cplx(std::exp(-x * x)); }, -12.0, 12.0);
    CHECK(std::abs(r.value - std::sqrt(kPi)) < 1e-12);
    CHECK(r.converged);
}

TEST_CASE("semi-infinite integral") {
    const auto r = integrate_semi_infinite([](double x) { return cplx(std::exp(-x)); }, 0.0, 1.0);
    CHECK(std::abs(r.value - 1.0) < 1e-12);
}

TEST_CASE("principal value of exp(x)/x on [-1, 1] is 2 Shi(1)") {
    const auto r = integrate_pv([](double x) { return cplx(std::exp(x)); }, 0.0, -1.0, 1.0);
    CHECK(std::abs(r.value - 2.0 * 1.0572508753757285) < 1e-9);
}

TEST_CASE("principal value of an odd numerator over a symmetric interval vanishes") {
    const auto r = integrate_pv([](double) { return cplx(1.0); }, 0.0, -2.0, 2.0);
    CHECK(std::abs(r.value) < 1e-12);
}

TEST_CASE("richardson removes even powers") {
    std::vector<cplx> ladder;
    for (int k = 0; k < 6; ++k) {
        const double h = 0.5 * std::pow(0.5, k);
        ladder.push_back(1.0 + 0.7 * h * h - 0.3 * std::pow(h, 4));
    }
    const auto e = richardson(ladder, 0.5, 2, 2);
    CHECK(std::abs(e.value - 1.0) < 1e-12);
}

TEST_CASE("composite Gauss-Legendre is exact on polynomials") {
    std::vector<double> x, w;
    gauss_legendre_composite(-1.0, 2.0, 0.7, 10, x, w);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 9);
    CHECK(s == doctest::Approx((std::pow(2.0, 10) - 1.0) / 10.0).epsilon(1e-13));
}
