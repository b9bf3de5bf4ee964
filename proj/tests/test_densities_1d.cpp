#include <doctest.h>

#include <cmath>

#include "minkprop/densities_1d.hpp"

using namespace mkp;

namespace {

TestFn g1(double c, double s) {
    TestFn f = gaussian(1, s);
    f.center = {c};
    return f;
}

}  // namespace

TEST_CASE("delta evaluates") {
    const TestFn u = g1(0.4, 0.8);
    const double x[1] = {1.1};
    CHECK(std::abs(pair_1d(Dist1d::delta(1.1), u).value - eval(u, x)) < 1e-14);
}

TEST_CASE("heaviside on a centered gaussian is half the integral") {
    const TestFn u = g1(0.0, 1.3);
    const double half = 0.5 * std::sqrt(2.0 * kPi) * 1.3;
    CHECK(std::abs(pair_1d(Dist1d::heaviside(1), u).value - half) < 1e-10);
    CHECK(std::abs(pair_1d(Dist1d::heaviside(-1), u).value - half) < 1e-10);
}

TEST_CASE("sign annihilates even functions") {
    CHECK(std::abs(pair_1d(Dist1d::sign(), g1(0.0, 0.9)).value) < 1e-12);
}

TEST_CASE("principal value against x times a gaussian") {
    TestFn u = g1(0.0, 1.0);
    u.terms[0].alpha = {1, 0, 0, 0};
    CHECK(std::abs(pair_1d(Dist1d::pv_shift(0.0), u).value - std::sqrt(2.0 * kPi)) < 1e-9);
}

TEST_CASE("characteristic function integrates over the interval") {
    const TestFn u = g1(0.0, 1.0);
    const double expect = std::sqrt(kPi / 2.0) * (std::erf(2.0 / std::sqrt(2.0)) - std::erf(-0.5 / std::sqrt(2.0)));
    CHECK(std::abs(pair_1d(Dist1d::char_interval(-0.5, 2.0), u).value - expect) < 1e-11);
}

TEST_CASE("damped pole limit: principal value plus i pi times the point value") {
    const TestFn u = g1(0.3, 0.9);
    const double a = 0.5;
    const double x[1] = {a};
    const cplx pv = pair_1d(Dist1d::pv_shift(a), u).value;
    for (int side : {1, -1}) {
        const auto lim = damped_pole_limit(u, a, side);
        CHECK(std::abs(lim.value - (pv + double(side) * kI * kPi * eval(u, x))) < 1e-6);
    }
}

TEST_CASE("Fourier table rows on a few seeds") {
    for (const auto& r : verify_ft_table({}, 5, 2)) {
        INFO(r.identity);
        CHECK(r.pass);
    }
}
