#include <doctest.h>

#include <random>

#include "minkprop/testfn.hpp"

using namespace mkp;

namespace {

TestFn sample(std::uint64_t seed, int dim) {
    std::mt19937_64 rng(seed);
    return random_testfn(rng, dim);
}

std::vector<double> point(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    std::vector<double> x(dim);
    for (auto& v : x) v = U(rng);
    return x;
}

}  // namespace

TEST_CASE("gaussian integral and L1 norm") {
    const TestFn g = gaussian(4, 0.7);
    const double expect = std::pow(2.0 * kPi * 0.49, 2.0);
    CHECK(std::abs(integral(g) - expect) < 1e-12 * expect);
    CHECK(l1_norm(g) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("unit gaussian is a fixed point of both transforms") {
    const TestFn g = gaussian(4, 1.0);
    std::mt19937_64 rng(3);
    for (int s : {1, -1}) {
        const TestFn G = fourier_analytic(g, s);
        for (int n = 0; n < 5; ++n) {
            const auto y = point(rng, 4);
            CHECK(std::abs(eval(G, y) - eval(g, y)) < 1e-14);
        }
    }
}

TEST_CASE("inverse transform undoes the forward transform") {
    std::mt19937_64 rng(11);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TestFn f = sample(seed, 4);
        const TestFn back = fourier_analytic(fourier_analytic(f, 1), -1);
        for (int n = 0; n < 4; ++n) {
            const auto x = point(rng, 4);
            CHECK(std::abs(eval(back, x) - eval(f, x)) < 1e-10 * (1.0 + std::abs(eval(f, x))));
        }
    }
}

TEST_CASE("transform of a derivative is i y times the transform, same sign index") {
    std::mt19937_64 rng(5);
    const TestFn f = sample(7, 4);
    for (int s : {1, -1})
        for (int axis = 0; axis < 4; ++axis) {
            const TestFn lhs = fourier_analytic(derivative(f, axis), s);
            const TestFn rhs = fourier_analytic(f, s);
            const auto y = point(rng, 4);
            const cplx expect = double(s) * kI * y[axis] * eval(rhs, y);
            CHECK(std::abs(eval(lhs, y) - expect) < 1e-11 * (1.0 + std::abs(expect)));
        }
}

TEST_CASE("derivative matches a central difference") {
    const TestFn f = sample(9, 4);
    std::mt19937_64 rng(1);
    const auto x = point(rng, 4);
    for (int axis = 0; axis < 4; ++axis) {
        auto xp = x, xm = x;
        const double h = 1e-5;
        xp[axis] += h;
        xm[axis] -= h;
        const cplx fd = (eval(f, xp) - eval(f, xm)) / (2.0 * h);
        CHECK(std::abs(eval(derivative(f, axis), x) - fd) < 1e-7);
    }
}

TEST_CASE("temporal and spatial partial transforms compose to the full transform") {
    const TestFn f = sample(13, 4);
    std::mt19937_64 rng(2);
    const TestFn a = fourier_temporal(fourier_spatial(f, 1), 1);
    const TestFn b = fourier_spatial(fourier_temporal(f, 1), 1);
    const TestFn full = fourier_analytic(f, 1);
    for (int n = 0; n < 4; ++n) {
        const auto y = point(rng, 4);
        CHECK(std::abs(eval(a, y) - eval(full, y)) < 1e-12);
        CHECK(std::abs(eval(b, y) - eval(full, y)) < 1e-12);
    }
}

TEST_CASE("reflection and translation act on arguments") {
    const TestFn f = sample(17, 4);
    std::mt19937_64 rng(4);
    const auto x = point(rng, 4);
    std::vector<double> mx(4), shifted(4);
    const std::vector<double> b{0.3, -0.2, 0.5, 0.1};
    for (int i = 0; i < 4; ++i) {
        mx[i] = -x[i];
        shifted[i] = x[i] - b[i];
    }
    CHECK(std::abs(eval(reflect(f), x) - eval(f, mx)) < 1e-14);
    CHECK(std::abs(eval(translate(f, b), x) - eval(f, shifted)) < 1e-13);
}

TEST_CASE("json round trip") {
    const TestFn f = sample(21, 4);
    const TestFn g = from_json(to_json(f));
    std::mt19937_64 rng(6);
    const auto x = point(rng, 4);
    CHECK(eval(f, x) == eval(g, x));
}

TEST_CASE("validation rejects bad parameters") {
    TestFn f = gaussian(4, 1.0);
    f.widths[2] = -1.0;
    CHECK_THROWS(validate(f));
    TestFn g = gaussian(4, 1.0);
    g.terms[0].alpha = {kMaxDegree + 1, 0, 0, 0};
    CHECK_THROWS(validate(g));
}
