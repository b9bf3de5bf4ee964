#include <doctest.h>

#include <random>

#include "minkprop/propagators.hpp"

using namespace mkp;

namespace {

void all_pass(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows) {
        INFO(r.identity << " m=" << r.mass << " residual=" << r.residual);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("frozen D+ value for the unit gaussian at m = 1") {
    // e^{-1/2} (2 pi)^{-1} 4 pi int p^2 e^{-p^2} / (2 sqrt(1 + p^2)) dp, by an independent quadrature
    const auto r = pair_propagator({PropTag::Dplus, 1.0}, gaussian(4, 1.0));
    CHECK(std::abs(r.value - 0.18300551219390881) < 1e-10);
}

TEST_CASE("kind names round trip") {
    for (int i = 0; i < kNumPropTags; ++i) CHECK(parse_prop_tag(prop_name(PropTag(i))) == PropTag(i));
    CHECK_THROWS(parse_prop_tag("Dx"));
}

TEST_CASE("D is the sum and Dcirc the difference of D+ and D-") {
    std::mt19937_64 rng(12);
    const TestFn u = random_testfn(rng, 4);
    const PropValues v = pair_all_kinds(0.5, u);
    const cplx dp = v[int(PropTag::Dplus)].value, dm = v[int(PropTag::Dminus)].value;
    CHECK(std::abs(v[int(PropTag::D)].value - (dp + dm)) < 1e-12);
    CHECK(std::abs(v[int(PropTag::Dcirc)].value - (dp - dm)) < 1e-12);
    CHECK(std::abs(v[int(PropTag::Dret)].value - v[int(PropTag::Dadv)].value - v[int(PropTag::D)].value) < 1e-12);
}

TEST_CASE("shell route and windowed sine-radial route agree") {
    std::mt19937_64 rng(14);
    const TestFn u = random_testfn(rng, 4);
    const PropValues a = pair_all_kinds(1.0, u), b = pair_all_kinds_windowed(1.0, u);
    for (int i = 0; i < kNumPropTags; ++i) {
        INFO(prop_name(PropTag(i)));
        CHECK(std::abs(a[i].value - b[i].value) < 1e-7 * (1.0 + std::abs(a[i].value)));
    }
}

TEST_CASE("Klein-Gordon residuals") { all_pass(verify_kg_residuals(1.0, {}, 6, 2)); }

TEST_CASE("massless cross route") { all_pass(verify_massless_cross({}, 6, 2)); }

TEST_CASE("microcausality") { all_pass(verify_microcausality(1.0)); }

TEST_CASE("time derivative of D at t = 0 is -i delta") {
    const auto r = time_derivative_limit(PropTag::D, 1.0);
    CHECK(std::abs(r.target - cplx(0.0, -1.0)) < 1e-15);
    CHECK(r.residual < 1e-6);
}

TEST_CASE("parallel kernels reproduce the serial reference bit for bit") {
    std::mt19937_64 rng(15);
    const TestFn u = random_testfn(rng, 4);
    EngineOptions serial;
    serial.parallel = false;
    const PropValues a = pair_all_kinds(1.0, u, {}, serial), b = pair_all_kinds(1.0, u);
    for (int i = 0; i < kNumPropTags; ++i) CHECK(a[i].value == b[i].value);
    const Decomposed d = decompose({u});
    const RadialTable s = tabulate_radial(d.space, 0.5, 1e-12, false), p = tabulate_radial(d.space, 0.5, 1e-12, true);
    CHECK(s.A == p.A);
}
