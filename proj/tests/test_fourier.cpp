#include <doctest.h>

#include "minkprop/fourier.hpp"

using namespace mkp;

namespace {

void all_pass(const std::vector<CheckRow>& rows) {
    for (const auto& r : rows) {
        INFO(r.identity << " m=" << r.mass << " residual=" << r.residual);
        CHECK(r.pass);
    }
}

}  // namespace

TEST_CASE("transform of a delta is the constant (2 pi)^{-1/2}") {
    TestFn u = gaussian(1, 0.8);
    u.center = {0.4};
    for (int s : {1, -1}) {
        const auto r = pair_transformed_1d(Dist1d::delta(0.0), s, u);
        CHECK(std::abs(r.value - integral(u) / std::sqrt(2.0 * kPi)) < 1e-10);
    }
}

TEST_CASE("corollary and F-perp lemma") {
    all_pass(verify_corollary(0.5, {}, 4, 3));
    all_pass(verify_F_perp_lemma(1.0, {}, 4, 2));
}

TEST_CASE("sine-radial route against the shell route") {
    all_pass(verify_prop_digamma(1.0, {}, 4, 2));
    all_pass(verify_ehat_identities(0.0, {}, 4, 2));
}

TEST_CASE("massless transform table") { all_pass(verify_massless_table({}, 4, 2)); }
