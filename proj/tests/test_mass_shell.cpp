#include <doctest.h>

#include <random>

#include "minkprop/mass_shell.hpp"

using namespace mkp;

TEST_CASE("massless future shell on the unit gaussian") {
    // (2 pi)^{-1} int d^3p / (2|p|) exp(-|p|^2) = 1/2
    const auto r = pair_shell(parse_dist("eps+", 0.0), gaussian(4, 1.0));
    CHECK(std::abs(r.value - 0.5) < 1e-10);
}

TEST_CASE("omega and eps differ by the 2 pi normalization") {
    const TestFn u = gaussian(4, 1.0);
    for (double m : {0.0, 1.0}) {
        const cplx w = pair_shell(parse_dist("omega+", m), u).value;
        const cplx e = pair_shell(parse_dist("eps+", m), u).value;
        CHECK(std::abs(w - 2.0 * kPi * e) < 1e-9 * std::abs(w));
    }
}

TEST_CASE("past shell is minus the reflected future shell") {
    std::mt19937_64 rng(8);
    for (double m : {0.0, 0.5}) {
        const TestFn u = random_testfn(rng, 4);
        const cplx a = pair_shell(parse_dist("eps-", m), u).value;
        const cplx b = pair_shell(parse_dist("eps+", m), reflect(u)).value;
        CHECK(std::abs(a + b) < 1e-9 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("batched shell pairings match single pairings") {
    std::mt19937_64 rng(9);
    const TestFn u = random_testfn(rng, 4);
    const auto batch = shell_pairings({u, derivative(u, 1)}, 1.0, {ShellItem::eps_p, ShellItem::epv_m});
    CHECK(std::abs(batch.single.at(ShellItem::eps_p)[0].value - pair_shell(parse_dist("eps+", 1.0), u).value) < 1e-9);
    CHECK(std::abs(batch.single.at(ShellItem::epv_m)[1].value -
                   pair_shell(parse_dist("epv-", 1.0), derivative(u, 1)).value) < 1e-9);
}

TEST_CASE("name grammar") {
    for (const char* n : {"omega+", "omegaL-", "eps+", "epv-", "e", "opp-+", "opp++"})
        CHECK(dist_name(parse_dist(n, 1.0)) == n);
    CHECK_THROWS(parse_dist("shell", 1.0));
    CHECK_THROWS(parse_dist("eps+", -1.0));
}

TEST_CASE("opp inversion identities") {
    for (const auto& r : check_opp_decomposition(1.0, {}, 3, 2)) {
        INFO(r.identity);
        CHECK(r.pass);
        CHECK(r.extra <= 1e-6);
    }
}
