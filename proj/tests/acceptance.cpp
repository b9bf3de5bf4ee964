// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "minkprop/densities_1d.hpp"
#include "minkprop/dirac.hpp"
#include "minkprop/fock.hpp"
#include "minkprop/fourier.hpp"
#include "minkprop/propagators.hpp"

using namespace mkp;

namespace {

struct Outcome {
    bool pass = true;
    double worst = 0.0;  // largest residual / tolerance among rows with nonzero tolerance
    std::string failed;
};

void absorb(Outcome& o, const std::vector<CheckRow>& rows) {
    for (const auto& r : rows) {
        if (r.tolerance > 0.0) o.worst = std::max(o.worst, r.residual / r.tolerance);
        if (!r.pass) {
            o.pass = false;
            if (o.failed.empty()) o.failed = r.identity;
        }
    }
}

bool run(int id, const char* what, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o = body();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool timely = limit_s <= 0.0 || dt < limit_s;
    const bool pass = o.pass && timely;
    std::printf("criterion %2d %s  %s  worst residual/tol %.2e  %.1f s", id, pass ? "PASS" : "FAIL", what, o.worst,
                dt);
    if (!o.failed.empty()) std::printf("  first failing row: %s", o.failed.c_str());
    if (!timely) std::printf("  over the %.0f s budget", limit_s);
    std::printf("\n");
    std::fflush(stdout);
    return pass;
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IOLBF, 0);
    const std::uint64_t seed = 20240601;
    int failures = 0;
    auto tally = [&](bool ok) { failures += ok ? 0 : 1; };

    tally(run(1, "Fourier table, 10 seeded test functions", 30.0, [&] {
        Outcome o;
        absorb(o, verify_ft_table({}, seed, 10));
        return o;
    }));
    tally(run(2, "corollary (20 u per mass) and F-perp lemma, m in {0, 0.5, 1}", 0.0, [&] {
        Outcome o;
        for (double m : {0.0, 0.5, 1.0}) {
            absorb(o, verify_corollary(m, {}, seed, 20));
            absorb(o, verify_F_perp_lemma(m, {}, seed, 10));
        }
        return o;
    }));
    tally(run(3, "opp inversion identities with ladder spread <= 1e-6, m in {0, 1}", 0.0, [&] {
        Outcome o;
        for (double m : {0.0, 1.0}) {
            const auto rows = check_opp_decomposition(m, {}, seed, 10);
            absorb(o, rows);
            for (const auto& r : rows)
                if (r.extra > 1e-6) {
                    o.pass = false;
                    if (o.failed.empty()) o.failed = r.identity + " (spread)";
                }
        }
        return o;
    }));
    tally(run(4, "Klein-Gordon residuals, 10 u, m in {0, 0.5, 1}", 0.0, [&] {
        Outcome o;
        for (double m : {0.0, 0.5, 1.0}) absorb(o, verify_kg_residuals(m, {}, seed, 10));
        return o;
    }));
    tally(run(5, "massless momentum route vs light-cone closed forms, 10 u", 60.0, [&] {
        Outcome o;
        absorb(o, verify_massless_cross({}, seed, 10));
        return o;
    }));
    tally(run(6, "propagator identities, windows, parity and t = 0 facts, m in {0, 1}", 0.0, [&] {
        Outcome o;
        for (double m : {0.0, 1.0}) absorb(o, verify_propagator_identities(m, {}, seed, 4));
        return o;
    }));
    tally(run(7, "microcausality 8 sigma outside the cone, m in {0, 1}", 0.0, [&] {
        Outcome o;
        for (double m : {0.0, 1.0}) absorb(o, verify_microcausality(m));
        return o;
    }));
    tally(run(8, "Clifford algebra and Dirac residuals, m in {0, 1}", 0.0, [&] {
        Outcome o;
        absorb(o, verify_clifford(seed, 50));
        for (double m : {0.0, 1.0}) absorb(o, verify_dirac(m, {}, seed, 2));
        return o;
    }));
    tally(run(9, "Fock algebra and equal-time CCR, both statistics", 0.0, [&] {
        Outcome o;
        absorb(o, verify_fock_algebra(seed));
        for (Statistics s : {Statistics::boson, Statistics::fermion}) {
            LatticeSpec spec;
            spec.dp = 0.5;
            spec.n_half = 2;
            spec.mass = 1.0;
            spec.stats = s;
            absorb(o, verify_ccr(spec));
        }
        return o;
    }));
    tally(run(10, "commutator to propagator bridge, dp in {0.8, 0.4, 0.2}, m = 1", 300.0, [&] {
        Outcome o;
        absorb(o, verify_bridge(1.0, {0.8, 0.4, 0.2}));
        return o;
    }));
    std::printf("%d of 10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
