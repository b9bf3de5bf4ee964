#include "minkprop/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace mkp {

PairingResult pair_transformed(const TransformedDist& T, const TestFn& u, const QuadConfig& cfg) {
    if (T.partial != Partial::full && u.dim != 4)
        throw std::invalid_argument("partial transforms require dim 4");
    TestFn v;
    switch (T.partial) {
        case Partial::full: v = fourier_analytic(u, T.sign); break;
        case Partial::temporal: v = fourier_temporal(u, T.sign); break;
        case Partial::spatial: v = fourier_spatial(u, T.sign); break;
    }
    return pair_shell(T.base, v, cfg);
}

PairingResult pair_transformed_1d(const Dist1d& base, int sign, const TestFn& u, const QuadConfig& cfg) {
    return pair_1d(base, fourier_analytic(u, sign), cfg);
}

DigammaCombo digamma_combo(cplx a, cplx b, Window w) {
    double pos = 1.0, neg = 1.0;
    switch (w) {
        case Window::full: break;
        case Window::future: neg = 0.0; break;
        case Window::past: pos = 0.0; break;
        case Window::sign: neg = -1.0; break;
    }
    return DigammaCombo{a * pos, a * neg, b * pos, b * neg};
}

std::vector<PairingResult> pair_digamma(const std::vector<DigammaCombo>& combos, double m,
                                        const std::vector<TestFn>& fns, const QuadConfig& cfg,
                                        const EngineOptions& opt) {
    const double C = std::pow(2.0 * kPi, -2.0);
    auto make = [&](const Decomposed& d, const SineSetup& s) {
        auto grid = std::make_shared<TimeGrid>(d.time, std::sqrt(s.kappa_max * s.kappa_max + m * m));
        const int na = d.time.amax + 1;
        SineKernel k;
        k.n_out = int(combos.size());
        k.eval = [grid, na, C, &combos](double, double tau, cplx* Th) {
            std::vector<cplx> pp(na), pn(na), mp(na), mn(na);
            grid->half_sums(tau, 1, pp.data(), pn.data());
            grid->half_sums(tau, -1, mp.data(), mn.data());
            for (std::size_t o = 0; o < combos.size(); ++o) {
                const auto& c = combos[o];
                for (int a = 0; a < na; ++a)
                    Th[o * na + a] = C * (c.plus_pos * pp[a] + c.plus_neg * pn[a] + c.minus_pos * mp[a] + c.minus_neg * mn[a]);
            }
        };
        return k;
    };
    auto eo = sine_integrate(fns, m, make, cfg, opt);
    std::vector<PairingResult> out;
    for (std::size_t o = 0; o < combos.size(); ++o)
        for (int f = 0; f < eo.nfn; ++f)
            out.push_back(PairingResult{eo.at(int(o), f), eo.abs_err, eo.evaluations, eo.converged});
    return out;
}

namespace {

EngineOutput fperp_densities(double m, const TestFn& v, const QuadConfig& cfg) {
    const double C = std::pow(2.0 * kPi, -1.5);
    auto make = [&](const Decomposed& d, const SineSetup&) {
        const TimeAxis ax = d.time;
        const int na = ax.amax + 1;
        SineKernel k;
        k.n_out = 2;
        k.eval = [ax, C, na](double, double tau, cplx* Th) {
            ax.eval(tau, Th);
            ax.eval(-tau, Th + na);
            for (int a = 0; a < na; ++a) {
                Th[a] *= C;
                Th[na + a] *= -C;
            }
        };
        return k;
    };
    return sine_integrate({v}, m, make, cfg);
}

}  // namespace

PairingResult pair_fperp_density(int s, double m, const TestFn& v, const QuadConfig& cfg) {
    auto eo = fperp_densities(m, v, cfg);
    return PairingResult{eo.at(s > 0 ? 0 : 1, 0), eo.abs_err, eo.evaluations, eo.converged};
}

namespace {

struct Worst {
    double r = 0.0;
    void add(double x) { r = std::max(r, x); }
};

CheckRow make_row(const std::string& id, double m, double r, double tol) { return CheckRow{id, m, r, tol, r <= tol, 0.0}; }

std::vector<TestFn> random_batch(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<TestFn> us;
    for (int n = 0; n < count; ++n) us.push_back(random_testfn(rng, 4));
    return us;
}

}  // namespace

std::vector<CheckRow> verify_corollary(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst w1, w2;
    for (const auto& u : random_batch(seed, count)) {
        const double nu = l1_norm(u);
        auto P = shell_pairings({fourier_analytic(u, 1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        auto M = shell_pairings({fourier_analytic(u, -1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        const cplx pp = P.single[ShellItem::eps_p][0].value, pm = P.single[ShellItem::eps_m][0].value;
        const cplx mp = M.single[ShellItem::eps_p][0].value, mm = M.single[ShellItem::eps_m][0].value;
        w1.add(std::abs(pp + mm) / nu);
        w2.add(std::abs(pm + mp) / nu);
    }
    return {make_row("F+eps+ + F-eps- = 0", m, w1.r, 1e-6), make_row("F+eps- + F-eps+ = 0", m, w2.r, 1e-6)};
}

std::vector<CheckRow> verify_prop_digamma(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst w[4];
    const std::vector<DigammaCombo> combos{digamma_combo(1.0, 0.0, Window::full), digamma_combo(0.0, -1.0, Window::full),
                                           digamma_combo(0.0, 1.0, Window::full), digamma_combo(-1.0, 0.0, Window::full)};
    for (const auto& u : random_batch(seed, count)) {
        auto P = shell_pairings({fourier_analytic(u, 1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        auto M = shell_pairings({fourier_analytic(u, -1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        auto G = pair_digamma(combos, m, {u}, cfg);
        w[0].add(std::abs(P.single[ShellItem::eps_p][0].value - G[0].value));
        w[1].add(std::abs(P.single[ShellItem::eps_m][0].value - G[1].value));
        w[2].add(std::abs(M.single[ShellItem::eps_p][0].value - G[2].value));
        w[3].add(std::abs(M.single[ShellItem::eps_m][0].value - G[3].value));
    }
    return {make_row("F+eps+ = (2pi)^-2 F+ dt^Sigma", m, w[0].r, 1e-6),
            make_row("F+eps- = -(2pi)^-2 F- dt^Sigma", m, w[1].r, 1e-6),
            make_row("F-eps+ = (2pi)^-2 F- dt^Sigma", m, w[2].r, 1e-6),
            make_row("F-eps- = -(2pi)^-2 F+ dt^Sigma", m, w[3].r, 1e-6)};
}

std::vector<CheckRow> verify_F_perp_lemma(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst same[2], dens[2];
    for (const auto& v : random_batch(seed, count)) {
        auto P = shell_pairings({fourier_spatial(v, 1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        auto M = shell_pairings({fourier_spatial(v, -1)}, m, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
        const auto D = fperp_densities(m, v, cfg);
        for (int i = 0; i < 2; ++i) {
            const auto it = i == 0 ? ShellItem::eps_p : ShellItem::eps_m;
            const cplx a = P.single[it][0].value, b = M.single[it][0].value;
            same[i].add(std::abs(a - b));
            dens[i].add(std::abs(a - D.at(i, 0)));
        }
    }
    return {make_row("F+perp eps+ = F-perp eps+", m, same[0].r, 1e-6),
            make_row("F+perp eps- = F-perp eps-", m, same[1].r, 1e-6),
            make_row("F perp eps+ = stated density", m, dens[0].r, 1e-6),
            make_row("F perp eps- = stated density", m, dens[1].r, 1e-6)};
}

std::vector<CheckRow> verify_ehat_identities(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst diff, sgnrow, m0;
    // i sgn(t) F-(eps+ + eps-) = i sgn(t) (2pi)^-2 (F- - F+)
    const std::vector<DigammaCombo> combos{digamma_combo(-kI, kI, Window::sign)};
    for (const auto& u : random_batch(seed, count)) {
        auto P = shell_pairings({fourier_analytic(u, 1)}, m, {ShellItem::epv_p, ShellItem::epv_m}, cfg);
        auto M = shell_pairings({fourier_analytic(u, -1)}, m, {ShellItem::epv_p, ShellItem::epv_m}, cfg);
        const cplx ehat = P.single[ShellItem::epv_p][0].value - P.single[ShellItem::epv_m][0].value;
        const cplx echeck = M.single[ShellItem::epv_p][0].value - M.single[ShellItem::epv_m][0].value;
        diff.add(std::abs(ehat - echeck));
        auto G = pair_digamma(combos, m, {u}, cfg);
        sgnrow.add(std::abs(ehat - G[0].value));
        if (m == 0.0) {
            auto X = shell_pairings({u}, 0.0, {ShellItem::eps_p, ShellItem::eps_m}, cfg);
            m0.add(std::abs(ehat - (X.single[ShellItem::eps_m][0].value - X.single[ShellItem::eps_p][0].value)));
        }
    }
    std::vector<CheckRow> rows{make_row("ehat - echeck = 0", m, diff.r, 1e-6),
                               make_row("ehat = i sgn(t) F-(eps+ + eps-)", m, sgnrow.r, 1e-5)};
    if (m == 0.0) rows.push_back(make_row("ehat_0 = eps- - eps+ (position)", m, m0.r, 1e-6));
    return rows;
}

std::vector<CheckRow> verify_massless_table(const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst w[8];
    for (const auto& u : random_batch(seed, count)) {
        auto X = shell_pairings({u}, 0.0, {ShellItem::eps_p, ShellItem::eps_m, ShellItem::epv_p, ShellItem::epv_m}, cfg);
        const cplx ep = X.single[ShellItem::eps_p][0].value, em = X.single[ShellItem::eps_m][0].value;
        const cplx e = X.single[ShellItem::epv_p][0].value - X.single[ShellItem::epv_m][0].value;
        auto P = shell_pairings({fourier_analytic(u, 1)}, 0.0,
                                {ShellItem::eps_p, ShellItem::eps_m, ShellItem::epv_p, ShellItem::epv_m}, cfg);
        auto M = shell_pairings({fourier_analytic(u, -1)}, 0.0,
                                {ShellItem::eps_p, ShellItem::eps_m, ShellItem::epv_p, ShellItem::epv_m}, cfg);
        const cplx hp = P.single[ShellItem::eps_p][0].value, hm = P.single[ShellItem::eps_m][0].value;
        const cplx cp = M.single[ShellItem::eps_p][0].value, cm = M.single[ShellItem::eps_m][0].value;
        const cplx ehat = P.single[ShellItem::epv_p][0].value - P.single[ShellItem::epv_m][0].value;
        const cplx echeck = M.single[ShellItem::epv_p][0].value - M.single[ShellItem::epv_m][0].value;
        w[0].add(std::abs(hp - (-0.5 * e - 0.5 * kI * (ep + em))));
        w[1].add(std::abs(hm - (0.5 * e - 0.5 * kI * (ep + em))));
        w[2].add(std::abs(cp - (-0.5 * e + 0.5 * kI * (ep + em))));
        w[3].add(std::abs(cm - (0.5 * e + 0.5 * kI * (ep + em))));
        w[4].add(std::abs((hp - hm) + e));
        w[5].add(std::abs((cp - cm) + e));
        w[6].add(std::abs(ehat - (em - ep)));
        w[7].add(std::abs(echeck - (em - ep)));
    }
    return {make_row("epshat+_0 = -e/2 - (i/2)(eps+ + eps-)", 0.0, w[0].r, 1e-6),
            make_row("epshat-_0 = e/2 - (i/2)(eps+ + eps-)", 0.0, w[1].r, 1e-6),
            make_row("epscheck+_0 = -e/2 + (i/2)(eps+ + eps-)", 0.0, w[2].r, 1e-6),
            make_row("epscheck-_0 = e/2 + (i/2)(eps+ + eps-)", 0.0, w[3].r, 1e-6),
            make_row("epshat+_0 - epshat-_0 = -e", 0.0, w[4].r, 1e-6),
            make_row("epscheck+_0 - epscheck-_0 = -e", 0.0, w[5].r, 1e-6),
            make_row("ehat_0 = eps- - eps+", 0.0, w[6].r, 1e-6),
            make_row("echeck_0 = eps- - eps+", 0.0, w[7].r, 1e-6)};
}

}  // namespace mkp
