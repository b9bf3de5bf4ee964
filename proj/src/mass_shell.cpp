#include "minkprop/mass_shell.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mkp {

namespace {

double time_scale(const TimeAxis& ax) {
    double s = 1.0;
    for (int a = 0; a <= ax.amax; ++a) s = std::max(s, std::pow((a + 1.0) * ax.sigma * ax.sigma, 0.5 * a));
    return ax.sigma * std::sqrt(2.0 * kPi) * s;
}

int item_width(ShellItem it, int K) { return it == ShellItem::opp ? 4 * K : 1; }

}  // namespace

int opp_index(int s1, int s2) { return (s1 > 0 ? 2 : 0) + (s2 > 0 ? 1 : 0); }

MomShellDist parse_dist(const std::string& name_in, double mass) {
    MomShellDist d;
    d.mass = Mass(mass);
    std::string name = name_in;
    const auto at = name.find("@pos");
    if (at != std::string::npos) {
        if (at + 4 != name.size()) throw std::invalid_argument("bad distribution name: " + name_in);
        d.position = true;
        name = name.substr(0, at);
        if (mass != 0.0) throw std::invalid_argument("position-space twins require mass 0");
    }
    auto sign_of = [&](char c) {
        if (c == '+') return 1;
        if (c == '-') return -1;
        throw std::invalid_argument("bad sign in distribution name: " + name_in);
    };
    if (name == "e") {
        d.family = Family::e_full;
    } else if (name.size() == 5 && name.rfind("opp", 0) == 0) {
        d.family = Family::opp;
        d.s1 = sign_of(name[3]);
        d.s2 = sign_of(name[4]);
    } else if (name.size() == 4 && name.rfind("eps", 0) == 0) {
        d.family = Family::eps;
        d.s1 = sign_of(name[3]);
    } else if (name.size() == 4 && name.rfind("epv", 0) == 0) {
        d.family = Family::e_pv;
        d.s1 = sign_of(name[3]);
    } else if (name.size() == 7 && name.rfind("omegaL", 0) == 0) {
        d.family = Family::omega_leray;
        d.s1 = sign_of(name[6]);
    } else if (name.size() == 6 && name.rfind("omega", 0) == 0) {
        d.family = Family::omega;
        d.s1 = sign_of(name[5]);
    } else {
        throw std::invalid_argument("unknown distribution: " + name_in);
    }
    if (d.position && (d.family == Family::omega || d.family == Family::omega_leray))
        throw std::invalid_argument("no position-space twin for " + name_in);
    return d;
}

std::string dist_name(const MomShellDist& d) {
    auto sg = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
    std::string n;
    switch (d.family) {
        case Family::omega_leray: n = "omegaL" + sg(d.s1); break;
        case Family::omega: n = "omega" + sg(d.s1); break;
        case Family::eps: n = "eps" + sg(d.s1); break;
        case Family::e_pv: n = "epv" + sg(d.s1); break;
        case Family::e_full: n = "e"; break;
        case Family::opp: n = "opp" + sg(d.s1) + sg(d.s2); break;
    }
    return d.position ? n + "@pos" : n;
}

ShellBatch shell_pairings(const std::vector<TestFn>& fns, double m, const std::vector<ShellItem>& items,
                          const QuadConfig& cfg, const EngineOptions& opt) {
    const int K = cfg.ladder_count;
    int nout = 0;
    std::vector<int> offset;
    for (auto it : items) {
        offset.push_back(nout);
        nout += item_width(it, K);
    }
    ShellKernel kern;
    kern.n_out = nout;
    kern.eval = [&](double rho, double E, const TimeAxis& ax, cplx* T, double* err, long* evals) {
        (void)rho;
        const int na = ax.amax + 1;
        std::vector<cplx> h(na);
        const double tol_t = 1e-13 * time_scale(ax);
        BatchFn num = [&](const double* x, int nx, cplx* o) { ax.eval_batch(x, nx, o); };
        double e_acc = 0.0;
        long ev = 0;
        auto range = [&](double P, double& a, double& b) {
            a = std::min(ax.lo(), P - 0.5);
            b = std::max(ax.hi(), P + 0.5);
        };
        for (std::size_t ii = 0; ii < items.size(); ++ii) {
            cplx* dst = T + std::size_t(offset[ii]) * na;
            switch (items[ii]) {
                case ShellItem::omega_leray_p:
                case ShellItem::omega_leray_m:
                case ShellItem::omega_p:
                case ShellItem::omega_m:
                case ShellItem::eps_p:
                case ShellItem::eps_m: {
                    const auto it = items[ii];
                    const int s = (it == ShellItem::omega_leray_p || it == ShellItem::omega_p || it == ShellItem::eps_p)
                                      ? 1
                                      : -1;
                    double w = 1.0;
                    if (it == ShellItem::omega_p || it == ShellItem::omega_m) w = s / (2.0 * E);
                    if (it == ShellItem::eps_p || it == ShellItem::eps_m) w = s / (4.0 * kPi * E);
                    ax.eval(s * E, h.data());
                    for (int a = 0; a < na; ++a) dst[a] = w * h[a];
                    ++ev;
                    break;
                }
                case ShellItem::epv_p:
                case ShellItem::epv_m: {
                    const int s = items[ii] == ShellItem::epv_p ? 1 : -1;
                    const double P = s * E;
                    double a, b;
                    range(P, a, b);
                    auto r = integrate_pv_vec(num, na, P, a, b, cfg, tol_t);
                    const double w = 1.0 / (4.0 * kPi * kPi * E);
                    for (int q = 0; q < na; ++q) dst[q] = w * r.value[q];
                    e_acc += w * r.abs_err;
                    ev += r.evaluations;
                    break;
                }
                case ShellItem::opp: {
                    for (int s1 : {-1, 1}) {
                        const double P = -s1 * E;
                        double a, b;
                        range(P, a, b);
                        auto r = integrate_damped_ladder(num, na, P, a, b, cfg, tol_t);
                        e_acc += r.abs_err / E;
                        ev += r.evaluations;
                        for (int s2 : {-1, 1}) {
                            const int fam = opp_index(s1, s2);
                            const auto& lad = s2 > 0 ? r.plus : r.minus;
                            for (int k = 0; k < K; ++k)
                                for (int q = 0; q < na; ++q) dst[std::size_t(fam * K + k) * na + q] = lad[k][q] / E;
                        }
                    }
                    break;
                }
            }
        }
        *err = e_acc;
        *evals = ev;
    };
    auto eo = shell_integrate(fns, m, kern, cfg, opt);
    ShellBatch out;
    out.nfn = eo.nfn;
    out.evaluations = eo.evaluations;
    out.converged = eo.converged;
    for (std::size_t ii = 0; ii < items.size(); ++ii) {
        if (items[ii] == ShellItem::opp) {
            for (int fam = 0; fam < 4; ++fam) {
                out.opp[fam].resize(eo.nfn);
                out.opp_ladder[fam].resize(eo.nfn);
                for (int f = 0; f < eo.nfn; ++f) {
                    std::vector<cplx> lad(K);
                    for (int k = 0; k < K; ++k) lad[k] = eo.at(offset[ii] + fam * K + k, f);
                    auto ex = richardson(lad, cfg.ladder_ratio, 1, 1);
                    out.opp_ladder[fam][f] = lad;
                    out.opp_spread = std::max(out.opp_spread, ex.spread);
                    out.opp[fam][f] = PairingResult{ex.value, eo.abs_err + ex.spread, eo.evaluations, eo.converged};
                }
            }
        } else {
            auto& v = out.single[items[ii]];
            v.resize(eo.nfn);
            for (int f = 0; f < eo.nfn; ++f)
                v[f] = PairingResult{eo.at(offset[ii], f), eo.abs_err, eo.evaluations, eo.converged};
        }
    }
    return out;
}

namespace {

PairingResult pair_generic(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg) {
    if (u.dim != 4) throw std::invalid_argument("mass-shell pairings require dim 4");
    const double m = d.position ? 0.0 : d.mass;
    const bool plus = d.s1 > 0;
    switch (d.family) {
        case Family::omega_leray: {
            auto it = plus ? ShellItem::omega_leray_p : ShellItem::omega_leray_m;
            return shell_pairings({u}, m, {it}, cfg).single[it][0];
        }
        case Family::omega: {
            auto it = plus ? ShellItem::omega_p : ShellItem::omega_m;
            return shell_pairings({u}, m, {it}, cfg).single[it][0];
        }
        case Family::eps: {
            auto it = plus ? ShellItem::eps_p : ShellItem::eps_m;
            return shell_pairings({u}, m, {it}, cfg).single[it][0];
        }
        case Family::e_pv: {
            auto it = plus ? ShellItem::epv_p : ShellItem::epv_m;
            return shell_pairings({u}, m, {it}, cfg).single[it][0];
        }
        case Family::e_full: {
            auto b = shell_pairings({u}, m, {ShellItem::epv_p, ShellItem::epv_m}, cfg);
            const auto& p = b.single[ShellItem::epv_p][0];
            const auto& q = b.single[ShellItem::epv_m][0];
            return PairingResult{p.value - q.value, p.abs_err + q.abs_err, p.evaluations, b.converged};
        }
        case Family::opp: {
            auto b = shell_pairings({u}, m, {ShellItem::opp}, cfg);
            return b.opp[opp_index(d.s1, d.s2)][0];
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

PairingResult pair_momentum(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg) {
    if (d.position) throw std::invalid_argument("pair_momentum called with a position-space density");
    return pair_generic(d, u, cfg);
}

PairingResult pair_position_m0(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg) {
    if (!d.position) throw std::invalid_argument("pair_position_m0 called with a momentum-space density");
    if (d.mass != 0.0) throw std::invalid_argument("position-space twins require mass 0");
    return pair_generic(d, u, cfg);
}

PairingResult pair_shell(const MomShellDist& d, const TestFn& u, const QuadConfig& cfg) {
    return d.position ? pair_position_m0(d, u, cfg) : pair_momentum(d, u, cfg);
}

std::vector<CheckRow> check_opp_decomposition(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    const double c = 4.0 * kPi * kPi;
    double r_mm = 0, r_mp = 0, r_pm = 0, r_pp = 0, r_diff = 0, r_sum = 0, spread = 0, tol = 0;
    for (int n = 0; n < count; ++n) {
        TestFn u = random_testfn(rng, 4);
        auto b = shell_pairings({u}, m, {ShellItem::eps_p, ShellItem::eps_m, ShellItem::epv_p, ShellItem::epv_m,
                                         ShellItem::opp},
                                cfg);
        const cplx ep = b.single[ShellItem::eps_p][0].value, em = b.single[ShellItem::eps_m][0].value;
        const cplx vp = b.single[ShellItem::epv_p][0].value, vm = b.single[ShellItem::epv_m][0].value;
        const cplx omm = b.opp[opp_index(-1, -1)][0].value, omp = b.opp[opp_index(-1, 1)][0].value;
        const cplx opm = b.opp[opp_index(1, -1)][0].value, opp = b.opp[opp_index(1, 1)][0].value;
        const double scale = 1.0;
        r_mm = std::max(r_mm, std::abs(omm - c * (vp + kI * ep)) / scale);
        r_mp = std::max(r_mp, std::abs(omp - c * (vp - kI * ep)) / scale);
        r_pp = std::max(r_pp, std::abs(opp - c * (vm + kI * em)) / scale);
        r_pm = std::max(r_pm, std::abs(opm - c * (vm - kI * em)) / scale);
        r_diff = std::max(r_diff, std::abs((opp - opm) - 2.0 * c * kI * em));
        r_sum = std::max(r_sum, std::abs((omm + omp) - 2.0 * c * vp));
        spread = std::max(spread, b.opp_spread);
        tol = 1e-5;
    }
    auto row = [&](const std::string& id, double r) { return CheckRow{id, m, r, tol, r <= tol, spread}; };
    std::vector<CheckRow> rows{row("opp(-,-) = (2pi)^2 (e+ + i eps+)", r_mm), row("opp(-,+) = (2pi)^2 (e+ - i eps+)", r_mp),
                               row("opp(+,+) = (2pi)^2 (e- + i eps-)", r_pp), row("opp(+,-) = (2pi)^2 (e- - i eps-)", r_pm),
                               row("opp(+,+) - opp(+,-) = 2 (2pi)^2 i eps-", r_diff),
                               row("opp(-,-) + opp(-,+) = 2 (2pi)^2 e+", r_sum)};
    rows.push_back(CheckRow{"ladder extrapolation spread", m, spread, 1e-6, spread <= 1e-6, spread});
    return rows;
}

}  // namespace mkp
