#include "minkprop/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace mkp {

namespace {

const char* const kTagNames[kNumPropTags] = {"Dplus", "Dminus", "D", "Dcirc", "Dbullet", "Dret", "Dadv", "DF"};

int idx(PropTag t) { return int(t); }

struct Acc {
    PairingResult r{0.0, 0.0, 0, true};
    Acc& add(cplx c, const PairingResult& p) {
        r.value += c * p.value;
        r.abs_err += std::abs(c) * p.abs_err;
        r.evaluations += p.evaluations;
        r.converged = r.converged && p.converged;
        return *this;
    }
};

PairingResult lin(std::initializer_list<std::pair<cplx, PairingResult>> parts) {
    Acc a;
    for (const auto& [c, p] : parts) a.add(c, p);
    return a.r;
}

PairingResult shift(const PairingResult& p, cplx c) {
    PairingResult q = p;
    q.value += c;
    return q;
}

PropValues assemble(const PairingResult& Dp, const PairingResult& Dm, const PairingResult& bullet) {
    PropValues v;
    v[idx(PropTag::Dplus)] = Dp;
    v[idx(PropTag::Dminus)] = Dm;
    v[idx(PropTag::D)] = lin({{1.0, Dp}, {1.0, Dm}});
    v[idx(PropTag::Dcirc)] = lin({{1.0, Dp}, {-1.0, Dm}});
    v[idx(PropTag::Dbullet)] = bullet;
    v[idx(PropTag::Dret)] = lin({{1.0, bullet}, {0.5, Dp}, {0.5, Dm}});
    v[idx(PropTag::Dadv)] = lin({{1.0, bullet}, {-0.5, Dp}, {-0.5, Dm}});
    v[idx(PropTag::DF)] = lin({{1.0, bullet}, {0.5, Dp}, {-0.5, Dm}});
    return v;
}

std::vector<PropValues> all_kinds_impl(double m, const std::vector<TestFn>& us, bool need_pv, const QuadConfig& cfg,
                                       const EngineOptions& opt) {
    std::vector<TestFn> fp, fm;
    for (const auto& u : us) {
        fp.push_back(fourier_analytic(u, 1));
        fm.push_back(fourier_analytic(u, -1));
    }
    auto P = shell_pairings(fp, m, {ShellItem::eps_p}, cfg, opt);
    std::vector<ShellItem> items{ShellItem::eps_p};
    if (need_pv) items.insert(items.end(), {ShellItem::epv_p, ShellItem::epv_m});
    auto M = shell_pairings(fm, m, items, cfg, opt);
    std::vector<PropValues> out;
    for (std::size_t f = 0; f < us.size(); ++f) {
        const PairingResult Dp = P.single[ShellItem::eps_p][f];
        const PairingResult Dm = lin({{-1.0, M.single[ShellItem::eps_p][f]}});
        PairingResult bullet{0.0, 0.0, 0, true};
        if (need_pv) {
            // <i D., u> = -1/2 <e_m, F- u>
            bullet = lin({{0.5 * kI, M.single[ShellItem::epv_p][f]}, {-0.5 * kI, M.single[ShellItem::epv_m][f]}});
        }
        out.push_back(assemble(Dp, Dm, bullet));
    }
    return out;
}

DigammaCombo base_combo(PropTag base, Window w) {
    switch (base) {
        case PropTag::Dplus: return digamma_combo(1.0, 0.0, w);
        case PropTag::Dminus: return digamma_combo(0.0, -1.0, w);
        case PropTag::D: return digamma_combo(1.0, -1.0, w);
        case PropTag::Dcirc: return digamma_combo(1.0, 1.0, w);
        default: throw std::invalid_argument("windowed pairing needs a base kind among Dplus, Dminus, D, Dcirc");
    }
}

Window to_window(TimeWindow w) {
    switch (w) {
        case TimeWindow::future: return Window::future;
        case TimeWindow::past: return Window::past;
        case TimeWindow::sign: return Window::sign;
    }
    return Window::full;
}

DigammaCombo scaled(DigammaCombo c, cplx s) {
    return DigammaCombo{s * c.plus_pos, s * c.plus_neg, s * c.minus_pos, s * c.minus_neg};
}

DigammaCombo sum(DigammaCombo a, DigammaCombo b) {
    return DigammaCombo{a.plus_pos + b.plus_pos, a.plus_neg + b.plus_neg, a.minus_pos + b.minus_pos,
                        a.minus_neg + b.minus_neg};
}

std::vector<TestFn> random_batch(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<TestFn> us;
    for (int n = 0; n < count; ++n) us.push_back(random_testfn(rng, 4));
    return us;
}

struct Worst {
    double r = 0.0;
    void add(double x) { r = std::max(r, x); }
};

CheckRow row(const std::string& id, double m, double r, double tol, double extra = 0.0) {
    return CheckRow{id, m, r, tol, r <= tol, extra};
}

constexpr double kLadder[] = {0.5, 0.25, 0.125, 0.0625};

TestFn ladder_fn(double sigma_t) {
    TestFn u = make_testfn({Term{1.0 / std::sqrt(2.0 * kPi * sigma_t * sigma_t), {0, 0, 0, 0}}}, {0, 0, 0, 0},
                           {sigma_t, 4.0, 4.0, 4.0}, {0, 0, 0, 0});
    return u;
}

}  // namespace

PropTag parse_prop_tag(const std::string& name) {
    for (int i = 0; i < kNumPropTags; ++i)
        if (name == kTagNames[i]) return PropTag(i);
    throw std::invalid_argument("unknown propagator kind: " + name);
}

std::string prop_name(PropTag tag) { return kTagNames[idx(tag)]; }

bool is_elementary(PropTag tag) {
    return tag == PropTag::Dbullet || tag == PropTag::Dret || tag == PropTag::Dadv || tag == PropTag::DF;
}

PairingResult pair_propagator(const PropKind& k, const TestFn& u, const QuadConfig& cfg, const EngineOptions& opt) {
    if (k.mass < 0.0) throw std::invalid_argument("negative mass");
    return all_kinds_impl(k.mass, {u}, is_elementary(k.tag), cfg, opt)[0][idx(k.tag)];
}

PropValues pair_all_kinds(double m, const TestFn& u, const QuadConfig& cfg, const EngineOptions& opt) {
    return all_kinds_impl(m, {u}, true, cfg, opt)[0];
}

std::vector<PropValues> pair_all_kinds_batch(double m, const std::vector<TestFn>& us, const QuadConfig& cfg,
                                             const EngineOptions& opt) {
    return all_kinds_impl(m, us, true, cfg, opt);
}

PairingResult pair_windowed(PropTag base, TimeWindow w, double m, const TestFn& u, const QuadConfig& cfg) {
    return pair_digamma({base_combo(base, to_window(w))}, m, {u}, cfg)[0];
}

std::vector<PropValues> pair_all_kinds_windowed_batch(double m, const std::vector<TestFn>& us, const QuadConfig& cfg) {
    std::vector<DigammaCombo> combos(kNumPropTags);
    combos[idx(PropTag::Dplus)] = base_combo(PropTag::Dplus, Window::full);
    combos[idx(PropTag::Dminus)] = base_combo(PropTag::Dminus, Window::full);
    combos[idx(PropTag::D)] = base_combo(PropTag::D, Window::full);
    combos[idx(PropTag::Dcirc)] = base_combo(PropTag::Dcirc, Window::full);
    combos[idx(PropTag::Dbullet)] = scaled(base_combo(PropTag::D, Window::sign), 0.5);
    combos[idx(PropTag::Dret)] = base_combo(PropTag::D, Window::future);
    combos[idx(PropTag::Dadv)] = scaled(base_combo(PropTag::D, Window::past), -1.0);
    combos[idx(PropTag::DF)] =
        sum(base_combo(PropTag::Dplus, Window::future), scaled(base_combo(PropTag::Dminus, Window::past), -1.0));
    const auto r = pair_digamma(combos, m, us, cfg);
    std::vector<PropValues> out(us.size());
    for (std::size_t f = 0; f < us.size(); ++f)
        for (int i = 0; i < kNumPropTags; ++i) out[f][i] = r[std::size_t(i) * us.size() + f];
    return out;
}

PropValues pair_all_kinds_windowed(double m, const TestFn& u, const QuadConfig& cfg) {
    return pair_all_kinds_windowed_batch(m, {u}, cfg)[0];
}

PropValues pair_all_kinds_massless(const TestFn& u, const QuadConfig& cfg) {
    auto X = shell_pairings({u}, 0.0, {ShellItem::eps_p, ShellItem::eps_m, ShellItem::epv_p, ShellItem::epv_m}, cfg);
    const PairingResult ep = X.single[ShellItem::eps_p][0], em = X.single[ShellItem::eps_m][0];
    const PairingResult e = lin({{1.0, X.single[ShellItem::epv_p][0]}, {-1.0, X.single[ShellItem::epv_m][0]}});
    const cplx h = 0.5 * kI;
    PropValues v;
    v[idx(PropTag::Dplus)] = lin({{-0.5, e}, {-h, ep}, {-h, em}});
    v[idx(PropTag::Dminus)] = lin({{0.5, e}, {-h, ep}, {-h, em}});
    v[idx(PropTag::D)] = lin({{-kI, ep}, {-kI, em}});
    v[idx(PropTag::Dcirc)] = lin({{-1.0, e}});
    v[idx(PropTag::Dbullet)] = lin({{-h, ep}, {h, em}});
    v[idx(PropTag::Dret)] = lin({{-kI, ep}});
    v[idx(PropTag::Dadv)] = lin({{kI, em}});
    v[idx(PropTag::DF)] = lin({{-0.5, e}, {-h, ep}, {h, em}});
    return v;
}

PairingResult pair_massless_closed(PropTag tag, const TestFn& u, const QuadConfig& cfg) {
    return pair_all_kinds_massless(u, cfg)[idx(tag)];
}

PairingResult kg_residual(const PropKind& k, const TestFn& u, const QuadConfig& cfg) {
    const PairingResult p = pair_propagator(k, dalembertian_plus_m2(u, k.mass), cfg);
    if (!is_elementary(k.tag)) return p;
    const double origin[4] = {0, 0, 0, 0};
    return shift(lin({{kI, p}}), -eval(u, origin));
}

PairingResult time_derivative_pair(const PropKind& k, const TestFn& u, const QuadConfig& cfg) {
    return lin({{-1.0, pair_propagator(k, derivative(u, 0), cfg)}});
}

LadderResult time_derivative_limit(PropTag tag, double m, const QuadConfig& cfg) {
    LadderResult L;
    switch (tag) {
        case PropTag::D: L.target = -kI; break;
        case PropTag::Dplus:
        case PropTag::Dminus: L.target = -0.5 * kI; break;
        case PropTag::Dcirc: L.target = 0.0; break;
        default: throw std::invalid_argument("time-derivative limit defined for Dplus, Dminus, D, Dcirc");
    }
    std::vector<double> x;
    for (double s : kLadder) {
        L.ladder.push_back(time_derivative_pair(PropKind{tag, m}, ladder_fn(s), cfg).value);
        x.push_back(s * s);
    }
    // Neville extrapolation to sigma^2 = 0 through all rungs.
    std::vector<cplx> p = L.ladder;
    const int n = int(p.size());
    for (int j = 1; j < n; ++j)
        for (int i = n - 1; i >= j; --i) p[i] = (x[i] * p[i - 1] - x[i - j] * p[i]) / (x[i] - x[i - j]);
    L.extrapolated = p[n - 1];
    L.residual = std::abs(L.extrapolated - L.target);
    return L;
}

std::vector<CheckRow> verify_propagator_identities(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    Worst ret_adv, mean, wret, wadv, wF, wbul, wplus, odd, even, pm, retadv, bul_even, F_even;
    for (const auto& u : random_batch(seed, count)) {
        const PropValues S = pair_all_kinds(m, u, cfg);
        const PropValues W = pair_all_kinds_windowed(m, u, cfg);
        const PropValues R = pair_all_kinds(m, reflect(u), cfg);
        auto v = [](const PropValues& p, PropTag t) { return p[idx(t)].value; };
        ret_adv.add(std::abs(v(W, PropTag::Dret) - v(W, PropTag::Dadv) - v(S, PropTag::D)));
        mean.add(std::abs(0.5 * (v(W, PropTag::Dret) + v(W, PropTag::Dadv)) - v(S, PropTag::Dbullet)));
        wret.add(std::abs(v(W, PropTag::Dret) - v(S, PropTag::Dret)));
        wadv.add(std::abs(v(W, PropTag::Dadv) - v(S, PropTag::Dadv)));
        wF.add(std::abs(v(W, PropTag::DF) - v(S, PropTag::DF)));
        wbul.add(std::abs(v(W, PropTag::Dbullet) - v(S, PropTag::Dbullet)));
        wplus.add(std::max(std::abs(v(W, PropTag::Dplus) - v(S, PropTag::Dplus)),
                           std::abs(v(W, PropTag::Dminus) - v(S, PropTag::Dminus))));
        odd.add(std::abs(v(R, PropTag::D) + v(S, PropTag::D)));
        even.add(std::abs(v(R, PropTag::Dcirc) - v(S, PropTag::Dcirc)));
        pm.add(std::abs(v(R, PropTag::Dplus) + v(S, PropTag::Dminus)));
        retadv.add(std::abs(v(R, PropTag::Dret) - v(S, PropTag::Dadv)));
        bul_even.add(std::abs(v(R, PropTag::Dbullet) - v(S, PropTag::Dbullet)));
        F_even.add(std::abs(v(R, PropTag::DF) - v(S, PropTag::DF)));
    }
    std::vector<CheckRow> rows{
        row("ret - adv = D", m, ret_adv.r, 1e-6),
        row("(ret + adv)/2 = bullet", m, mean.r, 1e-6),
        row("ret = H(t) D", m, wret.r, 1e-6),
        row("adv = -H(-t) D", m, wadv.r, 1e-6),
        row("F = H(t) D+ - H(-t) D-", m, wF.r, 1e-6),
        row("bullet = sgn(t) D / 2", m, wbul.r, 1e-6),
        row("D+- shell route = sine-radial route", m, wplus.r, 1e-6),
        row("D(-x) = -D(x)", m, odd.r, 1e-7),
        row("Dcirc(-x) = Dcirc(x)", m, even.r, 1e-7),
        row("D+(-x) = -D-(x)", m, pm.r, 1e-7),
        row("ret(-x) = adv(x)", m, retadv.r, 1e-7),
        row("bullet(-x) = bullet(x)", m, bul_even.r, 1e-7),
        row("F(-x) = F(x)", m, F_even.r, 1e-7),
    };
    Worst d0, dc0;
    for (double s : kLadder) {
        const TestFn u = ladder_fn(s);
        d0.add(std::abs(pair_propagator(PropKind{PropTag::D, m}, u, cfg).value));
        dc0.add(std::abs(time_derivative_pair(PropKind{PropTag::Dcirc, m}, u, cfg).value));
    }
    rows.push_back(row("D(0,x) = 0 (t-even u)", m, d0.r, 1e-7));
    rows.push_back(row("Dcirc_0(0,x) = 0 (t-even u)", m, dc0.r, 1e-7));
    for (PropTag t : {PropTag::D, PropTag::Dplus, PropTag::Dminus}) {
        const auto L = time_derivative_limit(t, m, cfg);
        const std::string target = t == PropTag::D ? "-i delta(x)" : "-(i/2) delta(x)";
        rows.push_back(row(prop_name(t) + "_0(0,x) = " + target, m, L.residual, 1e-6, std::abs(L.ladder.back() - L.target)));
    }
    return rows;
}

std::vector<CheckRow> verify_kg_residuals(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    std::array<Worst, kNumPropTags> w;
    const double origin[4] = {0, 0, 0, 0};
    for (const auto& u : random_batch(seed, count)) {
        const PropValues S = pair_all_kinds(m, dalembertian_plus_m2(u, m), cfg);
        const cplx u0 = eval(u, origin);
        const double scale = std::abs(u0) + l1_norm(u);
        for (int i = 0; i < kNumPropTags; ++i) {
            if (is_elementary(PropTag(i)))
                w[i].add(std::abs(kI * S[i].value - u0) / scale);
            else
                w[i].add(std::abs(S[i].value));
        }
    }
    std::vector<CheckRow> rows;
    for (int i = 0; i < kNumPropTags; ++i) {
        const PropTag t = PropTag(i);
        if (is_elementary(t))
            rows.push_back(row("(box + m^2) i " + prop_name(t) + " = delta", m, w[i].r, 1e-6));
        else
            rows.push_back(row("(box + m^2) " + prop_name(t) + " = 0", m, w[i].r, 1e-7));
    }
    return rows;
}

std::vector<CheckRow> verify_massless_cross(const QuadConfig& cfg, std::uint64_t seed, int count) {
    std::array<Worst, kNumPropTags> w;
    for (const auto& u : random_batch(seed, count)) {
        const PropValues A = pair_all_kinds(0.0, u, cfg);
        const PropValues B = pair_all_kinds_massless(u, cfg);
        const double floor = 1e-8 * l1_norm(u);
        for (int i = 0; i < kNumPropTags; ++i)
            w[i].add(std::abs(A[i].value - B[i].value) / std::max(std::abs(B[i].value), floor));
    }
    std::vector<CheckRow> rows;
    for (int i = 0; i < kNumPropTags; ++i)
        rows.push_back(row(prop_name(PropTag(i)) + " momentum route = light-cone route", 0.0, w[i].r, 1e-7));
    return rows;
}

std::vector<CheckRow> verify_microcausality(double m, const QuadConfig& cfg) {
    Worst outside;
    double inside = 0.0;
    const double dirs[4][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)}};
    for (double s : {0.5, 1.0}) {
        for (const auto& d : dirs) {
            TestFn u = gaussian(4, s);
            u.center = {0.0, 8 * s * d[0], 8 * s * d[1], 8 * s * d[2]};
            outside.add(std::abs(pair_propagator(PropKind{PropTag::D, m}, u, cfg).value) / l1_norm(u));
        }
        TestFn v = gaussian(4, s);
        v.center = {8 * s, 8 * s, 0.0, 0.0};
        inside = std::max(inside, std::abs(pair_propagator(PropKind{PropTag::D, m}, v, cfg).value) / l1_norm(v));
    }
    return {row("D vanishes 8 sigma outside the light cone", m, outside.r, 1e-6, inside)};
}

std::vector<TableRow> propagator_table(PropTag tag, double m, const std::vector<double>& ts,
                                       const std::vector<double>& rs, double sigma, const QuadConfig& cfg) {
    std::vector<TableRow> out;
    const double norm = std::pow(2.0 * kPi * sigma * sigma, -2.0);
    for (double t : ts)
        for (double r : rs) {
            TestFn u = scale(gaussian(4, sigma), norm);
            u.center = {t, r, 0.0, 0.0};
            out.push_back(TableRow{t, r, pair_propagator(PropKind{tag, m}, u, cfg)});
        }
    return out;
}

}  // namespace mkp
