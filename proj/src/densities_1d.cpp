#include "minkprop/densities_1d.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace mkp {

Dist1d Dist1d::delta(double b) {
    Dist1d d;
    d.kind = Kind::delta;
    d.b = b;
    return d;
}
Dist1d Dist1d::heaviside(int orientation) {
    Dist1d d;
    d.kind = Kind::heaviside;
    d.side = orientation >= 0 ? 1 : -1;
    return d;
}
Dist1d Dist1d::sign() {
    Dist1d d;
    d.kind = Kind::sign;
    return d;
}
Dist1d Dist1d::pv_shift(double a) {
    Dist1d d;
    d.kind = Kind::pv_shift;
    d.a = a;
    return d;
}
Dist1d Dist1d::char_interval(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("char_interval requires a < b");
    Dist1d d;
    d.kind = Kind::char_interval;
    d.a = a;
    d.b = b;
    return d;
}
Dist1d Dist1d::damped_pole(double a, int side, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("damped_pole requires eps > 0");
    Dist1d d;
    d.kind = Kind::damped_pole;
    d.a = a;
    d.side = side >= 0 ? 1 : -1;
    d.eps = eps;
    return d;
}

namespace {

void require_1d(const TestFn& u) {
    if (u.dim != 1) throw std::invalid_argument("one-dimensional pairing requires a dim 1 test function");
}

std::vector<double> support_breaks(const TestFn& u, double lo, double hi) {
    const double c = u.center[0], s = u.widths[0];
    std::vector<double> br;
    for (double q : {-40.0, -16.0, -8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 16.0, 40.0}) {
        const double x = c + q * s;
        if (x > lo && x < hi) br.push_back(x);
    }
    br.push_back(lo);
    br.push_back(hi);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

}  // namespace

PairingResult integrate_against(const TestFn& u, const ScalarFn& g, double lo_cut, double hi_cut,
                                const QuadConfig& cfg) {
    require_1d(u);
    const double lo = std::max(lo_cut, u.center[0] - 40.0 * u.widths[0]);
    const double hi = std::min(hi_cut, u.center[0] + 40.0 * u.widths[0]);
    if (!(hi > lo)) return {};
    BatchFn f = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = g(x[k]) * eval(u, &x[k]);
    };
    const double tol = cfg.abs_tol * std::max(l1_norm(u), 1e-300);
    auto r = integrate_vec(f, 1, support_breaks(u, lo, hi), tol, cfg.rel_tol, cfg.max_subdivisions);
    return PairingResult{r.value[0], r.abs_err, r.evaluations, r.converged};
}

PairingResult pv_against(const TestFn& u, const ScalarFn& g, double pole, const QuadConfig& cfg) {
    require_1d(u);
    const double lo = std::min(u.center[0] - 40.0 * u.widths[0], pole - 1.0);
    const double hi = std::max(u.center[0] + 40.0 * u.widths[0], pole + 1.0);
    BatchFn f = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = g(x[k]) * eval(u, &x[k]);
    };
    const double tol = cfg.abs_tol * std::max(l1_norm(u), 1e-300);
    auto r = integrate_pv_vec(f, 1, pole, lo, hi, cfg, tol);
    return PairingResult{r.value[0], r.abs_err, r.evaluations, r.converged};
}

DampedLimit damped_pole_limit(const TestFn& u, double a, int side, const QuadConfig& cfg) {
    require_1d(u);
    const double lo = std::min(u.center[0] - 40.0 * u.widths[0], a - 1.0);
    const double hi = std::max(u.center[0] + 40.0 * u.widths[0], a + 1.0);
    BatchFn f = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = eval(u, &x[k]);
    };
    const double tol = cfg.abs_tol * std::max(l1_norm(u), 1e-300);
    auto lad = integrate_damped_ladder(f, 1, a, lo, hi, cfg, tol);
    // 1/(x - a - side i eps) corresponds to eta = -side eps
    std::vector<cplx> seq;
    for (int k = 0; k < cfg.ladder_count; ++k) seq.push_back(side > 0 ? lad.minus[k][0] : lad.plus[k][0]);
    auto ex = richardson(seq, cfg.ladder_ratio, 1, 1);
    return DampedLimit{ex.value, ex.spread, lad.abs_err + ex.spread};
}

PairingResult pair_1d(const Dist1d& d, const TestFn& u, const QuadConfig& cfg) {
    require_1d(u);
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto one = [](double) { return cplx(1.0); };
    switch (d.kind) {
        case Dist1d::Kind::delta: {
            const double x = d.b;
            return PairingResult{eval(u, &x), 0.0, 1, true};
        }
        case Dist1d::Kind::heaviside:
            return d.side > 0 ? integrate_against(u, one, 0.0, inf, cfg) : integrate_against(u, one, -inf, 0.0, cfg);
        case Dist1d::Kind::sign: {
            auto p = integrate_against(u, one, 0.0, inf, cfg);
            auto m = integrate_against(u, one, -inf, 0.0, cfg);
            return PairingResult{p.value - m.value, p.abs_err + m.abs_err, p.evaluations + m.evaluations,
                                 p.converged && m.converged};
        }
        case Dist1d::Kind::pv_shift:
            return pv_against(u, one, d.a, cfg);
        case Dist1d::Kind::char_interval:
            return integrate_against(u, one, d.a, d.b, cfg);
        case Dist1d::Kind::damped_pole: {
            const cplx z(d.a, d.side * d.eps);
            std::vector<double> br{u.center[0] - 40.0 * u.widths[0], u.center[0] + 40.0 * u.widths[0]};
            for (double q = 1.0; q < 1e4; q *= 4.0) {
                br.push_back(d.a - q * d.eps);
                br.push_back(d.a + q * d.eps);
            }
            br.push_back(d.a);
            std::sort(br.begin(), br.end());
            br.erase(std::unique(br.begin(), br.end()), br.end());
            BatchFn f = [&](const double* x, int nx, cplx* o) {
                for (int k = 0; k < nx; ++k) o[k] = eval(u, &x[k]) / (x[k] - z);
            };
            const double tol = cfg.abs_tol * std::max(l1_norm(u), 1e-300);
            auto r = integrate_vec(f, 1, br, tol, cfg.rel_tol, cfg.max_subdivisions);
            return PairingResult{r.value[0], r.abs_err, r.evaluations, r.converged};
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<CheckRow> verify_ft_table(const QuadConfig& cfg, std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<TestFn> us;
    for (int n = 0; n < count; ++n) us.push_back(random_testfn(rng, 1));
    constexpr double inf = std::numeric_limits<double>::infinity();
    const double rt2pi = std::sqrt(2.0 * kPi);
    const double b0 = 0.7, alpha = 0.9, a0 = 0.6, ia = -0.5, ib = 1.2;

    struct Row {
        std::string name;
        std::function<cplx(const TestFn& u, int s)> lhs, rhs;
    };
    std::vector<Row> rows;
    auto lhs_pair = [&](Dist1d d) {
        return [=, &cfg](const TestFn& u, int s) { return pair_1d(d, fourier_analytic(u, s), cfg).value; };
    };
    rows.push_back({"delta_b", lhs_pair(Dist1d::delta(b0)), [&](const TestFn& u, int s) {
                        return integrate_against(u, [&](double y) { return std::polar(1.0 / rt2pi, -s * y * b0); }, -inf,
                                                 inf, cfg)
                            .value;
                    }});
    rows.push_back({"plane_wave",
                    [&](const TestFn& u, int s) {
                        TestFn fu = fourier_analytic(u, s);
                        return integrate_against(fu, [&](double x) { return std::polar(1.0, alpha * x); }, -inf, inf,
                                                 cfg)
                            .value;
                    },
                    [&](const TestFn& u, int s) {
                        const double x = s * alpha;
                        return rt2pi * eval(u, &x);
                    }});
    rows.push_back({"pv_shift", lhs_pair(Dist1d::pv_shift(a0)), [&](const TestFn& u, int s) {
                        auto sg = [&](double y) { return std::polar(y > 0 ? 1.0 : -1.0, -s * a0 * y); };
                        auto p = integrate_against(u, sg, 0.0, inf, cfg).value + integrate_against(u, sg, -inf, 0.0, cfg).value;
                        return -double(s) * kI * std::sqrt(kPi / 2.0) * p;
                    }});
    rows.push_back({"sign", lhs_pair(Dist1d::sign()), [&](const TestFn& u, int s) {
                        auto p = pv_against(u, [](double) { return cplx(1.0); }, 0.0, cfg).value;
                        return -double(s) * kI * std::sqrt(2.0 / kPi) * p;
                    }});
    for (int o : {1, -1}) {
        rows.push_back({o > 0 ? "heaviside+" : "heaviside-", lhs_pair(Dist1d::heaviside(o)), [&, o](const TestFn& u, int s) {
                            auto p = pv_against(u, [](double) { return cplx(1.0); }, 0.0, cfg).value;
                            const double zero = 0.0;
                            return (-double(s * o) * kI * p + kPi * eval(u, &zero)) / rt2pi;
                        }});
    }
    rows.push_back({"char_interval", lhs_pair(Dist1d::char_interval(ia, ib)), [&](const TestFn& u, int s) {
                        auto g = [&](double y) { return std::polar(1.0, -s * ib * y) - std::polar(1.0, -s * ia * y); };
                        return double(s) * kI / rt2pi * pv_against(u, g, 0.0, cfg).value;
                    }});
    for (double a : {0.8, -0.8}) {
        for (int e : {1, -1}) {
            // theta = H(a x) exp(i e a x)
            const std::string nm = std::string("H(ax)exp(") + (e > 0 ? "+" : "-") + "iax) a=" + (a > 0 ? "+0.8" : "-0.8");
            rows.push_back(
                {nm,
                 [&, a, e](const TestFn& u, int s) {
                     TestFn fu = fourier_analytic(u, s);
                     auto g = [&](double x) { return std::polar(1.0, e * a * x); };
                     return a > 0 ? integrate_against(fu, g, 0.0, inf, cfg).value
                                  : integrate_against(fu, g, -inf, 0.0, cfg).value;
                 },
                 [&, a, e](const TestFn& u, int s) {
                     // (1/sqrt(2pi)) (-i sgn(a) pv 1/(s y - e a) + pi delta(s y - e a))
                     const double pole = s * e * a;
                     auto p = pv_against(u, [](double) { return cplx(1.0); }, pole, cfg).value;
                     const double x = pole;
                     const double sa = a > 0 ? 1.0 : -1.0;
                     return (-kI * sa * double(s) * p + kPi * eval(u, &x)) / rt2pi;
                 }});
        }
    }
    for (int tr : {-1, 1}) {
        for (int side : {1, -1}) {
            // sqrt(2pi) <1/(x - a - side i eps), F^tr u>
            const std::string nm = std::string("eps-limit F") + (tr > 0 ? "+" : "-") + " side " + (side > 0 ? "-i" : "+i");
            rows.push_back({nm,
                            [&, tr, side](const TestFn& u, int s) {
                                (void)s;
                                return rt2pi * damped_pole_limit(fourier_analytic(u, tr), a0, side, cfg).value;
                            },
                            [&, tr, side](const TestFn& u, int s) {
                                (void)s;
                                auto g = [&](double y) { return std::polar(1.0, -tr * a0 * y); };
                                // tr = -1: +-2 pi i int H(+-y) e^{i a y} u ; tr = +1: +-2 pi i int H(-+y) e^{-i a y} u
                                const int half = -tr * side;
                                auto p = half > 0 ? integrate_against(u, g, 0.0, inf, cfg).value
                                                  : integrate_against(u, g, -inf, 0.0, cfg).value;
                                return double(side) * 2.0 * kPi * kI * p;
                            }});
        }
    }

    std::vector<CheckRow> out;
    for (const auto& row : rows) {
        const bool sign_free = row.name.rfind("eps-limit", 0) == 0;
        for (int s : {1, -1}) {
            if (sign_free && s < 0) continue;
            double worst = 0.0;
            for (const auto& u : us) worst = std::max(worst, std::abs(row.lhs(u, s) - row.rhs(u, s)));
            const std::string id = sign_free ? row.name : row.name + (s > 0 ? " [F+]" : " [F-]");
            out.push_back(CheckRow{id, 0.0, worst, 1e-6, worst <= 1e-6, 0.0});
        }
    }
    return out;
}

}  // namespace mkp
