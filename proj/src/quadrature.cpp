#include "minkprop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace mkp {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Node k of a 15-point panel on [a,b]; k = 0..14 with k = 7 the midpoint.
inline double gk_node(double a, double b, int k) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    if (k < 7) return c - h * kXgk[k];
    if (k == 7) return c;
    return c + h * kXgk[14 - k];
}

struct Panel {
    double a, b;
    std::vector<cplx> val;
    double err;
};

struct PanelLess {
    bool operator()(const Panel* x, const Panel* y) const {
        if (x->err != y->err) return x->err < y->err;
        return x->a > y->a;
    }
};

void gk_reduce(const cplx* fv, int n, double a, double b, std::vector<cplx>& val, double& err) {
    const double h = 0.5 * (b - a);
    val.assign(n, 0.0);
    err = 0.0;
    for (int i = 0; i < n; ++i) {
        auto f = [&](int k) { return fv[k * n + i]; };
        cplx resk = kWgk[7] * f(7);
        cplx resg = kWg[3] * f(7);
        double resabs = kWgk[7] * std::abs(f(7));
        for (int j = 0; j < 7; ++j) {
            const cplx f1 = f(j), f2 = f(14 - j);
            resk += kWgk[j] * (f1 + f2);
            resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
            if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
        }
        const cplx reskh = 0.5 * resk;
        double resasc = kWgk[7] * std::abs(f(7) - reskh);
        for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f(j) - reskh) + std::abs(f(14 - j) - reskh));
        const double ah = std::abs(h);
        resabs *= ah;
        resasc *= ah;
        double e = std::abs((resk - resg) * h);
        if (resasc != 0.0 && e != 0.0) e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
        if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) e = std::max(50.0 * kEps * resabs, e);
        val[i] = resk * h;
        err = std::max(err, e);
    }
}

void eval_panels(const BatchFn& f, int n, std::vector<Panel*>& panels, long& evals) {
    const int np = int(panels.size());
    std::vector<double> xs(15 * np);
    for (int p = 0; p < np; ++p)
        for (int k = 0; k < 15; ++k) xs[15 * p + k] = gk_node(panels[p]->a, panels[p]->b, k);
    std::vector<cplx> fv(std::size_t(15) * np * n);
    f(xs.data(), 15 * np, fv.data());
    evals += 15 * np;
    for (int p = 0; p < np; ++p) gk_reduce(fv.data() + std::size_t(15) * p * n, n, panels[p]->a, panels[p]->b,
                                           panels[p]->val, panels[p]->err);
}

}  // namespace

VecResult integrate_vec(const BatchFn& f, int n, const std::vector<double>& breaks, double abs_tol, double rel_tol,
                        int max_subdivisions) {
    VecResult out;
    out.value.assign(n, 0.0);
    if (breaks.size() < 2) return out;
    std::vector<std::unique_ptr<Panel>> store;
    std::vector<Panel*> fresh;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        store.push_back(std::make_unique<Panel>(Panel{breaks[i], breaks[i + 1], {}, 0.0}));
        fresh.push_back(store.back().get());
    }
    if (fresh.empty()) return out;
    eval_panels(f, n, fresh, out.evaluations);
    std::priority_queue<Panel*, std::vector<Panel*>, PanelLess> heap;
    std::vector<cplx> total(n, 0.0);
    double total_err = 0.0;
    for (auto* p : fresh) {
        heap.push(p);
        for (int i = 0; i < n; ++i) total[i] += p->val[i];
        total_err += p->err;
    }
    auto tolerance = [&]() {
        double mx = 0.0;
        for (const auto& v : total) mx = std::max(mx, std::abs(v));
        return std::max(abs_tol, rel_tol * mx);
    };
    int live = int(fresh.size());
    while (total_err > tolerance() && live < max_subdivisions) {
        Panel* worst = heap.top();
        const double mid = 0.5 * (worst->a + worst->b);
        if (!(mid > worst->a && mid < worst->b)) break;
        heap.pop();
        store.push_back(std::make_unique<Panel>(Panel{worst->a, mid, {}, 0.0}));
        Panel* l = store.back().get();
        store.push_back(std::make_unique<Panel>(Panel{mid, worst->b, {}, 0.0}));
        Panel* r = store.back().get();
        std::vector<Panel*> kids{l, r};
        eval_panels(f, n, kids, out.evaluations);
        for (int i = 0; i < n; ++i) total[i] += l->val[i] + r->val[i] - worst->val[i];
        total_err += l->err + r->err - worst->err;
        worst->err = -1.0;
        heap.push(l);
        heap.push(r);
        ++live;
    }
    std::vector<Panel*> leaves;
    while (!heap.empty()) {
        leaves.push_back(heap.top());
        heap.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](const Panel* x, const Panel* y) { return x->a < y->a; });
    double err = 0.0;
    for (auto* p : leaves) {
        for (int i = 0; i < n; ++i) out.value[i] += p->val[i];
        err += p->err;
    }
    out.abs_err = err;
    double mx = 0.0;
    for (const auto& v : out.value) mx = std::max(mx, std::abs(v));
    out.converged = err <= std::max(abs_tol, rel_tol * mx);
    return out;
}

PairingResult integrate_1d(const ScalarFn& f, double a, double b, const QuadConfig& cfg) {
    BatchFn bf = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = f(x[k]);
    };
    double sgn = 1.0;
    if (b < a) {
        std::swap(a, b);
        sgn = -1.0;
    }
    auto r = integrate_vec(bf, 1, {a, b}, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    return PairingResult{sgn * r.value[0], r.abs_err, r.evaluations, r.converged};
}

PairingResult integrate_semi_infinite(const ScalarFn& f, double a, double sigma, const QuadConfig& cfg) {
    if (!(sigma > 0.0)) throw std::invalid_argument("damping scale must be positive");
    std::vector<double> br{a};
    for (double k : {1.0, 2.0, 4.0, 8.0, 16.0, 40.0}) br.push_back(a + k * sigma);
    BatchFn bf = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = f(x[k]);
    };
    auto r = integrate_vec(bf, 1, br, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions);
    const double tail = std::abs(f(a + 40.0 * sigma)) * sigma;
    return PairingResult{r.value[0], r.abs_err + tail, r.evaluations + 1, r.converged};
}

SphereStats integrate_sphere(const SphereFn& g, int n, double abs_tol, cplx* out) {
    SphereStats st;
    const double tol_phi = 0.25 * abs_tol;
    constexpr int kStart = 16, kMax = 4096;
    std::vector<double> zs, ps;
    std::vector<cplx> vals;
    std::vector<cplx> prev(n), cur(n), acc(n);
    bool all_ok = true;
    long evals = 0;
    BatchFn over_z = [&](const double* z, int nz, cplx* o) {
        for (int q = 0; q < nz; ++q) {
            int N = kStart;
            zs.assign(N, z[q]);
            ps.resize(N);
            for (int j = 0; j < N; ++j) ps[j] = 2.0 * kPi * j / N;
            vals.assign(std::size_t(N) * n, 0.0);
            g(N, zs.data(), ps.data(), vals.data());
            evals += N;
            std::fill(acc.begin(), acc.end(), cplx(0.0));
            for (int j = 0; j < N; ++j)
                for (int i = 0; i < n; ++i) acc[i] += vals[std::size_t(j) * n + i];
            for (int i = 0; i < n; ++i) cur[i] = acc[i] * (2.0 * kPi / N);
            bool ok = false;
            while (N < kMax) {
                zs.assign(N, z[q]);
                ps.resize(N);
                for (int j = 0; j < N; ++j) ps[j] = 2.0 * kPi * (j + 0.5) / N;
                vals.assign(std::size_t(N) * n, 0.0);
                g(N, zs.data(), ps.data(), vals.data());
                evals += N;
                for (int j = 0; j < N; ++j)
                    for (int i = 0; i < n; ++i) acc[i] += vals[std::size_t(j) * n + i];
                N *= 2;
                prev = cur;
                double d = 0.0;
                for (int i = 0; i < n; ++i) {
                    cur[i] = acc[i] * (2.0 * kPi / N);
                    d = std::max(d, std::abs(cur[i] - prev[i]));
                }
                if (d <= tol_phi) {
                    ok = true;
                    break;
                }
            }
            all_ok = all_ok && ok;
            for (int i = 0; i < n; ++i) o[std::size_t(q) * n + i] = cur[i];
        }
    };
    auto r = integrate_vec(over_z, n, {-1.0, 0.0, 1.0}, 0.5 * abs_tol, 0.0, 400);
    for (int i = 0; i < n; ++i) out[i] = r.value[i];
    st.err = r.abs_err + 2.0 * tol_phi;
    st.evaluations = evals;
    st.converged = r.converged && all_ok;
    return st;
}

PairingResult integrate_radial3(const std::function<cplx(double, double, double)>& g, double rho_max,
                                const QuadConfig& cfg) {
    double inner_err = 0.0;
    long inner_evals = 0;
    bool inner_ok = true;
    BatchFn radial = [&](const double* rho, int nr, cplx* o) {
        for (int k = 0; k < nr; ++k) {
            const double r = rho[k];
            SphereFn sg = [&](int np, const double* z, const double* phi, cplx* v) {
                for (int j = 0; j < np; ++j) v[j] = g(r, z[j], phi[j]);
            };
            cplx s;
            auto st = integrate_sphere(sg, 1, 1e-3 * cfg.abs_tol, &s);
            inner_err = std::max(inner_err, st.err);
            inner_evals += st.evaluations;
            inner_ok = inner_ok && st.converged;
            o[k] = r * r * s;
        }
    };
    auto r = integrate_vec(radial, 1, {0.0, 0.25 * rho_max, 0.5 * rho_max, rho_max}, cfg.abs_tol, cfg.rel_tol,
                           cfg.max_subdivisions);
    return PairingResult{r.value[0], r.abs_err + inner_err * rho_max * rho_max * rho_max, inner_evals,
                         r.converged && inner_ok};
}

Extrapolated richardson(const std::vector<cplx>& ladder, double ratio, int p0, int dp, int max_cols) {
    const int K = int(ladder.size());
    if (K == 0) return {0.0, 0.0};
    if (K == 1) return {ladder[0], std::abs(ladder[0])};
    std::vector<std::vector<cplx>> T(K);
    for (int k = 0; k < K; ++k) T[k].push_back(ladder[k]);
    for (int j = 1; j <= max_cols; ++j) {
        const double fac = std::pow(ratio, -double(p0 + (j - 1) * dp)) - 1.0;
        for (int k = j; k < K; ++k) T[k].push_back(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / fac);
    }
    Extrapolated best{T[K - 1][0], std::numeric_limits<double>::infinity()};
    for (int j = 0; j <= max_cols; ++j)
        for (int k = j + 1; k < K; ++k) {
            if (int(T[k].size()) <= j || int(T[k - 1].size()) <= j) continue;
            const double d = std::abs(T[k][j] - T[k - 1][j]);
            if (d < best.spread) best = {T[k][j], d};
        }
    return best;
}

PvResult integrate_pv_vec(const BatchFn& num, int n, double pole, double a, double b, const QuadConfig& cfg,
                          double abs_tol) {
    if (!(a < pole && pole < b)) throw std::invalid_argument("pole must lie strictly inside (a, b)");
    PvResult out;
    out.value.assign(n, 0.0);
    const double h = std::min(pole - a, b - pole);
    const double d0 = std::min(cfg.ladder_start, 0.5 * h);
    const int K = cfg.ladder_count;
    const double rt = cfg.rel_tol;
    std::vector<double> xb;
    std::vector<cplx> buf;
    BatchFn outer = [&](const double* x, int nx, cplx* o) {
        num(x, nx, o);
        for (int k = 0; k < nx; ++k)
            for (int i = 0; i < n; ++i) o[std::size_t(k) * n + i] /= (x[k] - pole);
    };
    BatchFn folded = [&](const double* s, int ns, cplx* o) {
        xb.resize(2 * ns);
        for (int k = 0; k < ns; ++k) {
            xb[k] = pole + s[k];
            xb[ns + k] = pole - s[k];
        }
        buf.resize(std::size_t(2) * ns * n);
        num(xb.data(), 2 * ns, buf.data());
        for (int k = 0; k < ns; ++k)
            for (int i = 0; i < n; ++i)
                o[std::size_t(k) * n + i] = (buf[std::size_t(k) * n + i] - buf[std::size_t(ns + k) * n + i]) / s[k];
    };
    auto add = [&](const VecResult& r) {
        for (int i = 0; i < n; ++i) out.value[i] += r.value[i];
        out.abs_err += r.abs_err;
        out.evaluations += r.evaluations;
        out.converged = out.converged && r.converged;
    };
    if (pole - h > a) add(integrate_vec(outer, n, {a, pole - h}, abs_tol, rt, cfg.max_subdivisions));
    if (pole + h < b) add(integrate_vec(outer, n, {pole + h, b}, abs_tol, rt, cfg.max_subdivisions));
    std::vector<std::vector<cplx>> ladder(n, std::vector<cplx>(K));
    std::vector<cplx> J(n, 0.0);
    double qerr = 0.0;
    double hi = h, lo = d0;
    for (int k = 0; k < K; ++k) {
        auto r = integrate_vec(folded, n, {lo, hi}, abs_tol / K, rt, cfg.max_subdivisions);
        qerr += r.abs_err;
        out.evaluations += 2 * r.evaluations;
        out.converged = out.converged && r.converged;
        for (int i = 0; i < n; ++i) {
            J[i] += r.value[i];
            ladder[i][k] = J[i];
        }
        hi = lo;
        lo *= cfg.ladder_ratio;
    }
    for (int i = 0; i < n; ++i) {
        auto ex = richardson(ladder[i], cfg.ladder_ratio, 1, 2);
        out.value[i] += ex.value;
        out.spread = std::max(out.spread, ex.spread);
    }
    out.abs_err += qerr + out.spread;
    return out;
}

PairingResult integrate_pv(const ScalarFn& num, double pole, double a, double b, const QuadConfig& cfg) {
    BatchFn bf = [&](const double* x, int nx, cplx* o) {
        for (int k = 0; k < nx; ++k) o[k] = num(x[k]);
    };
    auto r = integrate_pv_vec(bf, 1, pole, a, b, cfg, cfg.abs_tol);
    const bool ok = r.converged && r.spread <= std::max(cfg.abs_tol, 1e3 * cfg.rel_tol * std::abs(r.value[0]));
    return PairingResult{r.value[0], r.abs_err, r.evaluations, ok};
}

DampedLadder integrate_damped_ladder(const BatchFn& num, int n, double pole, double a, double b,
                                     const QuadConfig& cfg, double abs_tol) {
    if (!(a < pole && pole < b)) throw std::invalid_argument("pole must lie strictly inside (a, b)");
    DampedLadder out;
    const int K = cfg.ladder_count;
    out.plus.assign(K, std::vector<cplx>(n, 0.0));
    out.minus.assign(K, std::vector<cplx>(n, 0.0));
    const double h = std::min(pole - a, b - pole);
    const double rt = cfg.rel_tol;
    std::vector<double> xb;
    std::vector<cplx> buf;
    double eps = cfg.ladder_start;
    for (int k = 0; k < K; ++k, eps *= cfg.ladder_ratio) {
        const double e = eps;
        BatchFn outer = [&](const double* x, int nx, cplx* o) {
            buf.resize(std::size_t(nx) * n);
            num(x, nx, buf.data());
            for (int q = 0; q < nx; ++q)
                for (int i = 0; i < n; ++i) {
                    const cplx v = buf[std::size_t(q) * n + i];
                    o[std::size_t(q) * 2 * n + i] = v / cplx(x[q] - pole, e);
                    o[std::size_t(q) * 2 * n + n + i] = v / cplx(x[q] - pole, -e);
                }
        };
        BatchFn folded = [&](const double* s, int ns, cplx* o) {
            xb.resize(2 * ns);
            for (int q = 0; q < ns; ++q) {
                xb[q] = pole + s[q];
                xb[ns + q] = pole - s[q];
            }
            buf.resize(std::size_t(2) * ns * n);
            num(xb.data(), 2 * ns, buf.data());
            for (int q = 0; q < ns; ++q) {
                const double den = s[q] * s[q] + e * e;
                for (int i = 0; i < n; ++i) {
                    const cplx np = buf[std::size_t(q) * n + i], nm = buf[std::size_t(ns + q) * n + i];
                    o[std::size_t(q) * 2 * n + i] = s[q] * (np - nm) / den;
                    o[std::size_t(q) * 2 * n + n + i] = e * (np + nm) / den;
                }
            }
        };
        std::vector<double> br{0.0};
        for (double s = e; s < h; s *= 4.0) br.push_back(s);
        br.push_back(h);
        auto fr = integrate_vec(folded, 2 * n, br, abs_tol / K, rt, cfg.max_subdivisions);
        out.evaluations += 2 * fr.evaluations;
        out.abs_err += fr.abs_err;
        out.converged = out.converged && fr.converged;
        for (int i = 0; i < n; ++i) {
            const cplx A = fr.value[i], B = fr.value[n + i];
            out.plus[k][i] = A - kI * B;
            out.minus[k][i] = A + kI * B;
        }
        for (auto [lo, hi] : {std::pair{a, pole - h}, std::pair{pole + h, b}}) {
            if (!(hi > lo)) continue;
            auto r = integrate_vec(outer, 2 * n, {lo, hi}, abs_tol / K, rt, cfg.max_subdivisions);
            out.evaluations += r.evaluations;
            out.abs_err += r.abs_err;
            out.converged = out.converged && r.converged;
            for (int i = 0; i < n; ++i) {
                out.plus[k][i] += r.value[i];
                out.minus[k][i] += r.value[n + i];
            }
        }
    }
    return out;
}

namespace {
std::mutex g_gl_mutex;
std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_gl_cache;

const std::pair<std::vector<double>, std::vector<double>>& gl_rule(int order) {
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(order);
    if (it != g_gl_cache.end()) return it->second;
    std::vector<double> x(order), w(order);
    for (int i = 0; i < order; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
            }
            dp = order * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    return g_gl_cache.emplace(order, std::make_pair(x, w)).first->second;
}
}  // namespace

void gauss_legendre_composite(double a, double b, double h, int order, std::vector<double>& x,
                              std::vector<double>& w) {
    x.clear();
    w.clear();
    if (!(b > a)) return;
    const auto& rule = gl_rule(order);
    const int panels = std::max(1, int(std::ceil((b - a) / h - 1e-12)));
    const double ph = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double c = a + (p + 0.5) * ph;
        for (int i = 0; i < order; ++i) {
            x.push_back(c + 0.5 * ph * rule.first[i]);
            w.push_back(0.5 * ph * rule.second[i]);
        }
    }
}

}  // namespace mkp
