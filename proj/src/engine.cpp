#include "minkprop/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mkp {

namespace {

int initial_threads() {
    int n = 1;
#ifdef _OPENMP
    n = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("MINKPROP_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) n = std::min(n, v);
    }
    return std::max(1, n);
}

std::atomic<int> g_threads{initial_threads()};

std::vector<double> clean_breaks(std::vector<double> b, double lo, double hi) {
    std::vector<double> out;
    for (double x : b)
        if (x >= lo && x <= hi) out.push_back(x);
    out.push_back(lo);
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    std::vector<double> res;
    for (double x : out)
        if (res.empty() || x - res.back() > 1e-9 * (1.0 + std::abs(x))) res.push_back(x);
    return res;
}

}  // namespace

void set_threads(int n) { g_threads = std::max(1, n); }
int get_threads() { return g_threads.load(); }

void TimeAxis::eval(double x, cplx* h) const {
    const double s = x - c;
    const cplx base = std::exp(cplx(-s * s / (2.0 * sigma * sigma), k * x));
    cplx v = base;
    for (int a = 0; a <= amax; ++a) {
        h[a] = v;
        v *= s;
    }
}

void TimeAxis::eval_batch(const double* x, int nx, cplx* h) const {
    for (int q = 0; q < nx; ++q) eval(x[q], h + std::size_t(q) * (amax + 1));
}

double SpatialSet::center_norm() const { return std::sqrt(c[0] * c[0] + c[1] * c[1] + c[2] * c[2]); }
double SpatialSet::phase_norm() const { return std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]); }
double SpatialSet::sigma_max() const { return std::max({s[0], s[1], s[2]}); }
double SpatialSet::sigma_min() const { return std::min({s[0], s[1], s[2]}); }

double SpatialSet::bound(double rho) const {
    const double d = std::max(0.0, rho - center_norm());
    const double sm = sigma_max();
    double poly = 0.0;
    for (const auto& b : betas) {
        double v = 1.0;
        for (int i = 0; i < 3; ++i) v *= std::pow(rho + std::abs(c[i]), b[i]);
        poly = std::max(poly, v);
    }
    return 4.0 * kPi * coeff_sum * poly * std::exp(-d * d / (2.0 * sm * sm));
}

SphereStats SpatialSet::sphere(double rho, double abs_tol, cplx* out) const {
    const int nb = int(betas.size());
    SphereFn g = [&](int np, const double* z, const double* phi, cplx* v) {
        double pw[3][kMaxDegree + 1];
        for (int j = 0; j < np; ++j) {
            const double st = std::sqrt(std::max(0.0, 1.0 - z[j] * z[j]));
            const double x[3] = {rho * st * std::cos(phi[j]), rho * st * std::sin(phi[j]), rho * z[j]};
            double expo = 0.0, ph = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double si = x[i] - c[i];
                expo -= si * si / (2.0 * s[i] * s[i]);
                ph += k[i] * x[i];
                pw[i][0] = 1.0;
                for (int d = 1; d <= maxdeg[i]; ++d) pw[i][d] = pw[i][d - 1] * si;
            }
            const cplx base = std::exp(cplx(expo, ph));
            for (int b = 0; b < nb; ++b)
                v[std::size_t(j) * nb + b] = base * (pw[0][betas[b][0]] * pw[1][betas[b][1]] * pw[2][betas[b][2]]);
        }
    };
    return integrate_sphere(g, nb, abs_tol, out);
}

Decomposed decompose(const std::vector<TestFn>& fns) {
    if (fns.empty()) throw std::invalid_argument("empty test-function batch");
    Decomposed d;
    const TestFn& f0 = fns[0];
    if (f0.dim != 4) throw std::invalid_argument("engine requires dim 4 test functions");
    for (const auto& f : fns)
        if (!same_params(f, f0)) throw std::invalid_argument("batch members must share Gaussian parameters");
    d.nfn = int(fns.size());
    d.time.c = f0.center[0];
    d.time.sigma = f0.widths[0];
    d.time.k = f0.phase[0];
    for (int i = 0; i < 3; ++i) {
        d.space.c[i] = f0.center[i + 1];
        d.space.s[i] = f0.widths[i + 1];
        d.space.k[i] = f0.phase[i + 1];
    }
    std::map<std::array<int, 3>, int> index;
    for (int fi = 0; fi < d.nfn; ++fi) {
        double csum = 0.0;
        for (const auto& t : fns[fi].terms) {
            std::array<int, 3> b{t.alpha[1], t.alpha[2], t.alpha[3]};
            auto it = index.find(b);
            int bi;
            if (it == index.end()) {
                bi = int(d.space.betas.size());
                index.emplace(b, bi);
                d.space.betas.push_back(b);
            } else {
                bi = it->second;
            }
            d.terms.push_back(TermRef{fi, t.coeff, t.alpha[0], bi});
            d.time.amax = std::max(d.time.amax, t.alpha[0]);
            for (int i = 0; i < 3; ++i) d.space.maxdeg[i] = std::max(d.space.maxdeg[i], b[i]);
            csum += std::abs(t.coeff);
        }
        d.space.coeff_sum = std::max(d.space.coeff_sum, csum);
        d.norm = std::max(d.norm, l1_norm(fns[fi]));
    }
    if (d.space.betas.empty()) d.space.betas.push_back({0, 0, 0});
    return d;
}

EngineOutput shell_integrate(const std::vector<TestFn>& fns, double m, const ShellKernel& kernel,
                             const QuadConfig& cfg, const EngineOptions& opt) {
    const Decomposed d = decompose(fns);
    const int na = d.time.amax + 1;
    const int nb = int(d.space.betas.size());
    const int nout = kernel.n_out;
    const int nval = nout * d.nfn;
    const double tol = cfg.abs_tol * std::max(d.norm, 1e-300);
    const double cn = d.space.center_norm(), sm = d.space.sigma_max();
    const double rho_max = cn + 40.0 * sm;
    const double skip = 1e-4 * tol / rho_max;

    std::vector<double> hints;
    for (double q : {-8.0, -4.0, -2.0, 0.0, 2.0, 4.0, 8.0, 16.0}) hints.push_back(cn + q * sm);
    for (double q : {-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double e = std::abs(d.time.c) + q * d.time.sigma;
        if (e > m) hints.push_back(std::sqrt(e * e - m * m));
    }
    const auto breaks = clean_breaks(hints, 0.0, rho_max);

    std::atomic<long> evals{0};
    std::atomic<bool> inner_ok{true};
    BatchFn radial = [&](const double* rho, int nr, cplx* out) {
        const bool par = opt.parallel && get_threads() > 1;
#pragma omp parallel for schedule(dynamic) num_threads(get_threads()) if (par)
        for (int q = 0; q < nr; ++q) {
            const double r = rho[q];
            const double E = std::sqrt(m * m + r * r);
            cplx* o = out + std::size_t(q) * (nval + 1);
            std::fill(o, o + nval + 1, cplx(0.0));
            std::vector<cplx> T(std::size_t(nout) * na);
            double terr = 0.0;
            long tev = 0;
            kernel.eval(r, E, d.time, T.data(), &terr, &tev);
            double tmax = 0.0;
            for (const auto& v : T) tmax = std::max(tmax, std::abs(v));
            const double sb = d.space.bound(r);
            long local = tev;
            if ((tmax + terr) * sb * r * r >= skip) {
                std::vector<cplx> S(nb);
                const auto st = d.space.sphere(r, 1e-12 * sb, S.data());
                local += st.evaluations;
                if (!st.converged) inner_ok = false;
                double smax = 0.0;
                for (const auto& v : S) smax = std::max(smax, std::abs(v));
                double errd = 0.0;
                for (const auto& t : d.terms) {
                    for (int oi = 0; oi < nout; ++oi)
                        o[std::size_t(oi) * d.nfn + t.fn] += r * r * t.coeff * T[std::size_t(oi) * na + t.a0] * S[t.beta];
                    errd += std::abs(t.coeff) * (tmax * st.err + terr * smax);
                }
                o[nval] = r * r * errd;
            }
            evals += local;
        }
    };
    auto res = integrate_vec(radial, nval + 1, breaks, tol, cfg.rel_tol, cfg.max_subdivisions);
    EngineOutput out;
    out.nfn = d.nfn;
    out.value.assign(res.value.begin(), res.value.begin() + nval);
    out.abs_err = res.abs_err + std::abs(res.value[nval]);
    out.evaluations = res.evaluations + evals.load();
    out.converged = res.converged && inner_ok.load();
    return out;
}

TimeGrid::TimeGrid(const TimeAxis& ax, double omega_max) : na_(ax.amax + 1) {
    const double lo = ax.c - 12.0 * ax.sigma, hi = ax.c + 12.0 * ax.sigma;
    const double panel = std::min(0.5, 12.0 / std::max(omega_max, 1e-9));
    std::vector<double> x, w;
    auto append = [&](double a, double b, bool pos) {
        gauss_legendre_composite(a, b, panel, 20, x, w);
        for (std::size_t i = 0; i < x.size(); ++i) {
            t_.push_back(x[i]);
            w_.push_back(w[i]);
            positive_.push_back(pos ? 1 : 0);
        }
    };
    if (hi <= 0.0) {
        append(lo, hi, false);
    } else if (lo >= 0.0) {
        append(lo, hi, true);
    } else {
        append(lo, 0.0, false);
        append(0.0, hi, true);
    }
    h_.resize(t_.size() * na_);
    ax.eval_batch(t_.data(), int(t_.size()), h_.data());
    for (std::size_t n = 0; n < t_.size(); ++n)
        for (int a = 0; a < na_; ++a) h_[n * na_ + a] *= w_[n];
}

void TimeGrid::half_sums(double tau, int sign, cplx* pos, cplx* neg) const {
    std::fill(pos, pos + na_, cplx(0.0));
    std::fill(neg, neg + na_, cplx(0.0));
    for (std::size_t n = 0; n < t_.size(); ++n) {
        const cplx e = std::polar(1.0, -double(sign) * tau * t_[n]);
        cplx* dst = positive_[n] ? pos : neg;
        for (int a = 0; a < na_; ++a) dst[a] += e * h_[n * na_ + a];
    }
}

RadialTable tabulate_radial(const SpatialSet& sp, double panel, double abs_tol, bool parallel) {
    RadialTable tab;
    tab.nb = int(sp.betas.size());
    const double rmax = sp.center_norm() + 12.0 * sp.sigma_max();
    std::vector<double> x, w;
    gauss_legendre_composite(0.0, rmax, panel, 20, x, w);
    const double peak = sp.bound(sp.center_norm());
    std::vector<int> keep;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (sp.bound(x[i]) > 1e-15 * peak) keep.push_back(int(i));
    const int nk = int(keep.size());
    tab.r.resize(nk);
    tab.w.resize(nk);
    tab.A.assign(std::size_t(nk) * tab.nb, 0.0);
    std::vector<SphereStats> stats(nk);
    const bool par = parallel && get_threads() > 1;
#pragma omp parallel for schedule(dynamic) num_threads(get_threads()) if (par)
    for (int q = 0; q < nk; ++q) {
        const double r = x[keep[q]];
        tab.r[q] = r;
        tab.w[q] = w[keep[q]];
        stats[q] = sp.sphere(r, abs_tol, tab.A.data() + std::size_t(q) * tab.nb);
    }
    for (const auto& st : stats) {
        tab.err = std::max(tab.err, st.err);
        tab.evaluations += st.evaluations;
        tab.converged = tab.converged && st.converged;
    }
    return tab;
}

SineSetup sine_setup(const Decomposed& d, double m) {
    SineSetup s;
    s.kappa_max = d.space.phase_norm() + 10.0 / d.space.sigma_min();
    s.panel = std::min(0.5, 12.0 / s.kappa_max);
    (void)m;
    return s;
}

EngineOutput sine_integrate(const std::vector<TestFn>& fns, double m,
                            const std::function<SineKernel(const Decomposed&, const SineSetup&)>& make_kernel,
                            const QuadConfig& cfg, const EngineOptions& opt) {
    const Decomposed d = decompose(fns);
    const SineSetup setup = sine_setup(d, m);
    const SineKernel kernel = make_kernel(d, setup);
    const int na = d.time.amax + 1;
    const int nb = int(d.space.betas.size());
    const int nout = kernel.n_out;
    const int nval = nout * d.nfn;
    const double tol = cfg.abs_tol * std::max(d.norm, 1e-300);
    const RadialTable tab = tabulate_radial(d.space, setup.panel, 1e-12 * d.space.bound(d.space.center_norm()),
                                            opt.parallel);
    const int nr = int(tab.r.size());
    std::vector<double> rw(nr);
    for (int q = 0; q < nr; ++q) rw[q] = tab.r[q] * tab.w[q];

    auto eval_node = [&](double kappa, cplx* o, std::vector<cplx>& R, std::vector<cplx>& Th) {
        const double tau = std::sqrt(kappa * kappa + m * m);
        std::fill(R.begin(), R.end(), cplx(0.0));
        for (int n = 0; n < nr; ++n) {
            const double sn = rw[n] * std::sin(kappa * tab.r[n]);
            const cplx* a = tab.A.data() + std::size_t(n) * nb;
            for (int b = 0; b < nb; ++b) R[b] += sn * a[b];
        }
        kernel.eval(kappa, tau, Th.data());
        std::fill(o, o + nval, cplx(0.0));
        const double jac = kappa / tau;
        for (const auto& t : d.terms)
            for (int oi = 0; oi < nout; ++oi)
                o[std::size_t(oi) * d.nfn + t.fn] += jac * t.coeff * Th[std::size_t(oi) * na + t.a0] * R[t.beta];
    };
    // Fixed composite Gauss-Legendre in kappa, resolving sin(kappa r) exp(-i tau t) over the table and time extents.
    const double rmax = nr ? tab.r.back() : 0.0;
    const double tmax = std::abs(d.time.c) + 12.0 * d.time.sigma;
    const double hk = std::min(0.5, 8.0 / (rmax + tmax + 1.0));
    auto run = [&](double h) {
        std::vector<double> x, w;
        gauss_legendre_composite(0.0, setup.kappa_max, h, 20, x, w);
        const int nk = int(x.size());
        std::vector<cplx> vals(std::size_t(nk) * nval);
        const bool par = opt.parallel && get_threads() > 1;
#pragma omp parallel num_threads(get_threads()) if (par)
        {
            std::vector<cplx> R(nb), Th(std::size_t(nout) * na);
#pragma omp for schedule(static)
            for (int q = 0; q < nk; ++q) eval_node(x[q], vals.data() + std::size_t(q) * nval, R, Th);
        }
        std::vector<cplx> sum(nval, 0.0);
        for (int q = 0; q < nk; ++q)
            for (int i = 0; i < nval; ++i) sum[i] += w[q] * vals[std::size_t(q) * nval + i];
        return std::make_pair(sum, long(nk));
    };
    const auto fine = run(hk);
    const auto coarse = run(2.0 * hk);
    VecResult res;
    res.value = fine.first;
    double scale = 0.0;
    for (int i = 0; i < nval; ++i) {
        res.abs_err = std::max(res.abs_err, std::abs(fine.first[i] - coarse.first[i]));
        scale = std::max(scale, std::abs(fine.first[i]));
    }
    res.evaluations = fine.second + coarse.second;
    res.converged = res.abs_err <= std::max(tol, cfg.rel_tol * scale);
    EngineOutput out;
    out.nfn = d.nfn;
    out.value = res.value;
    out.abs_err = res.abs_err + tab.err * setup.kappa_max;
    out.evaluations = res.evaluations * (nr + 1) + tab.evaluations;
    out.converged = res.converged && tab.converged;
    return out;
}

}  // namespace mkp
