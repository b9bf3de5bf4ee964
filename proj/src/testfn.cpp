#include "minkprop/testfn.hpp"

#include <algorithm>
#include <map>
#include <json.hpp>
#include <stdexcept>

namespace mkp {

namespace {

using Poly = std::vector<cplx>;  // coefficients in ascending powers

// Polynomial P_n(q) with (-i d/dq)^n exp(-s2 q^2/2) = P_n(q) exp(-s2 q^2/2).
std::vector<Poly> hermite_ladder(double s2, int nmax) {
    std::vector<Poly> out(nmax + 1);
    out[0] = {1.0};
    for (int n = 0; n < nmax; ++n) {
        const Poly& p = out[n];
        Poly next(p.size() + 1, 0.0);
        for (std::size_t j = 1; j < p.size(); ++j) next[j - 1] += double(j) * p[j];
        for (std::size_t j = 0; j < p.size(); ++j) next[j + 1] -= s2 * p[j];
        for (auto& c : next) c *= -kI;
        out[n + 1] = std::move(next);
    }
    return out;
}

}  // namespace

int TestFn::degree() const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.alpha[0] + t.alpha[1] + t.alpha[2] + t.alpha[3]);
    return d;
}

int TestFn::degree(int axis) const {
    int d = 0;
    for (const auto& t : terms) d = std::max(d, t.alpha[axis]);
    return d;
}

void validate(const TestFn& f) {
    if (f.dim != 1 && f.dim != 3 && f.dim != 4) throw std::invalid_argument("dim must be 1, 3 or 4");
    if (int(f.center.size()) != f.dim || int(f.widths.size()) != f.dim || int(f.phase.size()) != f.dim)
        throw std::invalid_argument("parameter vector length does not match dim");
    for (double s : f.widths)
        if (!(s > 0.0)) throw std::invalid_argument("widths must be positive");
    for (const auto& t : f.terms)
        for (int i = 0; i < 4; ++i) {
            if (t.alpha[i] < 0 || (i >= f.dim && t.alpha[i] != 0))
                throw std::invalid_argument("invalid multi-index");
            if (t.alpha[i] > kMaxDegree) throw std::invalid_argument("degree cap exceeded");
        }
}

TestFn make_testfn(std::vector<Term> terms, std::vector<double> center, std::vector<double> widths,
                   std::vector<double> phase) {
    TestFn f;
    f.dim = int(center.size());
    f.terms = std::move(terms);
    f.center = std::move(center);
    f.widths = std::move(widths);
    f.phase = std::move(phase);
    validate(f);
    return canonicalize(std::move(f));
}

TestFn gaussian(int dim, double sigma) {
    return make_testfn({Term{1.0, {0, 0, 0, 0}}}, std::vector<double>(dim, 0.0),
                       std::vector<double>(dim, sigma), std::vector<double>(dim, 0.0));
}

bool same_params(const TestFn& a, const TestFn& b) {
    return a.dim == b.dim && a.center == b.center && a.widths == b.widths && a.phase == b.phase;
}

TestFn canonicalize(TestFn f) {
    std::map<MultiIndex, cplx> acc;
    for (const auto& t : f.terms) acc[t.alpha] += t.coeff;
    f.terms.clear();
    for (const auto& [a, c] : acc)
        if (c != cplx(0.0)) f.terms.push_back(Term{c, a});
    return f;
}

cplx eval(const TestFn& f, const double* x) {
    double expo = 0.0, ph = 0.0;
    double s[4] = {0, 0, 0, 0};
    for (int i = 0; i < f.dim; ++i) {
        s[i] = x[i] - f.center[i];
        expo -= s[i] * s[i] / (2.0 * f.widths[i] * f.widths[i]);
        ph += f.phase[i] * x[i];
    }
    cplx poly = 0.0;
    for (const auto& t : f.terms) {
        double m = 1.0;
        for (int i = 0; i < f.dim; ++i)
            for (int k = 0; k < t.alpha[i]; ++k) m *= s[i];
        poly += t.coeff * m;
    }
    return poly * std::exp(expo) * std::polar(1.0, ph);
}

cplx eval(const TestFn& f, const std::vector<double>& x) {
    if (int(x.size()) != f.dim) throw std::invalid_argument("dimension mismatch in eval");
    return eval(f, x.data());
}

TestFn derivative(const TestFn& f, int axis) {
    if (axis < 0 || axis >= f.dim) throw std::invalid_argument("axis out of range");
    TestFn g = f;
    g.terms.clear();
    const double inv_s2 = 1.0 / (f.widths[axis] * f.widths[axis]);
    for (const auto& t : f.terms) {
        const int a = t.alpha[axis];
        if (a > 0) {
            Term d = t;
            d.coeff *= double(a);
            d.alpha[axis] = a - 1;
            g.terms.push_back(d);
        }
        Term up = t;
        up.coeff *= -inv_s2;
        up.alpha[axis] = a + 1;
        g.terms.push_back(up);
        if (f.phase[axis] != 0.0) {
            Term p = t;
            p.coeff *= kI * f.phase[axis];
            g.terms.push_back(p);
        }
    }
    g = canonicalize(std::move(g));
    validate(g);
    return g;
}

TestFn scale(const TestFn& f, cplx s) {
    TestFn g = f;
    for (auto& t : g.terms) t.coeff *= s;
    return canonicalize(std::move(g));
}

TestFn add(const TestFn& a, const TestFn& b) {
    if (!same_params(a, b)) throw std::invalid_argument("add requires identical Gaussian parameters");
    TestFn g = a;
    g.terms.insert(g.terms.end(), b.terms.begin(), b.terms.end());
    return canonicalize(std::move(g));
}

TestFn multiply_coordinate(const TestFn& f, int axis) {
    TestFn g = f;
    g.terms.clear();
    for (const auto& t : f.terms) {
        Term up = t;
        up.alpha[axis] += 1;
        g.terms.push_back(up);
        Term c = t;
        c.coeff *= f.center[axis];
        g.terms.push_back(c);
    }
    g = canonicalize(std::move(g));
    validate(g);
    return g;
}

TestFn dalembertian_plus_m2(const TestFn& f, double m) {
    if (f.dim != 4) throw std::invalid_argument("d'Alembertian requires dim 4");
    TestFn acc = scale(f, m * m);
    for (int mu = 0; mu < 4; ++mu) {
        TestFn d2 = derivative(derivative(f, mu), mu);
        acc = add(acc, scale(d2, mu == 0 ? 1.0 : -1.0));
    }
    return acc;
}

TestFn translate(const TestFn& f, const std::vector<double>& b) {
    if (int(b.size()) != f.dim) throw std::invalid_argument("dimension mismatch in translate");
    TestFn g = f;
    double kb = 0.0;
    for (int i = 0; i < f.dim; ++i) {
        g.center[i] += b[i];
        kb += f.phase[i] * b[i];
    }
    const cplx ph = std::polar(1.0, -kb);
    for (auto& t : g.terms) t.coeff *= ph;
    return g;
}

TestFn reflect(const TestFn& f) {
    TestFn g = f;
    for (int i = 0; i < f.dim; ++i) {
        g.center[i] = -f.center[i];
        g.phase[i] = -f.phase[i];
    }
    for (auto& t : g.terms)
        if ((t.alpha[0] + t.alpha[1] + t.alpha[2] + t.alpha[3]) % 2) t.coeff = -t.coeff;
    return g;
}

TestFn conjugate(const TestFn& f) {
    TestFn g = f;
    for (int i = 0; i < f.dim; ++i) g.phase[i] = -f.phase[i];
    for (auto& t : g.terms) t.coeff = std::conj(t.coeff);
    return g;
}

TestFn fourier_partial(const TestFn& f, int sign, unsigned axis_mask) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    const double sg = double(sign);
    TestFn g = f;
    cplx global = 1.0;
    // per-axis polynomial tables in t = y - y_c
    std::array<std::vector<Poly>, 4> tables;
    for (int i = 0; i < f.dim; ++i) {
        if (!(axis_mask & (1u << i))) continue;
        const double c = f.center[i], s = f.widths[i], k = f.phase[i];
        global *= s * std::polar(1.0, k * c);
        g.center[i] = sg * k;
        g.widths[i] = 1.0 / s;
        g.phase[i] = -sg * c;
        auto lad = hermite_ladder(s * s, f.degree(i));
        // q = k - sign*y = -sign*(y - y_c)
        for (auto& p : lad)
            for (std::size_t j = 0; j < p.size(); ++j)
                if (j % 2 == 1 && sign == 1) p[j] = -p[j];
        tables[i] = std::move(lad);
    }
    g.terms.clear();
    for (const auto& t : f.terms) {
        std::vector<Term> partial{Term{t.coeff * global, {0, 0, 0, 0}}};
        for (int i = 0; i < f.dim; ++i) {
            std::vector<Term> next;
            if (!(axis_mask & (1u << i))) {
                for (auto pt : partial) {
                    pt.alpha[i] = t.alpha[i];
                    next.push_back(pt);
                }
            } else {
                const Poly& p = tables[i][t.alpha[i]];
                for (const auto& pt : partial)
                    for (std::size_t j = 0; j < p.size(); ++j) {
                        if (p[j] == cplx(0.0)) continue;
                        Term nt = pt;
                        nt.coeff *= p[j];
                        nt.alpha[i] = int(j);
                        next.push_back(nt);
                    }
            }
            partial = std::move(next);
        }
        g.terms.insert(g.terms.end(), partial.begin(), partial.end());
    }
    g = canonicalize(std::move(g));
    validate(g);
    return g;
}

TestFn fourier_analytic(const TestFn& f, int sign) {
    return fourier_partial(f, sign, (1u << f.dim) - 1u);
}

double l1_norm(const TestFn& f) {
    double total = 0.0;
    for (const auto& t : f.terms) {
        double v = std::abs(t.coeff);
        for (int i = 0; i < f.dim; ++i) {
            const double a = t.alpha[i];
            const double s2 = 2.0 * f.widths[i] * f.widths[i];
            v *= std::pow(s2, 0.5 * (a + 1.0)) * std::tgamma(0.5 * (a + 1.0));
        }
        total += v;
    }
    return total;
}

cplx integral(const TestFn& f) {
    // integral = (2pi)^{d/2} F^+ f (0)
    TestFn h = fourier_analytic(f, 1);
    std::vector<double> zero(f.dim, 0.0);
    return std::pow(2.0 * kPi, 0.5 * f.dim) * eval(h, zero);
}

TestFn random_testfn(std::mt19937_64& rng, int dim, const RandomOptions& opt) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_real_distribution<double> W(opt.sigma_min, opt.sigma_max);
    auto ball = [&](double radius) {
        std::vector<double> v(dim);
        while (true) {
            double r2 = 0.0;
            for (auto& x : v) {
                x = U(rng);
                r2 += x * x;
            }
            if (r2 <= 1.0) break;
        }
        for (auto& x : v) x *= radius;
        return v;
    };
    std::vector<double> widths(dim);
    for (auto& s : widths) s = W(rng);
    auto center = ball(opt.center_radius);
    auto phase = ball(opt.phase_radius);
    std::uniform_int_distribution<int> nterms(1, opt.max_terms);
    std::uniform_int_distribution<int> deg(0, opt.max_degree);
    std::uniform_int_distribution<int> axis(0, dim - 1);
    const int n = nterms(rng);
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) {
        Term t;
        double re, im;
        do {
            re = U(rng);
            im = U(rng);
        } while (re * re + im * im > 1.0);
        t.coeff = cplx(re, im);
        const int d = deg(rng);
        for (int q = 0; q < d; ++q) t.alpha[axis(rng)] += 1;
        terms.push_back(t);
    }
    TestFn f = make_testfn(std::move(terms), std::move(center), std::move(widths), std::move(phase));
    if (f.terms.empty()) f.terms.push_back(Term{1.0, {0, 0, 0, 0}});
    return f;
}

std::string to_json(const TestFn& f) {
    nlohmann::json j;
    j["dim"] = f.dim;
    j["terms"] = nlohmann::json::array();
    for (const auto& t : f.terms) {
        j["terms"].push_back({{"re", t.coeff.real()},
                              {"im", t.coeff.imag()},
                              {"alpha", std::vector<int>(t.alpha.begin(), t.alpha.begin() + f.dim)}});
    }
    j["center"] = f.center;
    j["widths"] = f.widths;
    j["phase"] = f.phase;
    return j.dump();
}

TestFn from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    TestFn f;
    f.dim = j.at("dim").get<int>();
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.coeff = cplx(jt.at("re").get<double>(), jt.value("im", 0.0));
        const auto a = jt.at("alpha").get<std::vector<int>>();
        if (int(a.size()) != f.dim) throw std::invalid_argument("alpha length does not match dim");
        for (int i = 0; i < f.dim; ++i) t.alpha[i] = a[i];
        f.terms.push_back(t);
    }
    f.center = j.at("center").get<std::vector<double>>();
    f.widths = j.at("widths").get<std::vector<double>>();
    f.phase = j.at("phase").get<std::vector<double>>();
    validate(f);
    return f;
}

}  // namespace mkp
