#include "minkprop/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace mkp {

Mat4 zero4() {
    Mat4 z{};
    for (auto& r : z) r.fill(0.0);
    return z;
}

Mat4 identity4() {
    Mat4 a = zero4();
    for (int i = 0; i < 4; ++i) a[i][i] = 1.0;
    return a;
}

Mat4 operator+(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] + b[i][j];
    return c;
}

Mat4 operator-(const Mat4& a, const Mat4& b) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = a[i][j] - b[i][j];
    return c;
}

Mat4 operator*(const Mat4& a, const Mat4& b) {
    Mat4 c = zero4();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

Mat4 operator*(cplx s, const Mat4& a) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = s * a[i][j];
    return c;
}

Mat4 adjoint(const Mat4& a) {
    Mat4 c;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c[i][j] = std::conj(a[j][i]);
    return c;
}

double max_abs(const Mat4& a) {
    double m = 0.0;
    for (const auto& r : a)
        for (const auto& x : r) m = std::max(m, std::abs(x));
    return m;
}

namespace {

std::array<Mat4, 4> build_gammas() {
    // Pauli blocks: gamma^0 = diag(1, -1), gamma^i = [[0, s_i], [-s_i, 0]].
    const cplx s[3][2][2] = {{{0.0, 1.0}, {1.0, 0.0}}, {{0.0, -kI}, {kI, 0.0}}, {{1.0, 0.0}, {0.0, -1.0}}};
    std::array<Mat4, 4> g;
    g[0] = zero4();
    g[0][0][0] = g[0][1][1] = 1.0;
    g[0][2][2] = g[0][3][3] = -1.0;
    for (int i = 0; i < 3; ++i) {
        g[i + 1] = zero4();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                g[i + 1][a][b + 2] = s[i][a][b];
                g[i + 1][a + 2][b] = -s[i][a][b];
            }
    }
    return g;
}

MatPairing assemble_slash(double m, const PairingResult& plain, const std::array<PairingResult, 4>& der) {
    MatPairing r;
    r.value = (-m * plain.value) * identity4();
    r.abs_err = m * plain.abs_err;
    for (int l = 0; l < 4; ++l) {
        r.value = r.value + (kI * der[l].value) * gamma(l);
        r.abs_err += der[l].abs_err;
    }
    return r;
}

// Scalar pairings of all kinds against u and its first and second derivatives, in one shell batch.
struct DerivativeTable {
    std::vector<PropValues> vals;
    std::map<std::vector<int>, int> index;
    const PropValues& at(std::vector<int> axes) const {
        std::sort(axes.begin(), axes.end());
        return vals[index.at(axes)];
    }
};

DerivativeTable derivative_table(double m, const TestFn& u, int order, const QuadConfig& cfg, bool windowed) {
    DerivativeTable t;
    std::vector<TestFn> fns{u};
    t.index[{}] = 0;
    for (int a = 0; a < 4; ++a) {
        t.index[{a}] = int(fns.size());
        fns.push_back(derivative(u, a));
    }
    if (order >= 2)
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                t.index[{a, b}] = int(fns.size());
                fns.push_back(derivative(derivative(u, a), b));
            }
    // Derivatives share the Gaussian parameters of u, so one batched pass suffices.
    t.vals = windowed ? pair_all_kinds_windowed_batch(m, fns, cfg) : pair_all_kinds_batch(m, fns, cfg);
    return t;
}

MatPairing slash_from_table(double m, const DerivativeTable& t, PropTag tag, std::vector<int> extra) {
    std::array<PairingResult, 4> der;
    for (int l = 0; l < 4; ++l) {
        auto ax = extra;
        ax.push_back(l);
        der[l] = t.at(ax)[int(tag)];
    }
    return assemble_slash(m, t.at(extra)[int(tag)], der);
}

MatPairing residual_from_table(double m, const TestFn& u, const DerivativeTable& t, PropTag tag) {
    const bool elem = is_elementary(tag);
    const cplx psi = elem ? kI : cplx(1.0);
    MatPairing r;
    r.value = zero4();
    for (int l = 0; l < 4; ++l) {
        const MatPairing s = slash_from_table(m, t, tag, {l});
        r.value = r.value + (-kI * psi) * (gamma(l) * s.value);
        r.abs_err += 4.0 * s.abs_err;
    }
    const MatPairing s0 = slash_from_table(m, t, tag, {});
    r.value = r.value + (-m * psi) * s0.value;
    r.abs_err += m * s0.abs_err;
    if (elem) {
        const double origin[4] = {0, 0, 0, 0};
        r.value = r.value - eval(u, origin) * identity4();
    }
    return r;
}

CheckRow row(const std::string& id, double m, double r, double tol) { return CheckRow{id, m, r, tol, r <= tol, 0.0}; }

}  // namespace

const Mat4& gamma(int lambda) {
    static const std::array<Mat4, 4> g = build_gammas();
    return g.at(lambda);
}

Mat4 gamma_sharp(const FourVector& p) {
    Mat4 r = zero4();
    for (int l = 0; l < 4; ++l) r = r + cplx(p[l]) * gamma(l);
    return r;
}

MatPairing pair_dirac_propagator(const PropKind& k, const TestFn& u, const QuadConfig& cfg) {
    return pair_dirac_all(k.mass, u, cfg)[int(k.tag)];
}

std::array<MatPairing, kNumPropTags> pair_dirac_all(double m, const TestFn& u, const QuadConfig& cfg) {
    const DerivativeTable t = derivative_table(m, u, 1, cfg, false);
    std::array<MatPairing, kNumPropTags> out;
    for (int i = 0; i < kNumPropTags; ++i) out[i] = slash_from_table(m, t, PropTag(i), {});
    return out;
}

MatPairing dirac_residual(const PropKind& k, const TestFn& u, const QuadConfig& cfg) {
    const DerivativeTable t = derivative_table(k.mass, u, 2, cfg, false);
    return residual_from_table(k.mass, u, t, k.tag);
}

std::vector<CheckRow> verify_clifford(std::uint64_t seed, int count) {
    double anti = 0.0, herm = 0.0, fact = 0.0, sq = 0.0;
    for (int l = 0; l < 4; ++l) {
        for (int mu = 0; mu < 4; ++mu) {
            const double g = l == mu ? Metric::diag[l] : 0.0;
            const Mat4 a = gamma(l) * gamma(mu) + gamma(mu) * gamma(l);
            anti = std::max(anti, max_abs(a - (2.0 * g) * identity4()));
        }
        const Mat4 expect = l == 0 ? gamma(0) : (-1.0) * gamma(l);
        herm = std::max(herm, max_abs(adjoint(gamma(l)) - expect));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int n = 0; n < count; ++n) {
        const FourVector p{U(rng), U(rng), U(rng), U(rng)};
        const double m = std::abs(U(rng));
        const Mat4 gs = gamma_sharp(p);
        const double p2 = minkowski_square(p);
        const Mat4 lhs = (gs + m * identity4()) * (gs - m * identity4());
        fact = std::max(fact, max_abs(lhs - (p2 - m * m) * identity4()));
        sq = std::max(sq, max_abs(gs * gs - p2 * identity4()));
    }
    return {row("{gamma^l, gamma^m} = 2 g^lm Id", 0.0, anti, 0.0), row("gamma^0 hermitian, gamma^i antihermitian", 0.0, herm, 0.0),
            row("gamma#(p)^2 = g(p,p) Id", 0.0, sq, 1e-12),
            row("(gamma# + m)(gamma# - m) = (p^2 - m^2) Id", 0.0, fact, 1e-12)};
}

std::vector<CheckRow> verify_dirac(double m, const QuadConfig& cfg, std::uint64_t seed, int count) {
    double elem = 0.0, homog = 0.0, ret_adv = 0.0, idpart = 0.0, weyl = 0.0;
    std::mt19937_64 rng(seed);
    for (int n = 0; n < count; ++n) {
        const TestFn u = random_testfn(rng, 4);
        const double origin[4] = {0, 0, 0, 0};
        const double scale = std::abs(eval(u, origin)) + l1_norm(u);
        const DerivativeTable t = derivative_table(m, u, 2, cfg, false);
        for (PropTag k : {PropTag::Dret, PropTag::Dadv, PropTag::DF, PropTag::Dbullet})
            elem = std::max(elem, max_abs(residual_from_table(m, u, t, k).value) / scale);
        for (PropTag k : {PropTag::Dplus, PropTag::Dminus, PropTag::D, PropTag::Dcirc})
            homog = std::max(homog, max_abs(residual_from_table(m, u, t, k).value));
        // Window route for ret and adv against the shell route for D.
        const DerivativeTable w = derivative_table(m, u, 1, cfg, true);
        const Mat4 diff = slash_from_table(m, w, PropTag::Dret, {}).value - slash_from_table(m, w, PropTag::Dadv, {}).value;
        ret_adv = std::max(ret_adv, max_abs(diff - slash_from_table(m, t, PropTag::D, {}).value));
        for (int i = 0; i < kNumPropTags; ++i) {
            const Mat4 v = slash_from_table(m, t, PropTag(i), {}).value;
            cplx tr = 0.0;
            for (int a = 0; a < 4; ++a) tr += v[a][a];
            idpart = std::max(idpart, std::abs(0.25 * tr + m * t.at({})[i].value));
        }
        if (m == 0.0) {
            // Dslash^ret = -gamma#.eps+ on the light cone.
            std::vector<TestFn> ders;
            for (int l = 0; l < 4; ++l) ders.push_back(derivative(u, l));
            auto X = shell_pairings(ders, 0.0, {ShellItem::eps_p}, cfg);
            Mat4 expect = zero4();
            for (int l = 0; l < 4; ++l) expect = expect + X.single[ShellItem::eps_p][l].value * gamma(l);
            weyl = std::max(weyl, max_abs(slash_from_table(0.0, t, PropTag::Dret, {}).value - expect));
        }
    }
    const std::string eq = m == 0.0 ? "Weyl" : "Dirac";
    std::vector<CheckRow> rows{row(eq + " elementary residual (ret, adv, F, bullet)", m, elem, 1e-6),
                               row(eq + " homogeneous residual (D+, D-, D, Dcirc)", m, homog, 1e-7),
                               row("slashed ret - adv = slashed D", m, ret_adv, 1e-6),
                               row("Id part = -m scalar pairing", m, idpart, 1e-9)};
    if (m == 0.0) rows.push_back(row("slashed ret = -gamma#.eps+ (light cone)", m, weyl, 1e-7));
    return rows;
}

}  // namespace mkp
