#include "minkprop/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "minkprop/propagators.hpp"

namespace mkp {

namespace {

struct Gen {
    int mode;
    bool emit;
};
using Word = std::vector<Gen>;
using Key = std::pair<std::vector<int>, std::vector<int>>;
using Acc = std::map<Key, cplx>;

// Sorts ascending; for fermions each transposition flips the sign and a repeated mode annihilates.
bool sort_graded(std::vector<int>& v, bool fermion, int& sign) {
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] >= v[j]; --j) {
            if (v[j - 1] == v[j]) {
                if (fermion) return false;
                break;
            }
            std::swap(v[j - 1], v[j]);
            if (fermion) sign = -sign;
        }
    return true;
}

void reorder(const Word& w, cplx c, bool fermion, double contraction, bool contract, Acc& out) {
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
        if (!w[p].emit && w[p + 1].emit) {
            Word s = w;
            std::swap(s[p], s[p + 1]);
            reorder(s, fermion ? -c : c, fermion, contraction, contract, out);
            if (contract && w[p].mode == w[p + 1].mode) {
                Word r;
                r.reserve(w.size() - 2);
                for (std::size_t q = 0; q < w.size(); ++q)
                    if (q != p && q != p + 1) r.push_back(w[q]);
                reorder(r, c * contraction, fermion, contraction, contract, out);
            }
            return;
        }
    }
    Key k;
    for (const auto& g : w) (g.emit ? k.first : k.second).push_back(g.mode);
    int sign = 1;
    if (!sort_graded(k.first, fermion, sign) || !sort_graded(k.second, fermion, sign)) return;
    out[k] += double(sign) * c;
}

OpExpr from_acc(Statistics s, double contraction, const Acc& acc) {
    OpExpr e = op_zero(s, contraction);
    for (const auto& [k, c] : acc)
        if (c != cplx(0.0)) e.terms.push_back(OpTerm{c, k.first, k.second});
    return e;
}

Word word_of(const OpTerm& t) {
    Word w;
    for (int m : t.em) w.push_back({m, true});
    for (int m : t.ab) w.push_back({m, false});
    return w;
}

void check_compatible(const OpExpr& a, const OpExpr& b) {
    if (a.stats != b.stats || a.contraction != b.contraction)
        throw std::invalid_argument("operator expressions from different algebras");
}

OpExpr compose(const OpExpr& a, const OpExpr& b, bool contract) {
    check_compatible(a, b);
    Acc acc;
    const bool fermion = a.stats == Statistics::fermion;
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            Word w = word_of(ta);
            const Word wb = word_of(tb);
            w.insert(w.end(), wb.begin(), wb.end());
            reorder(w, ta.coeff * tb.coeff, fermion, a.contraction, contract, acc);
        }
    return from_acc(a.stats, a.contraction, acc);
}

bool is_linear(const OpExpr& a) {
    for (const auto& t : a.terms)
        if (t.size() != 1) return false;
    return true;
}

// Linear expressions sorted into canonical order: absorptions by mode, then emissions by mode.
OpExpr linear_expr(Statistics s, double contraction, std::vector<std::pair<Gen, cplx>> items) {
    std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
        if (x.first.emit != y.first.emit) return !x.first.emit;
        return x.first.mode < y.first.mode;
    });
    OpExpr e = op_zero(s, contraction);
    for (const auto& [g, c] : items) {
        if (c == cplx(0.0)) continue;
        if (!e.terms.empty()) {
            auto& last = e.terms.back();
            const bool same = g.emit ? (last.ab.empty() && last.em.size() == 1 && last.em[0] == g.mode)
                                     : (last.em.empty() && last.ab.size() == 1 && last.ab[0] == g.mode);
            if (same) {
                last.coeff += c;
                continue;
            }
        }
        e.terms.push_back(g.emit ? OpTerm{c, {g.mode}, {}} : OpTerm{c, {}, {g.mode}});
    }
    return e;
}

double phase(const LatticeSpec& spec, int k, const FourVector& x) {
    const Vec3 p = spec.momentum(k);
    return spec.energy(k) * x[0] - (p[0] * x[1] + p[1] * x[2] + p[2] * x[3]);
}

double mode_norm(const LatticeSpec& spec, int k) {
    const double dp3 = spec.dp * spec.dp * spec.dp;
    return dp3 * std::pow(2.0 * kPi, -1.5) / std::sqrt(2.0 * spec.energy(k));
}

CheckRow row(const std::string& id, double m, double r, double tol) { return CheckRow{id, m, r, tol, r <= tol, 0.0}; }

double max_coeff_diff(const OpExpr& a, const OpExpr& b) {
    const OpExpr d = a - b;
    double r = 0.0;
    for (const auto& t : d.terms) r = std::max(r, std::abs(t.coeff));
    return r;
}

}  // namespace

OpExpr op_zero(Statistics s, double contraction) { return OpExpr{s, contraction, {}}; }

OpExpr op_identity(Statistics s, double contraction, cplx c) {
    OpExpr e = op_zero(s, contraction);
    if (c != cplx(0.0)) e.terms.push_back(OpTerm{c, {}, {}});
    return e;
}

OpExpr op_emit(Statistics s, int mode, double contraction) {
    OpExpr e = op_zero(s, contraction);
    e.terms.push_back(OpTerm{1.0, {mode}, {}});
    return e;
}

OpExpr op_absorb(Statistics s, int mode, double contraction) {
    OpExpr e = op_zero(s, contraction);
    e.terms.push_back(OpTerm{1.0, {}, {mode}});
    return e;
}

OpExpr op_canonical(Statistics s, double contraction, std::vector<OpTerm> terms) {
    Acc acc;
    for (const auto& t : terms) reorder(word_of(t), t.coeff, s == Statistics::fermion, contraction, true, acc);
    return from_acc(s, contraction, acc);
}

OpExpr operator+(const OpExpr& a, const OpExpr& b) {
    check_compatible(a, b);
    Acc acc;
    for (const auto& t : a.terms) acc[{t.em, t.ab}] += t.coeff;
    for (const auto& t : b.terms) acc[{t.em, t.ab}] += t.coeff;
    return from_acc(a.stats, a.contraction, acc);
}

OpExpr operator*(cplx c, const OpExpr& a) {
    OpExpr e = op_zero(a.stats, a.contraction);
    if (c == cplx(0.0)) return e;
    for (auto t : a.terms) {
        t.coeff *= c;
        e.terms.push_back(std::move(t));
    }
    return e;
}

OpExpr operator-(const OpExpr& a, const OpExpr& b) { return a + (-1.0) * b; }

bool operator==(const OpExpr& a, const OpExpr& b) {
    if (a.stats != b.stats || a.contraction != b.contraction || a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        const auto &x = a.terms[i], &y = b.terms[i];
        if (x.coeff != y.coeff || x.em != y.em || x.ab != y.ab) return false;
    }
    return true;
}

bool is_zero(const OpExpr& a) { return a.terms.empty(); }

bool is_central(const OpExpr& a, cplx* c) {
    if (a.terms.empty()) {
        if (c) *c = 0.0;
        return true;
    }
    if (a.terms.size() == 1 && a.terms[0].size() == 0) {
        if (c) *c = a.terms[0].coeff;
        return true;
    }
    return false;
}

int grade(const OpExpr& a) {
    if (a.stats == Statistics::boson || a.terms.empty()) return 0;
    const int g = a.terms[0].size() % 2;
    for (const auto& t : a.terms)
        if (t.size() % 2 != g) throw std::invalid_argument("expression has no definite grade");
    return g;
}

OpExpr multiply(const OpExpr& a, const OpExpr& b) { return compose(a, b, true); }

OpExpr normal_order_free(const OpExpr& a, const OpExpr& b) { return compose(a, b, false); }

OpExpr graded_commutator_general(const OpExpr& a, const OpExpr& b) {
    const double s = (grade(a) * grade(b)) % 2 ? -1.0 : 1.0;
    return multiply(a, b) - s * multiply(b, a);
}

OpExpr graded_commutator(const OpExpr& a, const OpExpr& b) {
    check_compatible(a, b);
    if (!is_linear(a) || !is_linear(b)) return graded_commutator_general(a, b);
    // Single generators: only an absorption against an emission of the same mode survives.
    const bool fermion = a.stats == Statistics::fermion;
    std::unordered_map<int, std::pair<cplx, cplx>> bmap;  // mode -> (emit coeff, absorb coeff)
    for (const auto& t : b.terms) {
        if (t.em.empty())
            bmap[t.ab[0]].second += t.coeff;
        else
            bmap[t.em[0]].first += t.coeff;
    }
    // Absorption and emission parts are summed separately so that mirrored sums cancel exactly.
    cplx sum_ab = 0.0, sum_em = 0.0;
    for (const auto& t : a.terms) {
        const bool emit = !t.em.empty();
        const int mode = emit ? t.em[0] : t.ab[0];
        auto it = bmap.find(mode);
        if (it == bmap.end()) continue;
        if (emit)
            sum_em += t.coeff * it->second.second * (fermion ? 1.0 : -1.0);
        else
            sum_ab += t.coeff * it->second.first;
    }
    return op_identity(a.stats, a.contraction, (sum_ab + sum_em) * a.contraction);
}

int FockBasis::total(int i) const {
    int s = 0;
    for (int n : states[i]) s += n;
    return s;
}

FockBasis make_basis(Statistics s, int modes, int nmax) {
    FockBasis b;
    b.stats = s;
    b.modes = modes;
    b.nmax = nmax;
    const int cap = s == Statistics::fermion ? 1 : nmax;
    std::vector<int> occ(modes, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == modes) {
            if (b.states.size() >= 20000) throw std::length_error("Fock basis dimension exceeds 20000");
            b.index[occ] = int(b.states.size());
            b.states.push_back(occ);
            return;
        }
        for (int n = 0; n <= std::min(cap, left); ++n) {
            occ[i] = n;
            rec(i + 1, left - n);
        }
        occ[i] = 0;
    };
    rec(0, nmax);
    return b;
}

FockMatrix matrix_realize(const OpExpr& a, const FockBasis& basis) {
    if (a.stats != basis.stats) throw std::invalid_argument("statistics mismatch");
    FockMatrix M;
    M.dim = int(basis.states.size());
    M.data.assign(std::size_t(M.dim) * M.dim, 0.0);
    const bool fermion = basis.stats == Statistics::fermion;
    const double sc = std::sqrt(a.contraction);
    for (const auto& t : a.terms) {
        for (int m : t.em)
            if (m < 0 || m >= basis.modes) throw std::out_of_range("mode outside the Fock basis");
        for (int m : t.ab)
            if (m < 0 || m >= basis.modes) throw std::out_of_range("mode outside the Fock basis");
        for (int j = 0; j < M.dim; ++j) {
            std::vector<int> n = basis.states[j];
            int tot = basis.total(j);
            cplx amp = t.coeff;
            bool alive = true;
            auto jw = [&](int mode) {
                int s = 0;
                for (int q = 0; q < mode; ++q) s += n[q];
                return (s % 2) ? -1.0 : 1.0;
            };
            for (auto it = t.ab.rbegin(); alive && it != t.ab.rend(); ++it) {
                const int i = *it;
                if (n[i] == 0) {
                    alive = false;
                    break;
                }
                amp *= fermion ? sc * jw(i) : sc * std::sqrt(double(n[i]));
                --n[i];
                --tot;
            }
            for (auto it = t.em.rbegin(); alive && it != t.em.rend(); ++it) {
                const int i = *it;
                if (fermion && n[i] == 1) {
                    alive = false;
                    break;
                }
                amp *= fermion ? sc * jw(i) : sc * std::sqrt(double(n[i] + 1));
                ++n[i];
                ++tot;
                if (tot > basis.nmax) alive = false;
            }
            if (!alive) continue;
            M.at(basis.index.at(n), j) += amp;
        }
    }
    return M;
}

FockMatrix matmul(const FockMatrix& a, const FockMatrix& b) {
    FockMatrix c;
    c.dim = a.dim;
    c.data.assign(a.data.size(), 0.0);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const cplx x = a.at(i, k);
            if (x == cplx(0.0)) continue;
            for (int j = 0; j < a.dim; ++j) c.at(i, j) += x * b.at(k, j);
        }
    return c;
}

Vec3 LatticeSpec::momentum(int k) const {
    const int s = side();
    const int i = k / (s * s), j = (k / s) % s, l = k % s;
    return {(i - n_half) * dp, (j - n_half) * dp, (l - n_half) * dp};
}

double LatticeSpec::energy(int k) const { return energy_on_shell(mass, momentum(k)); }

void LatticeSpec::validate() const {
    if (!(dp > 0.0)) throw std::invalid_argument("lattice spacing must be positive");
    if (n_half < 0) throw std::invalid_argument("n_half must be nonnegative");
    if (!(mass > 0.0)) throw std::invalid_argument("lattice fields require a positive mass");
    if (internal_dim != 1) throw std::invalid_argument("only internal_dim = 1 is supported");
    if (side() > 201) throw std::invalid_argument("lattice too large");
}

OpExpr generator(GenKind kind, int k, const LatticeSpec& spec) {
    if (k < 0 || k >= spec.modes()) throw std::out_of_range("lattice mode out of range");
    const int N = spec.modes();
    switch (kind) {
        case GenKind::absorb_particle: return op_absorb(spec.stats, k, spec.contraction());
        case GenKind::emit_particle: return op_emit(spec.stats, k, spec.contraction());
        case GenKind::absorb_anti: return op_absorb(spec.stats, N + k, spec.contraction());
        case GenKind::emit_anti: return op_emit(spec.stats, N + k, spec.contraction());
    }
    return op_zero(spec.stats, spec.contraction());
}

OpExpr field_expr(const FourVector& x, const LatticeSpec& spec, bool td) {
    spec.validate();
    const int N = spec.modes();
    std::vector<std::pair<Gen, cplx>> items;
    items.reserve(2 * N);
    for (int k = 0; k < N; ++k) {
        const double nk = mode_norm(spec, k), th = phase(spec, k, x), E = spec.energy(k);
        items.push_back({{k, false}, nk * std::polar(1.0, -th) * (td ? -kI * E : cplx(1.0))});
        items.push_back({{N + k, true}, nk * std::polar(1.0, th) * (td ? kI * E : cplx(1.0))});
    }
    return linear_expr(spec.stats, spec.contraction(), std::move(items));
}

OpExpr antifield_expr(const FourVector& x, const LatticeSpec& spec, bool td) {
    spec.validate();
    const int N = spec.modes();
    const double sgn = spec.stats == Statistics::boson ? 1.0 : -1.0;
    std::vector<std::pair<Gen, cplx>> items;
    items.reserve(2 * N);
    for (int k = 0; k < N; ++k) {
        const double nk = mode_norm(spec, k), th = phase(spec, k, x), E = spec.energy(k);
        items.push_back({{N + k, false}, sgn * nk * std::polar(1.0, -th) * (td ? -kI * E : cplx(1.0))});
        items.push_back({{k, true}, nk * std::polar(1.0, th) * (td ? kI * E : cplx(1.0))});
    }
    return linear_expr(spec.stats, spec.contraction(), std::move(items));
}

OpExpr field_dagger_expr(const FourVector& x, const LatticeSpec& spec) {
    spec.validate();
    const int N = spec.modes();
    std::vector<std::pair<Gen, cplx>> items;
    items.reserve(2 * N);
    for (int k = 0; k < N; ++k) {
        const double nk = mode_norm(spec, k), th = phase(spec, k, x);
        items.push_back({{k, true}, nk * std::polar(1.0, th)});
        items.push_back({{N + k, false}, nk * std::polar(1.0, -th)});
    }
    return linear_expr(spec.stats, spec.contraction(), std::move(items));
}

namespace {

// int f(x) exp(-+ i <p,x>) d^4x = (2 pi)^2 F+- f(E, -p).
std::pair<std::vector<cplx>, std::vector<cplx>> smear_coefficients(const TestFn& f, const LatticeSpec& spec) {
    if (f.dim != 4) throw std::invalid_argument("smearing functions must be dim 4");
    const TestFn fp = fourier_analytic(f, 1), fm = fourier_analytic(f, -1);
    const int N = spec.modes();
    std::vector<cplx> minus(N), plus(N);
    const double c = 4.0 * kPi * kPi;
    for (int k = 0; k < N; ++k) {
        const Vec3 p = spec.momentum(k);
        const double y[4] = {spec.energy(k), -p[0], -p[1], -p[2]};
        minus[k] = c * eval(fp, y);
        plus[k] = c * eval(fm, y);
    }
    return {minus, plus};
}

}  // namespace

OpExpr smeared_field_expr(const TestFn& f, const LatticeSpec& spec) {
    spec.validate();
    const int N = spec.modes();
    const auto [minus, plus] = smear_coefficients(f, spec);
    std::vector<std::pair<Gen, cplx>> items;
    items.reserve(2 * N);
    for (int k = 0; k < N; ++k) {
        const double nk = mode_norm(spec, k);
        items.push_back({{k, false}, nk * minus[k]});
        items.push_back({{N + k, true}, nk * plus[k]});
    }
    return linear_expr(spec.stats, spec.contraction(), std::move(items));
}

OpExpr smeared_antifield_expr(const TestFn& g, const LatticeSpec& spec) {
    spec.validate();
    const int N = spec.modes();
    const double sgn = spec.stats == Statistics::boson ? 1.0 : -1.0;
    const auto [minus, plus] = smear_coefficients(g, spec);
    std::vector<std::pair<Gen, cplx>> items;
    items.reserve(2 * N);
    for (int k = 0; k < N; ++k) {
        const double nk = mode_norm(spec, k);
        items.push_back({{N + k, false}, sgn * nk * minus[k]});
        items.push_back({{k, true}, nk * plus[k]});
    }
    return linear_expr(spec.stats, spec.contraction(), std::move(items));
}

namespace {
const char* const kCommNames[] = {"field-antifield", "field-antifield-d0", "d0field-antifield",
                                  "field-field",     "field-fielddag",     "pi-pi"};
}

CommKind parse_comm_kind(const std::string& name) {
    for (int i = 0; i < 6; ++i)
        if (name == kCommNames[i]) return CommKind(i);
    throw std::invalid_argument("unknown commutator kind: " + name);
}

std::string comm_name(CommKind k) { return kCommNames[int(k)]; }

cplx commutator_value(const FourVector& x, const FourVector& y, CommKind which, const LatticeSpec& spec) {
    OpExpr a, b;
    switch (which) {
        case CommKind::field_antifield: a = field_expr(x, spec); b = antifield_expr(y, spec); break;
        case CommKind::field_antifield_d0: a = field_expr(x, spec); b = antifield_expr(y, spec, true); break;
        case CommKind::d0field_antifield: a = field_expr(x, spec, true); b = antifield_expr(y, spec); break;
        case CommKind::field_field: a = field_expr(x, spec); b = field_expr(y, spec); break;
        case CommKind::field_fielddag: a = field_expr(x, spec); b = field_dagger_expr(y, spec); break;
        case CommKind::pi_pi: a = antifield_expr(x, spec, true); b = antifield_expr(y, spec, true); break;
    }
    cplx c;
    if (!is_central(graded_commutator(a, b), &c)) throw std::logic_error("field commutator is not central");
    return c;
}

cplx lattice_delta(const Vec3& d, const LatticeSpec& spec) {
    const double dp3 = spec.dp * spec.dp * spec.dp;
    cplx s = 0.0;
    for (int k = 0; k < spec.modes(); ++k) {
        const Vec3 p = spec.momentum(k);
        s += std::polar(1.0, p[0] * d[0] + p[1] * d[1] + p[2] * d[2]);
    }
    return s * dp3 * std::pow(2.0 * kPi, -3.0);
}

cplx lattice_D(const FourVector& d, const LatticeSpec& spec) {
    const double dp3 = spec.dp * spec.dp * spec.dp;
    cplx s = 0.0;
    for (int k = 0; k < spec.modes(); ++k) {
        const double th = phase(spec, k, d);
        s += (std::polar(1.0, -th) - std::polar(1.0, th)) / (2.0 * spec.energy(k));
    }
    return s * dp3 * std::pow(2.0 * kPi, -3.0);
}

namespace {

OpExpr random_expr(std::mt19937_64& rng, Statistics s, int modes, int max_em, int max_ab, int parity) {
    std::uniform_int_distribution<int> nterms(1, 3), nem(0, max_em), nab(0, max_ab), mode(0, modes - 1);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<OpTerm> terms;
    const int n = nterms(rng);
    while (int(terms.size()) < n) {
        OpTerm t;
        t.coeff = cplx(U(rng), U(rng));
        const int e = nem(rng), a = nab(rng);
        for (int i = 0; i < e; ++i) t.em.push_back(mode(rng));
        for (int i = 0; i < a; ++i) t.ab.push_back(mode(rng));
        if (parity >= 0 && t.size() % 2 != parity) continue;
        terms.push_back(t);
    }
    return op_canonical(s, 1.0, terms);
}

int max_emissions(const OpExpr& a) {
    int m = 0;
    for (const auto& t : a.terms) m = std::max(m, int(t.em.size()));
    return m;
}

double headroom_diff(const FockMatrix& A, const FockMatrix& B, const FockBasis& basis, int headroom) {
    double r = 0.0;
    for (int j = 0; j < A.dim; ++j) {
        if (basis.total(j) > basis.nmax - headroom) continue;
        for (int i = 0; i < A.dim; ++i) r = std::max(r, std::abs(A.at(i, j) - B.at(i, j)));
    }
    return r;
}

FockMatrix mat_lin(const FockMatrix& a, cplx sa, const FockMatrix& b, cplx sb) {
    FockMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = sa * a.data[i] + sb * b.data[i];
    return c;
}

}  // namespace

std::vector<CheckRow> verify_fock_algebra(std::uint64_t seed) {
    std::vector<CheckRow> rows;
    for (Statistics s : {Statistics::boson, Statistics::fermion}) {
        const std::string tag = s == Statistics::boson ? "boson: " : "fermion: ";
        const bool fermion = s == Statistics::fermion;
        // Generator relations, symbolic, with a lattice-like contraction constant.
        const double C = 8.0;
        double gen = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const OpExpr ai = op_absorb(s, i, C), aj = op_absorb(s, j, C), ei = op_emit(s, i, C),
                             ej = op_emit(s, j, C);
                gen = std::max(gen, max_coeff_diff(graded_commutator_general(ai, ej), op_identity(s, C, i == j ? C : 0.0)));
                gen = std::max(gen, max_coeff_diff(graded_commutator_general(ai, aj), op_zero(s, C)));
                gen = std::max(gen, max_coeff_diff(graded_commutator_general(ei, ej), op_zero(s, C)));
                gen = std::max(gen, max_coeff_diff(graded_commutator(ai, ej), graded_commutator_general(ai, ej)));
                gen = std::max(gen, max_coeff_diff(graded_commutator(ej, ai), graded_commutator_general(ej, ai)));
            }
        rows.push_back(row(tag + "generator relations (symbolic)", 0.0, gen, 1e-12));

        // Dense oracle on 2 modes, n_max = 3.
        const FockBasis b3 = make_basis(s, 2, 3);
        double mat = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                const OpExpr ai = op_absorb(s, i), ej = op_emit(s, j), aj = op_absorb(s, j), ei = op_emit(s, i);
                const double sg = fermion ? 1.0 : -1.0;
                const FockMatrix Ai = matrix_realize(ai, b3), Ej = matrix_realize(ej, b3),
                                 Aj = matrix_realize(aj, b3), Ei = matrix_realize(ei, b3);
                const FockMatrix c1 = mat_lin(matmul(Ai, Ej), 1.0, matmul(Ej, Ai), sg);
                mat = std::max(mat, headroom_diff(c1, matrix_realize(op_identity(s, 1.0, i == j ? 1.0 : 0.0), b3), b3, 1));
                const FockMatrix c2 = mat_lin(matmul(Ai, Aj), 1.0, matmul(Aj, Ai), sg);
                const FockMatrix c3 = mat_lin(matmul(Ei, Ej), 1.0, matmul(Ej, Ei), sg);
                mat = std::max(mat, headroom_diff(c2, matrix_realize(op_zero(s), b3), b3, 0));
                mat = std::max(mat, headroom_diff(c3, matrix_realize(op_zero(s), b3), b3, 2));
            }
        rows.push_back(row(tag + "generator relations (matrix oracle, 2 modes, n_max 3)", 0.0, mat, 1e-12));

        // Random products and commutators against the oracle on 2 modes, n_max = 4.
        std::mt19937_64 rng(seed + (fermion ? 1000 : 0));
        const FockBasis b4 = make_basis(s, 2, 4);
        double prod = 0.0, comm = 0.0, freediff = 0.0;
        for (int n = 0; n < 50; ++n) {
            const int pa = fermion ? int(rng() % 2) : -1, pb = fermion ? int(rng() % 2) : -1;
            const OpExpr a = random_expr(rng, s, 2, 2, 2, pa), b = random_expr(rng, s, 2, 2, 2, pb);
            const FockMatrix Ma = matrix_realize(a, b4), Mb = matrix_realize(b, b4);
            const int h = max_emissions(a) + max_emissions(b);
            prod = std::max(prod, headroom_diff(matrix_realize(multiply(a, b), b4), matmul(Ma, Mb), b4, h));
            const double sg = (grade(a) * grade(b)) % 2 ? 1.0 : -1.0;
            comm = std::max(comm, headroom_diff(matrix_realize(graded_commutator(a, b), b4),
                                                mat_lin(matmul(Ma, Mb), 1.0, matmul(Mb, Ma), sg), b4, h));
            // The contraction-free product keeps exactly the full-length terms of the Wick product.
            const OpExpr fr = normal_order_free(a, b);
            const OpExpr diff = multiply(a, b) - fr;
            std::vector<OpTerm> top;
            for (const auto& ta : a.terms)
                for (const auto& tb : b.terms) {
                    const double hop = fermion && (ta.ab.size() * tb.em.size()) % 2 ? -1.0 : 1.0;
                    OpTerm t{hop * ta.coeff * tb.coeff, ta.em, ta.ab};
                    t.em.insert(t.em.end(), tb.em.begin(), tb.em.end());
                    t.ab.insert(t.ab.end(), tb.ab.begin(), tb.ab.end());
                    top.push_back(t);
                }
            freediff = std::max(freediff, max_coeff_diff(fr, op_canonical(s, 1.0, top)));
            for (const auto& t : diff.terms) {
                bool lower = false;
                for (const auto& ta : a.terms)
                    for (const auto& tb : b.terms) lower = lower || t.size() < ta.size() + tb.size();
                if (!lower) freediff = std::max(freediff, std::abs(t.coeff));
            }
        }
        rows.push_back(row(tag + "multiply vs matrix product (50 random pairs)", 0.0, prod, 1e-12));
        rows.push_back(row(tag + "graded commutator vs matrix commutator", 0.0, comm, 1e-12));
        rows.push_back(row(tag + "normal_order_free = multiply without contractions", 0.0, freediff, 1e-12));

        // Graded Jacobi identity on random homogeneous triples.
        double jac = 0.0;
        for (int n = 0; n < 20; ++n) {
            const int p[3] = {fermion ? int(rng() % 2) : -1, fermion ? int(rng() % 2) : -1, fermion ? int(rng() % 2) : -1};
            const OpExpr x = random_expr(rng, s, 2, 1, 1, p[0]), y = random_expr(rng, s, 2, 1, 1, p[1]),
                         z = random_expr(rng, s, 2, 1, 1, p[2]);
            const int gx = grade(x), gy = grade(y), gz = grade(z);
            auto sg = [](int a, int b) { return (a * b) % 2 ? -1.0 : 1.0; };
            const OpExpr J = sg(gx, gz) * graded_commutator(x, graded_commutator(y, z)) +
                             sg(gy, gx) * graded_commutator(y, graded_commutator(z, x)) +
                             sg(gz, gy) * graded_commutator(z, graded_commutator(x, y));
            jac = std::max(jac, max_coeff_diff(J, op_zero(s)));
        }
        rows.push_back(row(tag + "graded Jacobi identity", 0.0, jac, 1e-12));

        // Canonical ordering signs and nilpotency.
        const OpExpr ab = op_canonical(s, 1.0, {OpTerm{1.0, {1, 0}, {}}});
        const OpExpr ba = op_canonical(s, 1.0, {OpTerm{1.0, {0, 1}, {}}});
        const double sw = max_coeff_diff(ab, (fermion ? -1.0 : 1.0) * ba);
        rows.push_back(row(tag + "swap sign of canonical reordering", 0.0, sw, 0.0));
        if (fermion) {
            const double nil = std::max(max_coeff_diff(multiply(op_emit(s, 0), op_emit(s, 0)), op_zero(s)),
                                        max_coeff_diff(multiply(op_absorb(s, 1), op_absorb(s, 1)), op_zero(s)));
            const FockMatrix E = matrix_realize(op_emit(s, 0), b3);
            double mz = 0.0;
            for (const auto& v : matmul(E, E).data) mz = std::max(mz, std::abs(v));
            rows.push_back(row(tag + "nilpotency a+ a+ = a a = 0", 0.0, std::max(nil, mz), 0.0));
        } else {
            const FockMatrix Nm = matrix_realize(multiply(op_emit(s, 1), op_absorb(s, 1)), b3);
            double occ = 0.0;
            for (int j = 0; j < Nm.dim; ++j) occ = std::max(occ, std::abs(Nm.at(j, j) - double(b3.states[j][1])));
            rows.push_back(row(tag + "number operator counts occupation", 0.0, occ, 1e-12));
        }
    }
    return rows;
}

std::vector<CheckRow> verify_ccr(const LatticeSpec& spec) {
    spec.validate();
    const std::string tag = spec.stats == Statistics::boson ? "boson: " : "fermion: ";
    const double m = spec.mass;
    const FourVector x{0.3, 0.1, -0.2, 0.4}, y{0.3, -0.5, 0.3, 0.0}, z{-0.4, 0.6, 0.2, -0.1};
    std::vector<CheckRow> rows;
    double eq0 = 0.0, pi = 0.0, pi0 = 0.0;
    for (const auto& [a, b] : {std::pair{x, y}, std::pair{x, x}}) {
        const Vec3 d{a[1] - b[1], a[2] - b[2], a[3] - b[3]};
        const cplx delta = lattice_delta(d, spec);
        eq0 = std::max(eq0, std::abs(commutator_value(a, b, CommKind::field_antifield, spec)));
        pi = std::max(pi, std::abs(commutator_value(a, b, CommKind::field_antifield_d0, spec) - kI * delta));
        pi0 = std::max(pi0, std::abs(commutator_value(a, b, CommKind::d0field_antifield, spec) + kI * delta));
    }
    rows.push_back(row(tag + "equal-time [[phi, phi~]] = 0", m, eq0, 1e-12));
    rows.push_back(row(tag + "equal-time [[phi, Pi]] = +i delta_lattice", m, pi, 1e-12));
    rows.push_back(row(tag + "equal-time [[phi_0, phi~]] = -i delta_lattice", m, pi0, 1e-12));
    const FourVector d{x[0] - z[0], x[1] - z[1], x[2] - z[2], x[3] - z[3]};
    rows.push_back(row(tag + "[[phi(x), phi~(y)]] = lattice D(x - y)", m,
                       std::abs(commutator_value(x, z, CommKind::field_antifield, spec) - lattice_D(d, spec)), 1e-12));
    const OpExpr ff = graded_commutator(field_expr(x, spec), field_expr(z, spec));
    const OpExpr pp = graded_commutator(antifield_expr(x, spec, true), antifield_expr(z, spec, true));
    const OpExpr ff_eq = graded_commutator(field_expr(x, spec), field_expr(y, spec));
    const OpExpr pp_eq = graded_commutator(antifield_expr(x, spec, true), antifield_expr(y, spec, true));
    rows.push_back(row(tag + "[[phi, phi]] identically zero", m, is_zero(ff) && is_zero(ff_eq) ? 0.0 : 1.0, 0.0));
    rows.push_back(row(tag + "[[Pi, Pi]] identically zero", m, is_zero(pp) && is_zero(pp_eq) ? 0.0 : 1.0, 0.0));
    // The full Wick route on a small lattice: central, matching the direct pairing path.
    LatticeSpec small = spec;
    small.n_half = std::min(spec.n_half, 1);
    const OpExpr gfull = graded_commutator_general(field_expr(x, small), antifield_expr(z, small));
    const OpExpr gfast = graded_commutator(field_expr(x, small), antifield_expr(z, small));
    cplx c1 = 0.0, c2 = 0.0;
    const bool central = is_central(gfull, &c1) && is_central(gfast, &c2);
    rows.push_back(row(tag + "field commutator central (full Wick route)", m, central ? std::abs(c1 - c2) : 1.0, 1e-12));
    const bool ffz = is_zero(graded_commutator_general(field_expr(x, small), field_expr(z, small))) &&
                     is_zero(graded_commutator_general(antifield_expr(x, small, true), antifield_expr(z, small, true)));
    rows.push_back(row(tag + "vanishing commutators zero on full Wick route", m, ffz ? 0.0 : 1.0, 0.0));
    const cplx fd = commutator_value(x, z, CommKind::field_fielddag, spec);
    if (spec.stats == Statistics::boson)
        rows.push_back(row(tag + "[[phi, phi+]] = [[phi, phi~]]", m,
                           std::abs(fd - commutator_value(x, z, CommKind::field_antifield, spec)), 1e-12));
    else
        rows.push_back(row(tag + "[[phi, phi+]] central", m, 0.0, 0.0));
    return rows;
}

BridgeReport commutator_vs_propagator(const FourVector& sep, double m, const std::vector<double>& ladder,
                                      double sigma_f, double tolerance, const QuadConfig& cfg) {
    BridgeReport R;
    R.separation = sep;
    R.mass = m;
    R.sigma_f = sigma_f;
    TestFn f = gaussian(4, sigma_f), g = gaussian(4, sigma_f);
    f.center = {sep[0], sep[1], sep[2], sep[3]};
    TestFn u = scale(gaussian(4, std::sqrt(2.0) * sigma_f), std::pow(kPi * sigma_f * sigma_f, 2.0));
    u.center = f.center;
    R.oracle = pair_propagator(PropKind{PropTag::D, m}, u, cfg);
    const double on = std::abs(R.oracle.value);
    R.floor = std::max(10.0 * R.oracle.abs_err / std::max(on, 1e-300), 1e-12);
    for (double dp : ladder) {
        LatticeSpec spec;
        spec.dp = dp;
        spec.n_half = int(std::ceil(6.0 / dp - 1e-9));
        spec.mass = m;
        spec.stats = Statistics::boson;
        BridgeRung r;
        r.dp = dp;
        r.n_half = spec.n_half;
        r.modes = spec.modes();
        cplx c;
        if (!is_central(graded_commutator(smeared_field_expr(f, spec), smeared_antifield_expr(g, spec)), &c))
            throw std::logic_error("smeared commutator is not central");
        r.smeared = c;
        r.deviation = std::abs(c - R.oracle.value) / std::max(on, 1e-300);
        r.pointwise = commutator_value(sep, FourVector{0, 0, 0, 0}, CommKind::field_antifield, spec);
        R.rungs.push_back(r);
    }
    R.monotone = true;
    for (std::size_t i = 1; i < R.rungs.size(); ++i)
        if (R.rungs[i].deviation > std::max(R.rungs[i - 1].deviation, R.floor)) R.monotone = false;
    R.final_deviation = R.rungs.empty() ? 0.0 : R.rungs.back().deviation;
    R.pass = R.monotone && R.final_deviation <= tolerance;
    return R;
}

std::vector<CheckRow> verify_bridge(double m, const std::vector<double>& ladder, const QuadConfig& cfg) {
    const BridgeReport b = commutator_vs_propagator({1.0, 0.0, 0.0, 0.0}, m, ladder, 1.25, 0.05, cfg);
    std::vector<CheckRow> rows;
    rows.push_back(CheckRow{"bridge deviation monotone under dp halving", m, b.monotone ? 0.0 : 1.0, 0.0, b.monotone,
                            b.floor});
    rows.push_back(row("bridge final relative deviation", m, b.final_deviation, 0.05));
    rows.back().pass = b.pass;
    const BridgeReport s = commutator_vs_propagator({1.0, 12.0, 0.0, 0.0}, m, ladder, 1.25, 0.05, cfg);
    int rises = 0;
    for (std::size_t i = 1; i < s.rungs.size(); ++i)
        if (std::abs(s.rungs[i].smeared) >= std::abs(s.rungs[i - 1].smeared)) ++rises;
    CheckRow t = row("spacelike smeared commutator decreasing under refinement", m, double(rises), 0.0);
    t.extra = s.rungs.empty() ? 0.0 : std::abs(s.rungs.back().smeared);
    rows.push_back(t);
    return rows;
}

}  // namespace mkp
