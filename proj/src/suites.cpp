#include "minkprop/suites.hpp"

#include <stdexcept>

#include "minkprop/densities_1d.hpp"
#include "minkprop/dirac.hpp"
#include "minkprop/fock.hpp"
#include "minkprop/fourier.hpp"
#include "minkprop/propagators.hpp"

namespace mkp {

namespace {

void append(std::vector<CheckRow>& out, const std::vector<CheckRow>& rows) {
    out.insert(out.end(), rows.begin(), rows.end());
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"ft_table", "fourier", "massshell", "propagators", "dirac", "fock"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
    SuiteResult r;
    r.name = name;
    const auto& cfg = opt.cfg;
    bool massless = false;
    for (double m : opt.masses) massless = massless || m == 0.0;
    if (name == "ft_table") {
        append(r.rows, verify_ft_table(cfg, opt.seed, 10));
    } else if (name == "fourier") {
        for (double m : opt.masses) {
            append(r.rows, verify_corollary(m, cfg, opt.seed, opt.count));
            append(r.rows, verify_F_perp_lemma(m, cfg, opt.seed, opt.count));
            append(r.rows, verify_prop_digamma(m, cfg, opt.seed, opt.count));
            append(r.rows, verify_ehat_identities(m, cfg, opt.seed, opt.count));
        }
        if (massless) append(r.rows, verify_massless_table(cfg, opt.seed, opt.count));
    } else if (name == "massshell") {
        for (double m : opt.masses) append(r.rows, check_opp_decomposition(m, cfg, opt.seed, opt.count));
    } else if (name == "propagators") {
        for (double m : opt.masses) {
            append(r.rows, verify_propagator_identities(m, cfg, opt.seed, opt.count));
            append(r.rows, verify_kg_residuals(m, cfg, opt.seed, opt.count));
            append(r.rows, verify_microcausality(m, cfg));
        }
        if (massless) append(r.rows, verify_massless_cross(cfg, opt.seed, opt.count));
    } else if (name == "dirac") {
        append(r.rows, verify_clifford(opt.seed, 50));
        for (double m : opt.masses) append(r.rows, verify_dirac(m, cfg, opt.seed, opt.count));
    } else if (name == "fock") {
        append(r.rows, verify_fock_algebra(opt.seed));
        for (Statistics s : {Statistics::boson, Statistics::fermion}) {
            LatticeSpec spec;
            spec.dp = 0.5;
            spec.n_half = 2;
            spec.mass = 1.0;
            spec.stats = s;
            append(r.rows, verify_ccr(spec));
        }
        append(r.rows, verify_bridge(1.0, {0.8, 0.4, 0.2}, cfg));
    } else {
        throw std::invalid_argument("unknown suite: " + name);
    }
    for (auto& row : r.rows) {
        if (opt.tol > 0.0 && row.tolerance > 0.0) {
            row.tolerance = opt.tol;
            row.pass = row.residual <= opt.tol;
        }
        r.pass = r.pass && row.pass;
    }
    return r;
}

std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt) {
    std::vector<SuiteResult> out;
    if (name == "all")
        for (const auto& n : suite_names()) out.push_back(run_suite(n, opt));
    else
        out.push_back(run_suite(name, opt));
    return out;
}

}  // namespace mkp
