// minkprop command line: pairings, verification suites, propagator tables and lattice Fock checks.
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "minkprop/dirac.hpp"
#include "minkprop/fock.hpp"
#include "minkprop/mass_shell.hpp"
#include "minkprop/propagators.hpp"
#include "minkprop/suites.hpp"

using json = nlohmann::ordered_json;
using namespace mkp;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitArgs = 2;
constexpr int kExitNumeric = 3;

struct ArgError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw ArgError("cannot open output file: " + out);
    f << text << "\n";
}

json header(const std::string& command) { return json{{"schema", "minkprop/1"}, {"command", command}}; }

json rows_json(const std::vector<CheckRow>& rows) {
    json a = json::array();
    for (const auto& r : rows)
        a.push_back({{"identity", r.identity},
                     {"mass", r.mass},
                     {"residual", r.residual},
                     {"tolerance", r.tolerance},
                     {"pass", r.pass},
                     {"extra", r.extra}});
    return a;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            v.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ArgError("not a number: '" + item + "'");
        }
    }
    return v;
}

FourVector parse_point(const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() != 4) throw ArgError("expected four comma-separated coordinates: " + s);
    return {v[0], v[1], v[2], v[3]};
}

// axis=a:b:n
std::vector<double> parse_axis(const std::string& spec, const std::string& axis) {
    const std::string key = axis + "=";
    const auto at = spec.find(key);
    if (at == std::string::npos) throw ArgError("grid is missing axis " + axis);
    std::string body = spec.substr(at + key.size());
    body = body.substr(0, body.find(','));
    std::replace(body.begin(), body.end(), ':', ',');
    const auto v = parse_list(body);
    if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) throw ArgError("grid axis must be a:b:n");
    const int n = int(v[2]);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1);
    return out;
}

TestFn load_testfn(const std::string& path) {
    if (path.empty()) return gaussian(4, 1.0);
    std::ifstream f(path);
    if (!f) throw ArgError("cannot read test function file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        TestFn u = from_json(ss.str());
        validate(u);
        return u;
    } catch (const std::exception& e) {
        throw ArgError(std::string("invalid test function: ") + e.what());
    }
}

json mat_json(const Mat4& m) {
    json a = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& z : row) r.push_back({z.real(), z.imag()});
        a.push_back(r);
    }
    return a;
}

int cmd_pair(const std::string& dist, double mass, const std::string& path, const std::string& out) {
    const TestFn u = load_testfn(path);
    if (u.dim != 4) throw ArgError("pairings need a dim 4 test function");
    json j = header("pair");
    j["dist"] = dist;
    j["mass"] = mass;
    if (dist.rfind("slash:", 0) == 0) {
        PropTag tag;
        try {
            tag = parse_prop_tag(dist.substr(6));
        } catch (const std::invalid_argument& e) {
            throw ArgError(e.what());
        }
        const MatPairing r = pair_dirac_propagator(PropKind{tag, mass}, u);
        j["matrix"] = mat_json(r.value);
        j["abs_err"] = r.abs_err;
        emit(j.dump(2), out);
        return 0;
    }
    PairingResult r;
    bool is_prop = true;
    PropTag tag{};
    try {
        tag = parse_prop_tag(dist);
    } catch (const std::invalid_argument&) {
        is_prop = false;
    }
    if (is_prop) {
        r = pair_propagator(PropKind{tag, mass}, u);
    } else {
        MomShellDist d;
        try {
            d = parse_dist(dist, mass);
        } catch (const std::invalid_argument& e) {
            throw ArgError(e.what());
        }
        r = pair_shell(d, u);
    }
    j["re"] = r.value.real();
    j["im"] = r.value.imag();
    j["abs_err"] = r.abs_err;
    j["converged"] = r.converged;
    emit(j.dump(2), out);
    return r.converged ? 0 : kExitNumeric;
}

int cmd_verify(const std::string& suite, const SuiteOptions& opt, const std::string& out) {
    if (suite != "all") {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end()) throw ArgError("unknown suite: " + suite);
    }
    const auto results = run_suites(suite, opt);
    json j = header("verify");
    j["suite"] = suite;
    j["seed"] = opt.seed;
    j["masses"] = opt.masses;
    bool pass = true;
    json arr = json::array();
    for (const auto& r : results) {
        pass = pass && r.pass;
        arr.push_back({{"name", r.name}, {"pass", r.pass}, {"rows", rows_json(r.rows)}});
    }
    j["pass"] = pass;
    j["suites"] = arr;
    emit(j.dump(2), out);
    return pass ? 0 : kExitFail;
}

int cmd_table(const std::string& dist, double mass, const std::string& grid, double sigma, const std::string& out) {
    PropTag tag;
    try {
        tag = parse_prop_tag(dist);
    } catch (const std::invalid_argument& e) {
        throw ArgError(e.what());
    }
    if (!(sigma > 0.0)) throw ArgError("sigma must be positive");
    const auto ts = parse_axis(grid, "t"), rs = parse_axis(grid, "r");
    const auto rows = propagator_table(tag, mass, ts, rs, sigma);
    std::ostringstream s;
    s << "# schema=minkprop/1 dist=" << dist << " mass=" << mass << " sigma=" << sigma << "\n";
    s << "t,r,re,im,abs_err\n";
    bool ok = true;
    char buf[160];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.3e\n", r.t, r.r, r.value.value.real(),
                      r.value.value.imag(), r.value.abs_err);
        s << buf;
        ok = ok && r.value.converged;
    }
    std::string text = s.str();
    text.pop_back();
    emit(text, out);
    return ok ? 0 : kExitNumeric;
}

Statistics parse_stats(const std::string& s) {
    if (s == "boson") return Statistics::boson;
    if (s == "fermion") return Statistics::fermion;
    throw ArgError("stats must be boson or fermion");
}

int cmd_fock_ccr(double dp, int nhalf, double mass, const std::string& stats, const std::string& out) {
    LatticeSpec spec;
    spec.dp = dp;
    spec.n_half = nhalf;
    spec.mass = mass;
    spec.stats = parse_stats(stats);
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ArgError(e.what());
    }
    const auto rows = verify_ccr(spec);
    bool pass = true;
    for (const auto& r : rows) pass = pass && r.pass;
    json j = header("fock ccr");
    j["dp"] = dp;
    j["n_half"] = nhalf;
    j["mass"] = mass;
    j["stats"] = stats;
    j["pass"] = pass;
    j["rows"] = rows_json(rows);
    emit(j.dump(2), out);
    return pass ? 0 : kExitFail;
}

int cmd_fock_bridge(const std::string& xs, const std::string& ys, double mass, const std::string& ladder_s,
                    const std::string& out) {
    const FourVector x = parse_point(xs), y = parse_point(ys);
    const auto ladder = parse_list(ladder_s);
    if (ladder.empty()) throw ArgError("empty ladder");
    for (double d : ladder)
        if (!(d > 0.0)) throw ArgError("ladder spacings must be positive");
    if (!(mass > 0.0)) throw ArgError("lattice fields require a positive mass");
    const FourVector sep{y[0] - x[0], y[1] - x[1], y[2] - x[2], y[3] - x[3]};
    const BridgeReport b = commutator_vs_propagator(sep, mass, ladder);
    json j = header("fock bridge");
    j["separation"] = std::vector<double>(sep.begin(), sep.end());
    j["mass"] = mass;
    j["sigma_f"] = b.sigma_f;
    j["oracle"] = {{"re", b.oracle.value.real()}, {"im", b.oracle.value.imag()}, {"abs_err", b.oracle.abs_err}};
    json rungs = json::array();
    for (const auto& r : b.rungs)
        rungs.push_back({{"dp", r.dp},
                         {"n_half", r.n_half},
                         {"modes", r.modes},
                         {"smeared", {r.smeared.real(), r.smeared.imag()}},
                         {"deviation", r.deviation},
                         {"pointwise", {r.pointwise.real(), r.pointwise.imag()}}});
    j["rungs"] = rungs;
    j["floor"] = b.floor;
    j["monotone"] = b.monotone;
    j["final_deviation"] = b.final_deviation;
    j["pass"] = b.pass;
    emit(j.dump(2), out);
    return b.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minkprop: mass-shell densities, propagators and lattice fields"};
    app.require_subcommand(1);
    std::string out;

    auto* pair = app.add_subcommand("pair", "pair a distribution with a test function");
    std::string dist, testfn;
    double mass = 1.0;
    pair->add_option("--dist", dist, "eps+, epv-, opp+-, omegaL+, e@pos, D, Dret, slash:DF, ...")->required();
    pair->add_option("--mass", mass, "mass m >= 0")->check(CLI::NonNegativeNumber);
    pair->add_option("--testfn", testfn, "test function JSON file (default: unit Gaussian)");
    pair->add_option("--out", out, "output file");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::string suite = "all", masses_s = "0,0.5,1";
    SuiteOptions sopt;
    verify->add_option("--suite", suite, "ft_table|fourier|massshell|propagators|dirac|fock|all");
    verify->add_option("--masses", masses_s, "comma-separated masses");
    verify->add_option("--tol", sopt.tol, "override for every nonzero tolerance");
    verify->add_option("--seed", sopt.seed, "random seed");
    verify->add_option("--count", sopt.count, "random test functions per mass")->check(CLI::PositiveNumber);
    verify->add_option("--out", out, "output file");

    auto* table = app.add_subcommand("table", "tabulate a propagator against Gaussians on a (t, r) grid");
    std::string grid;
    double sigma = 0.25;
    table->add_option("--dist", dist, "propagator kind")->required();
    table->add_option("--mass", mass, "mass m >= 0")->check(CLI::NonNegativeNumber);
    table->add_option("--grid", grid, "t=a:b:n,r=a:b:n")->required();
    table->add_option("--sigma", sigma, "Gaussian width");
    table->add_option("--out", out, "output file");

    auto* fock = app.add_subcommand("fock", "lattice field checks");
    fock->require_subcommand(1);
    auto* ccr = fock->add_subcommand("ccr", "equal-time commutation relations");
    double dp = 0.5;
    int nhalf = 2;
    std::string stats = "boson";
    ccr->add_option("--dp", dp, "momentum spacing");
    ccr->add_option("--nhalf", nhalf, "modes per half axis");
    ccr->add_option("--mass", mass, "mass m > 0");
    ccr->add_option("--stats", stats, "boson|fermion");
    ccr->add_option("--out", out, "output file");
    auto* bridge = fock->add_subcommand("bridge", "smeared commutator against the D pairing");
    std::string xs = "0,0,0,0", ys = "1,0,0,0", ladder = "0.8,0.4,0.2";
    bridge->add_option("--x", xs, "first point t,x,y,z");
    bridge->add_option("--y", ys, "second point; separation is y - x");
    bridge->add_option("--mass", mass, "mass m > 0");
    bridge->add_option("--ladder", ladder, "comma-separated dp values");
    bridge->add_option("--out", out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitArgs;
    }

    try {
        if (*pair) return cmd_pair(dist, mass, testfn, out);
        if (*verify) {
            sopt.masses = parse_list(masses_s);
            for (double m : sopt.masses)
                if (!(m >= 0.0)) throw ArgError("masses must be nonnegative");
            return cmd_verify(suite, sopt, out);
        }
        if (*table) return cmd_table(dist, mass, grid, sigma, out);
        if (*ccr) return cmd_fock_ccr(dp, nhalf, mass, stats, out);
        if (*bridge) return cmd_fock_bridge(xs, ys, mass, ladder, out);
    } catch (const ArgError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitArgs;
}
