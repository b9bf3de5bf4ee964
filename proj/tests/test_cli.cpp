#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "minkprop/mass_shell.hpp"

using namespace mkp;

namespace {

int run(const std::string& args, const std::string& out = "") {
    std::string cmd = std::string(MINKPROP_CLI) + " " + args;
    cmd += out.empty() ? " > /dev/null 2>&1" : " > " + out + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return "minkprop_cli_" + name; }

}  // namespace

TEST_CASE("verify output is byte-identical for a fixed seed") {
    const std::string a = tmp("a.json"), b = tmp("b.json");
    const std::string args = "verify --suite fourier --seed 7 --masses 1 --count 1";
    CHECK(run(args, a) == 0);
    CHECK(run(args, b) == 0);
    CHECK(slurp(a) == slurp(b));
    const auto j = nlohmann::json::parse(slurp(a));
    CHECK(j["schema"] == "minkprop/1");
    CHECK(j["pass"] == true);
}

TEST_CASE("pair reports the mass-shell value") {
    TestFn u = gaussian(4, 0.9);
    u.center = {0.2, 0.1, -0.3, 0.0};
    const std::string f = tmp("u.json"), o = tmp("pair.json");
    std::ofstream(f) << to_json(u);
    CHECK(run("pair --dist eps+ --mass 1 --testfn " + f, o) == 0);
    const auto j = nlohmann::json::parse(slurp(o));
    const cplx direct = pair_shell(parse_dist("eps+", 1.0), u).value;
    CHECK(std::abs(cplx(j["re"].get<double>(), j["im"].get<double>()) - direct) < 1e-14);
}

TEST_CASE("invalid arguments exit with code 2") {
    CHECK(run("verify --suite nope") == 2);
    CHECK(run("pair --dist bogus --mass 1") == 2);
    CHECK(run("pair --dist eps+ --mass -1") == 2);
    CHECK(run("fock ccr --mass 0") == 2);
    CHECK(run("table --dist D --grid t=0:1") == 2);
}

TEST_CASE("fock ccr and table commands") {
    CHECK(run("fock ccr --dp 0.5 --nhalf 2 --mass 1 --stats fermion") == 0);
    const std::string o = tmp("table.csv");
    CHECK(run("table --dist Dret --mass 1 --grid t=0.5:1.5:2,r=0:1:3 --sigma 0.3", o) == 0);
    std::ifstream f(o);
    std::string line;
    int n = 0;
    while (std::getline(f, line)) ++n;
    CHECK(n == 2 + 6);
}
