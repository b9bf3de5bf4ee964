// Named verification suites shared by the command line and the acceptance runner.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minkprop/mass_shell.hpp"

namespace mkp {

struct SuiteOptions {
    std::vector<double> masses{0.0, 0.5, 1.0};
    std::uint64_t seed = 1;
    int count = 4;          // random test functions per mass where a suite draws them
    double tol = -1.0;      // when positive, replaces every nonzero row tolerance
    QuadConfig cfg{};
};

struct SuiteResult {
    std::string name;
    std::vector<CheckRow> rows;
    bool pass = true;
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);
// "all" expands to every suite in order.
std::vector<SuiteResult> run_suites(const std::string& name, const SuiteOptions& opt);

}  // namespace mkp
