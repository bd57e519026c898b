#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twin/fixture.hpp"

namespace twin {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_inconclusive = 2, exit_config = 3 };

struct SuiteOptions {
    std::optional<std::vector<std::string>> suites;   // nullopt runs every assertion
    std::string golden_dir;                           // empty: <fixture dir>/../golden
};

struct SuiteResult {
    json report;
    int exit_code = exit_pass;
};

// Runs the selected assertions of the fixture. The report holds no timings, so equal inputs
// give equal bytes.
SuiteResult run_suite(World& w, const SuiteOptions& opt = {});

// the fixture with its expected block replaced by the values observed in `report`
json patch_expected(const Fixture& fx, const json& report);

// names of the checks an assertion may use
const std::vector<std::string>& known_checks();

}  // namespace twin
