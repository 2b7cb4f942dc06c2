#pragma once

// Numerical verification suites behind the `verify` subcommand and the
// acceptance tests: each check evaluates an analytic claim against the
// quadrature machinery and reports pass/fail with a short detail line.

#include <string>
#include <vector>

namespace hsplus {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<CheckResult> verify_bounds();
std::vector<CheckResult> verify_concentration();
std::vector<CheckResult> verify_tweedie();
std::vector<CheckResult> verify_mass();
std::vector<CheckResult> verify_mse();
std::vector<CheckResult> verify_all();

// Convenience: print "PASS name - detail" lines; returns number of failures.
int print_checks(const std::vector<CheckResult>& checks);

}  // namespace hsplus
