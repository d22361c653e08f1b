// validation.hpp: invariant suite per module, used by `diamond validate`

#pragma once

#include <string>
#include <vector>

namespace diamond::validation {

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    double value = 0.0;   // measured quantity (residual, ratio, ...)
    double bound = 0.0;   // threshold it is compared against
    std::string note;
    double seconds = 0.0;
};

std::vector<std::string> suite_names();

// Throws std::invalid_argument for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& name);

std::vector<CheckResult> run_all();

} // namespace diamond::validation
