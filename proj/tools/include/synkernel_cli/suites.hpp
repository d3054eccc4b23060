#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace synkernel::cli {

struct SuiteResult {
    std::string name;
    int criterion = 0;  ///< acceptance criterion number, 0 for module-level suites
    bool passed = true;
    int cases = 0;
    std::vector<std::string> failures;  ///< first few failure messages
    double seconds = 0;
};

struct SuiteInfo {
    std::string name;
    int criterion = 0;
    std::string description;
};

std::vector<SuiteInfo> suite_list();

/// Deterministic in (seed, trials). trials = 0 runs nothing and passes.
/// Unknown names throw std::invalid_argument.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int trials);
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, std::uint64_t seed, int trials);

}  // namespace synkernel::cli
