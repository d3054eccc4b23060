#pragma once

#include "synkernel_cli/workspace.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace synkernel::cli {

/// Unknown verb, unknown name or an argument the verb cannot use.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string verb;
    std::vector<std::string> names;
    std::optional<int> twist;
    std::optional<int> degree;
    std::optional<std::string> mode;  ///< eigen, oracle or random
    std::uint64_t seed = 0;
    int trials = 25;
    std::optional<std::string> file;
};

struct Outcome {
    json report;
    bool ok = false;
};

std::vector<std::string> verbs();

/// Loads the workspace named by --file (if any) and runs the verb. Throws UsageError.
/// Parse failures are reported, not thrown.
Outcome dispatch(const Options& opts);
/// Same, against an already loaded workspace.
Outcome dispatch(const Options& opts, const Workspace& w);

}  // namespace synkernel::cli
