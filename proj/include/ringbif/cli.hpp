#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ringbif {

// Exit codes: 0 success, 1 verification or computation failure, 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string version();

// Merged parameters for a command: defaults, then the config file, then command-line key=value
// tokens. Throws UsageError on unknown keys or malformed entries.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::map<std::string, std::string> merge_parameters(const std::string& command, const std::string& config_text,
                                                    const std::vector<std::string>& tokens);

std::vector<std::string> cli_commands();

}  // namespace ringbif
