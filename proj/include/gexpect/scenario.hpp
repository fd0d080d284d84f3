#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gexpect {

/// Exit codes of the scenario runner: 0 success, 1 computation error,
/// 2 configuration error, 3 verification failure.
enum ExitCode : int {
    kExitOk = 0,
    kExitComputeError = 1,
    kExitConfigError = 2,
    kExitVerifyFailed = 3,
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(int code, const std::string& what) : std::runtime_error(what), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

struct RunOptions {
    std::string command;     // gheat|hjb|bsde|bsb|scan|mc|counterexample|verify
    std::string config_path;
    std::string out_dir;
    int threads = 0;         // 0: GEXPECT_THREADS or hardware default
    bool emit_policy = false;
};

/// Runs one scenario: parses and validates the config, dispatches to the
/// solvers, writes result.json (plus CSV artifacts and a config copy) into
/// out_dir. Returns the exit code; on failure also writes a machine-readable
/// error JSON to stderr.
int run_scenario(const RunOptions& opts);

/// Schema + expression + CFL diagnostics without running solvers. Prints
/// one line per problem; returns 0 when the config is clean, 2 otherwise.
int validate_config(const std::string& config_path);

/// FNV-1a 64-bit hash of the raw config text, as a hex string.
std::string config_hash(const std::string& text);

} // namespace gexpect
