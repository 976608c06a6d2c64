#pragma once

#include <cstdint>
#include <string>

namespace emalg {

/// Effective settings for one CLI invocation. Defaults here are the
/// documented defaults; a --config JSON file overrides them and explicit
/// flags override both (EMALG_JOBS sits between config and flags).
struct ExperimentConfig {
    std::string command;
    std::string model = "heisenberg";
    std::string table_path;
    int n = 3;
    std::string check = "difference";
    std::string map = "identity";
    std::uint64_t seed = 20260817;
    long samples = 200;
    int jobs = 1;
    int sched_first = 1;
    int sched_last = 20;
    std::string format = "csv";
    std::string out;  // empty -> stdout
    double tolerance = 1e-9;
    double tol_tangent = 1e-6;
};

/// Exit codes: 0 all checks pass, 1 check failure or divergence,
/// 2 usage error, 3 I/O error, 4 table format error.
int run(int argc, const char* const* argv);

}  // namespace emalg
