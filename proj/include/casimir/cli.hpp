#ifndef CASIMIR_CLI_HPP
#define CASIMIR_CLI_HPP

#include <string>
#include <vector>

namespace casimir {

/// Parsed command line / config file. Unset strings keep scenario-specific
/// defaults, resolved in run_cli.
struct RunConfig {
    std::string scenario = "empty";
    double d = 1.0;
    std::string profile;         // mini-language string; empty = scenario default
    std::string interval;        // "a,b"; empty = scenario default
    std::vector<int> N_list;     // empty = scenario default
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    std::string out;             // empty = "<scenario>.csv"
    bool no_parallel = false;
};

/// Exit codes: 0 success, 1 usage error, 2 numerical/runtime failure.
/// Honors the CASIMIR_THREADS environment variable before any parallel
/// region starts.
int run_cli(int argc, const char* const* argv);

}  // namespace casimir

#endif
