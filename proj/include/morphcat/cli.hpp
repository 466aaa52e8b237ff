#pragma once

#include <string>

#include "morphcat/json_io.hpp"

namespace morphcat {

// Exit codes: 0 success, 1 failed verdict or property failure, 2 input error,
// 3 undecided.
struct JobSpec {
    std::string command;  // decompose | endo | classes | match | equiv-diag | verify | oracle
    std::string input_path;
    std::string output_path;  // empty = stdout
    std::uint64_t seed = 0;
    unsigned trials = 512;
    std::string format = "json";  // json | text
};

struct JobResult {
    int exit_code = 0;
    std::string report;  // canonical JSON or rendered text
};

// Dispatch on a parsed input document (no file I/O).
JobResult run_job_on(const std::string& command, const json& input, std::uint64_t seed,
                     unsigned trials, const std::string& format);

// Full job: read input, dispatch, write the report atomically when an output
// path is given.
JobResult run_job(const JobSpec& spec);

}  // namespace morphcat
