#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace porosity::cli {

inline constexpr const char* kSchema = "porosity-lab/1";

enum ExitCode : int { kOk = 0, kInputError = 1, kHypothesisFailure = 2 };

struct RunConfig {
    std::string command;                  // analyze | blowup | decompose | verify-foundations | reproduce-example
    std::string family;                   // inline JSON or a path to a JSON file
    std::vector<std::string> q_list{"2"};
    int depth = 32;
    int M_max = 8;
    int n = 3;
    int N = 1;
    std::string alpha = "1/2";
    std::string format = "json";
    std::uint64_t seed = 1;
    int trials = 200;
};

/// Dispatches to the engine named by config.command and writes one report to `out`.
/// Returns 0 on success, 2 when the family fails a construction's hypotheses,
/// 1 on malformed input (with a message on `err`).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace porosity::cli
