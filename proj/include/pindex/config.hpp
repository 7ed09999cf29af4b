#pragma once

// Run configuration: JSON parsing with field-precise errors, emission, and
// command execution producing JSON/CSV artifacts.

#include <optional>
#include <string>
#include <vector>

#include "pindex/density.hpp"
#include "pindex/spec_json.hpp"

namespace pindex {

struct RunConfig {
    std::vector<std::string> group;
    std::optional<ojson> set;  // canonical set JSON
    u64 conductor = 1;
    std::vector<u64> residues;  // empty with conductor 1
    std::optional<u64> x;
    std::string epsilon = "1e-8";
    Method method = Method::Auto;
    u64 seed = 0;
    std::string output_path;
    std::string output_format = "json";
    // Optional extras.
    std::optional<u32> rank;                 // constants without a group
    std::optional<u64> histogram_prime;      // count
    std::vector<u64> ladder;                 // limit method
    std::optional<u64> degree_n;             // degree
    std::optional<u64> degree_m;
    u64 oracle_budget = 1'000'000;
    bool allow_uncertified = false;

    double eps() const;
    IndexSetSpec spec() const;
    RationalGroup rational_group() const;
    FrobeniusCondition frobenius() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates; on failure throws a Validation error listing every
/// offending field by JSON pointer, one per line.
RunConfig parse_config(const std::string& text);
/// Canonical JSON; parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& config);
ojson config_to_json(const RunConfig& config);

struct RunResult {
    int exit_status = 0;
    std::string artifact;  // JSON
    std::string csv;       // empty when the command has no tabular output
    std::string histogram_csv;  // count with histogram_prime
};

/// Executes density | count | compare | constants | classify | degree.
/// In strict mode an uncertified density or a failed comparison gives exit status 1.
RunResult run(const std::string& command, const RunConfig& config, bool strict = false);

const char* library_version() noexcept;

}  // namespace pindex
