#pragma once
// Flat key=value run configuration. One key per line, '#' starts a comment,
// unknown or duplicate keys are rejected. Every resolved value is echoed
// back as text, so a run manifest can rebuild the exact configuration.

#include <string>
#include <utility>
#include <vector>

#include "enskog/simulator.hpp"

namespace enskog {

struct RunConfig {
    SimConfig sim;
    std::string out_dir = "enskog_run";
    std::string frozen_law_path;  // required when sim.mode == frozen

    std::size_t picard_max_iters = 10;
    double picard_tol = 0.05;
    int picard_dictionary = 64;
    bool picard_crn = false;

    // Every resolved key in declaration order, formatted so that feeding
    // the pairs back through from_key_values reproduces this configuration.
    std::vector<std::pair<std::string, std::string>> echo;
};

// Parses configuration text / a file; throws ConfigInvalid on bad syntax,
// unknown keys, duplicates, or inconsistent values.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Builds a configuration from explicit pairs (e.g. a manifest echo).
RunConfig from_key_values(
    const std::vector<std::pair<std::string, std::string>>& pairs);

// Shortest text that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace enskog
