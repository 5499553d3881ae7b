#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace g2lab {

struct Check {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// Reported values that carry no pass/fail verdict.
struct Info {
    std::string name;
    double value = 0.0;
};

struct Series {
    std::string name;
    std::vector<double> x, y;
};

struct RunConfig {
    std::uint64_t seed = 42;
    std::optional<int> trials;  // suite default when empty
    std::map<std::string, double> tolerance_overrides;
    int jobs = 1;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    std::vector<Check> checks;
    std::vector<Info> info;
    std::vector<Series> series;
    double wall_time = 0.0;  // seconds

    bool pass() const;
};

struct SuiteInfo {
    std::string name;
    std::string description;
    int default_trials = 0;  // 0 for suites without random trials
};

const std::vector<SuiteInfo>& suite_list();

/**
 * Runs a registered suite. Per-trial residuals depend only on (seed, suite,
 * trial), and trials are reduced in index order, so the report does not
 * depend on jobs. Throws UnknownSuite or BadConfig (unknown tolerance key,
 * trials < 1, jobs < 1).
 */
SuiteReport run_suite(const std::string& name, const RunConfig& config);

// UTF-8 JSON object with "schema": 1. Timing is omitted when include_timing is false.
std::string report_json(const SuiteReport& r, bool include_timing = true);

}  // namespace g2lab
