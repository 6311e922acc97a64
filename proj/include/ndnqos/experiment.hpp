#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ndnqos/engine.hpp"
#include "ndnqos/scenario.hpp"
#include "ndnqos/types.hpp"

namespace ndnqos {

/// Bad command line or config file; the CLI exits with status 2.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// One sweep: the Cartesian product scenario x pit_sizes x cs_sizes x seeds.
struct ExperimentPlan {
    Scenario scenario = Scenario::S1;
    std::vector<std::size_t> pit_sizes{5};
    std::vector<std::size_t> cs_sizes{5};
    std::size_t gateway_pit = 50;
    QosMode qos = QosMode::Regular;
    CacheStrategy cache = CacheStrategy::Always;
    double p_reg = 0.30;
    double p_rel = 0.70;
    std::vector<std::uint64_t> seeds{1};
    int duration_min = 18;
    int warmup_min = 8; ///< actuator start; 0 = both flows from the beginning
    std::optional<std::filesystem::path> topology_file;
    std::filesystem::path out_dir = "out";
    bool trace = false;
    int jobs = 0; ///< parallel runs; 0 = all available cores
};

/// Parses flags (and the optional `--config key=value file`; flags win,
/// unknown keys are rejected). Throws UsageError on invalid input. Returns
/// nullopt when --help was requested (help text already printed).
std::optional<ExperimentPlan> parse_plan(const std::vector<std::string>& args);

/// Directory name of one plan point, unique within a plan.
std::string config_slug(const ExperimentPlan& plan, std::size_t pit, std::size_t cs,
                        std::uint64_t seed);

/// Builds the SimConfig of one plan point.
SimConfig make_sim_config(const ExperimentPlan& plan, const Topology& topology, std::size_t pit,
                          std::size_t cs, std::uint64_t seed);

/// Executes every plan point (in parallel across runs), writes per-run CSVs
/// into out_dir/<slug>/ and seed-aggregated CSVs at the out_dir root.
/// Returns 0 on success, 1 when any run fails.
int run_plan(const ExperimentPlan& plan);

} // namespace ndnqos
