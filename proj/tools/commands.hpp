#pragma once

// Command implementations behind the `subergo` executable. Each returns the
// process exit code: 0 all checks pass, 1 a tolerance or audit failed,
// 2 malformed input or configuration.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "subergo/ergodic.hpp"
#include "subergo/gheat.hpp"

namespace subergo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;

struct NamedSystem {
    std::string name;
    FiniteSystem system;
    std::vector<std::string> labels;
};

// {"n": 3, "theta": [1, 2, 0], "priors": [[...], ...], "labels": [...]} or
// {"systems": [ ... ]}. Throws InputError on any violation.
std::vector<NamedSystem> load_system_spec(const nlohmann::json& doc);

struct LabAuditConfig {
    std::string spec_path;
    std::string out_path;          // empty: stdout
    std::size_t rv_count = 50;
    std::size_t max_k = 8;
    std::uint64_t seed = 20240601;
};

nlohmann::json lab_audit_report(const std::vector<NamedSystem>& systems, const LabAuditConfig& cfg);
int cmd_lab_audit(const LabAuditConfig& cfg, std::ostream& log);

struct EnumerateConfig {
    std::size_t n = 3;
    std::string catalog = "default";
    std::string out_path;
    std::uint64_t seed = 20240601;
    std::size_t rv_count = 50;
};

int cmd_lab_enumerate(const EnumerateConfig& cfg, std::ostream& log);

struct GHeatConfig {
    std::string subcommand;        // solve | invariant | converge | steady | xcheck
    std::string phi = "cos";
    double t = -1.0;               // negative: subcommand default
    GHeatParams params;
    std::size_t grid = 256;
    std::vector<double> deltas{0.1, 1.0, 5.0};
    std::vector<double> times{1.0, 2.0, 5.0, 10.0, 20.0, 30.0};
    std::string xcase = "all";     // linear | convex | dp | all
    std::size_t dp_steps = 64;
    double tol = -1.0;             // negative: subcommand default
    std::string out_path;
};

int cmd_gheat(const GHeatConfig& cfg, std::ostream& out, std::ostream& log);

struct McConfig {
    std::string phi = "cos";
    GHeatParams params;
    std::size_t grid = 256;
    double horizon = 1e4;
    double dt = 0.01;
    std::vector<std::string> policies;   // empty: default library
    std::vector<std::uint64_t> seeds;    // empty: default seeds
    double tol = 0.05;
    std::string out_path;
};

nlohmann::json mc_slln_report(const McConfig& cfg);
int cmd_mc_slln(const McConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace subergo::cli
