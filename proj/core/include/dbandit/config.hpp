#pragma once
#include <optional>
#include <string>
#include <vector>

#include "dbandit/arena.hpp"
#include "dbandit/policy.hpp"
#include "dbandit/rewards.hpp"

namespace dbandit {

// Carries every validation problem found, not just the first.
struct ConfigError : std::runtime_error {
    explicit ConfigError(std::vector<std::string> errors);
    std::vector<std::string> errors;
};

// Theta spec: either an explicit vector or an arithmetic generator that is
// re-expanded when sweeping over N.
struct ThetaSpec {
    std::vector<double> values;  // explicit; empty when generated
    bool generated = false;
    double start = 0.0;
    double step = 0.0;
    int count = 0;

    std::vector<double> expand() const;
    std::vector<double> expand(int n) const;  // generator re-expanded for n arms
};

struct ExperimentConfig {
    RewardFamily family;
    ThetaSpec theta;
    int num_players = 1;
    long horizon = 1;
    int trials = 1;
    std::uint64_t seed = 0;
    std::vector<PolicyKind> policies;  // size 1 or M
    bool coupled = true;
    bool pre_agreement = true;
    double delta = 0.0;  // 0 -> 1/(2N)
    CollisionModel collision_model = CollisionModel::Model2_NoReward;
    std::vector<PlayerPresence> presence;  // empty -> everyone joins at slot 1
    CheckpointMode checkpoints = CheckpointMode::Dense;
    std::string output_dir;

    int num_arms() const;
    ParameterSet parameter_set() const;
    TrialConfig trial_config() const;
};

// Parses a flat TOML document (key = value lines; ints, floats, bools,
// strings, homogeneous arrays). Unknown keys are rejected. Throws
// ConfigError listing every problem found.
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig load_config_file(const std::string& path);

}  // namespace dbandit
