#pragma once
#include <optional>
#include <vector>

#include "dbandit/rewards.hpp"
#include "dbandit/rng.hpp"
#include "dbandit/tdfs.hpp"

namespace dbandit {

enum class CollisionModel { Model1_Share = 1, Model2_NoReward = 2 };

struct SlotInterval {
    long first = 0;
    long last = 0;  // inclusive
};

struct PlayerPresence {
    long join_time = 1;
    std::vector<SlotInterval> absence_windows;

    bool present(long t) const;
    void validate() const;
};

// One time slot, fully resolved.
struct SlotOutcome {
    std::vector<std::vector<double>> states;  // [player][arm]; one row when shared
    std::vector<int> actions;                 // per present player, parallel to player_ids
    std::vector<int> player_ids;
    std::vector<double> observations;
    std::vector<bool> collided;
    std::vector<double> rewards;
    double system_reward = 0.0;
};

enum class CheckpointMode { Dense, Geometric };

struct Trajectory {
    long horizon = 0;
    std::vector<long> checkpoints;
    std::vector<double> cum_system;                 // per checkpoint
    std::vector<std::vector<double>> cum_player;    // [player][checkpoint]
    std::vector<long> cum_collisions;               // colliding players, cumulative
    std::vector<std::vector<long>> play_counts;     // [player][arm]
    std::vector<long> arm_collisions;               // slots with >=2 choosers, per arm
    std::vector<std::vector<int>> actions;          // [player][acted slot], for golden traces
    long regenerations = 0;
    long last_offset_clash = 0;  // last slot with two present players sharing an offset
};

struct TrialConfig {
    ParameterSet params;
    // Optional per-player parameter sets; must share the top-M arm set and
    // top-M means.
    std::optional<std::vector<ParameterSet>> per_player_params;
    TdfsConfig tdfs;
    CollisionModel model = CollisionModel::Model2_NoReward;
    std::vector<PlayerPresence> presence;  // empty -> all join at slot 1
    long horizon = 1;
    CheckpointMode checkpoints = CheckpointMode::Dense;
    bool record_actions = false;

    void validate() const;
};

// Resolves one slot: states indexed [player][arm] (size 1 outer when all
// players share draws). Under model 1 the credited player among colliders is
// uniform from rng and receives its own drawn state.
SlotOutcome resolve(const std::vector<int>& player_ids, const std::vector<int>& actions,
                    const std::vector<std::vector<double>>& states, CollisionModel model,
                    Rng& rng);

Trajectory run_trial(const TrialConfig& cfg, std::uint64_t seed);

}  // namespace dbandit
