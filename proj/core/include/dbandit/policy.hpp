#pragma once
#include <vector>

#include "dbandit/rewards.hpp"

namespace dbandit {

// The learner's entire knowledge of one arm.
struct ArmStatistics {
    long count = 0;
    double sum = 0.0;

    double point_estimate() const { return sum / static_cast<double>(count); }
    void observe(double value) {
        ++count;
        sum += value;
    }
};

enum class PolicyKind { LaiRobbins, AgrawalIndex, AuerIndex };

std::string to_string(PolicyKind kind);

// Sample means at the edge of the parameter space would make the KL in the
// leader/candidate test diverge; clamp before comparing.
double clamp_estimate(const RewardFamily& family, double estimate);

// Leader/candidate test: true means play the leader. Equivalent two-condition
// form of the confidence-bound comparison; only point estimates are needed.
bool lr_comparison(const ArmStatistics& leader, const ArmStatistics& candidate,
                   const RewardFamily& family, long local_time);

double agrawal_index(const RewardFamily& family, double x, long local_time, long tau);
double auer_index(double x, long local_time, long tau);

// Arm selection over an eligible subset. `stats` is indexed by arm id - 1
// over the full universe; `eligible` holds 1-based arm ids in round-robin
// order; `seq_time` counts decision epochs of this (mini-)sequence.
int lr_select(const std::vector<ArmStatistics>& stats, const std::vector<int>& eligible,
              long seq_time, const RewardFamily& family, double delta);

int index_select(const std::vector<ArmStatistics>& stats, const std::vector<int>& eligible,
                 long seq_time, PolicyKind kind, const RewardFamily& family);

// Dispatches on kind; the single entry point the TDFS wrapper consumes.
int policy_select(PolicyKind kind, const std::vector<ArmStatistics>& stats,
                  const std::vector<int>& eligible, long seq_time, const RewardFamily& family,
                  double delta);

}  // namespace dbandit
