#pragma once
#include <deque>
#include <map>
#include <vector>

#include "dbandit/policy.hpp"
#include "dbandit/rewards.hpp"
#include "dbandit/rng.hpp"

namespace dbandit {

// 1-based modulus: k oslash l = ((k-1) mod l) + 1.
inline long oslash(long k, long l) { return (k - 1) % l + 1; }

// Rank targeted in subsequence k by the player with 1-based index i.
inline int target_rank(int k, int i, int m_players) {
    return static_cast<int>(oslash(k - i + m_players + 1, m_players));
}

// Arm subset identifying a rank-`rank` mini-sequence: {1..N} minus the
// distinct arms among the last rank-1 entries of recent_actions (all of them
// when fewer are available). Full set for rank 1.
std::vector<int> mini_sequence_key(const std::vector<int>& recent_actions, int rank, int n_arms);

struct TdfsConfig {
    int num_players = 1;  // M
    int num_arms = 2;     // N
    std::vector<PolicyKind> base_policy;  // size 1 (shared) or M (per player)
    bool coupled = true;
    bool pre_agreement = true;
    double delta = 0.0;  // 0 -> default 1/(2N)

    PolicyKind policy_for(int player_id) const {
        if (base_policy.empty()) return PolicyKind::LaiRobbins;
        if (base_policy.size() == 1) return base_policy[0];
        return base_policy[player_id - 1];
    }
    double effective_delta() const {
        return delta > 0.0 ? delta : 1.0 / (2.0 * num_arms);
    }
    void validate() const;
};

// One player's local TDFS procedure: offset-based time division of the M
// best arms, per-offset subsequence and mini-sequence counters, and the
// collision-triggered offset randomization used without pre-agreement.
class TdfsPlayer {
public:
    // offset_seed seeds this player's private stream (initial offset draw
    // and regenerations). Under pre-agreement the offset is player_id - 1.
    TdfsPlayer(int player_id, const TdfsConfig& cfg, const RewardFamily& family,
               std::uint64_t offset_seed);

    // Chooses the arm for the player's next acted slot.
    int step();
    // Feeds back the drawn state of the chosen arm and the collision flag.
    void observe(int arm, double value, bool collided);

    int player_id() const { return player_id_; }
    int offset() const { return offset_; }
    long acted_slots() const { return acted_; }
    long regenerations() const { return regenerations_; }
    const std::vector<ArmStatistics>& global_stats() const { return global_stats_; }

    // Arm subset complement of the distinct arms among the last j-1 own
    // actions; full set for j = 1.
    std::vector<int> mini_sequence_key(int rank) const;

    const std::vector<std::vector<long>>& subsequence_counters() const {
        return subseq_counters_;
    }
    long mini_counter_total() const {
        long total = 0;
        for (const auto& [key, count] : mini_counters_) total += count;
        return total;
    }

private:
    struct ContextKey {
        int offset;
        std::vector<int> subset;
        bool operator<(const ContextKey& other) const {
            if (offset != other.offset) return offset < other.offset;
            return subset < other.subset;
        }
    };

    const std::vector<ArmStatistics>& stats_for(const ContextKey& key);
    void round_end();

    int player_id_;
    TdfsConfig cfg_;
    RewardFamily family_;
    PolicyKind policy_;
    Rng rng_;

    int offset_ = 0;
    long acted_ = 0;
    int round_position_ = 0;
    bool round_collision_ = false;
    long regenerations_ = 0;

    std::vector<int> full_set_;
    std::deque<int> recent_actions_;  // own last M-1 actions

    // Counter banks persist per offset: M parallel local procedures.
    std::vector<std::vector<long>> subseq_counters_;  // [offset][k-1]
    std::map<ContextKey, long> mini_counters_;

    std::vector<ArmStatistics> global_stats_;
    std::map<ContextKey, std::vector<ArmStatistics>> context_stats_;  // uncoupled mode

    bool has_pending_ = false;
    ContextKey pending_context_{0, {}};
    bool pending_context_active_ = false;  // update context stats on observe
};

}  // namespace dbandit
