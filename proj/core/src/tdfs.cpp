#include "dbandit/tdfs.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dbandit {

void TdfsConfig::validate() const {
    if (num_players < 1 || num_players >= num_arms)
        throw ValidationError("player count M must satisfy 1 <= M < N");
    double d = effective_delta();
    if (!(d > 0.0) || !(d < 1.0 / num_arms))
        throw ValidationError("delta must lie in (0, 1/N)");
    if (!base_policy.empty() && base_policy.size() != 1 &&
        base_policy.size() != static_cast<size_t>(num_players))
        throw ValidationError("per-player policy list must have length 1 or M");
}

TdfsPlayer::TdfsPlayer(int player_id, const TdfsConfig& cfg, const RewardFamily& family,
                       std::uint64_t offset_seed)
    : player_id_(player_id),
      cfg_(cfg),
      family_(family),
      policy_(cfg.policy_for(player_id)),
      rng_(offset_seed),
      full_set_(cfg.num_arms),
      subseq_counters_(cfg.num_players, std::vector<long>(cfg.num_players, 0)),
      global_stats_(cfg.num_arms) {
    std::iota(full_set_.begin(), full_set_.end(), 1);
    if (cfg_.pre_agreement) {
        offset_ = player_id_ - 1;
    } else {
        offset_ = cfg_.num_players > 1 ? rng_.uniform_int(0, cfg_.num_players - 1) : 0;
    }
}

std::vector<int> mini_sequence_key(const std::vector<int>& recent_actions, int rank,
                                   int n_arms) {
    std::vector<int> subset;
    if (rank <= 1) {
        subset.resize(n_arms);
        std::iota(subset.begin(), subset.end(), 1);
        return subset;
    }
    std::set<int> removed;
    size_t take = std::min<size_t>(rank - 1, recent_actions.size());
    for (size_t idx = 0; idx < take; ++idx)
        removed.insert(recent_actions[recent_actions.size() - 1 - idx]);
    for (int arm = 1; arm <= n_arms; ++arm)
        if (!removed.count(arm)) subset.push_back(arm);
    return subset;
}

std::vector<int> TdfsPlayer::mini_sequence_key(int rank) const {
    std::vector<int> recent(recent_actions_.begin(), recent_actions_.end());
    return dbandit::mini_sequence_key(recent, rank, cfg_.num_arms);
}

const std::vector<ArmStatistics>& TdfsPlayer::stats_for(const ContextKey& key) {
    if (cfg_.coupled) return global_stats_;
    auto [it, inserted] = context_stats_.try_emplace(key);
    if (inserted) it->second.resize(cfg_.num_arms);
    return it->second;
}

int TdfsPlayer::step() {
    long s = acted_ + 1;  // local slot (absences pause local time)
    int m_players = cfg_.num_players;
    int k = static_cast<int>(oslash(s + offset_, m_players));
    int rank = k;  // offset already shifts the subsequence index
    long& m_k = subseq_counters_[offset_][k - 1];
    ++m_k;

    int arm;
    if (m_k <= cfg_.num_arms) {
        arm = static_cast<int>(m_k);  // subsequence initialization
        // Rank-1 initialization slots belong to that subsequence's own
        // history in uncoupled mode; deeper ranks only feed global stats.
        pending_context_ = ContextKey{offset_, full_set_};
        pending_context_active_ = !cfg_.coupled && rank == 1;
    } else if (rank == 1) {
        // The rank-1 track is driven directly by the subsequence counter.
        ContextKey key{offset_, full_set_};
        arm = policy_select(policy_, stats_for(key), full_set_, m_k, family_,
                            cfg_.effective_delta());
        pending_context_ = key;
        pending_context_active_ = !cfg_.coupled;
    } else {
        ContextKey key{offset_, mini_sequence_key(rank)};
        long& m_mini = mini_counters_[key];
        ++m_mini;
        arm = policy_select(policy_, stats_for(key), key.subset, m_mini, family_,
                            cfg_.effective_delta());
        pending_context_ = key;
        pending_context_active_ = !cfg_.coupled;
    }

    if (m_players > 1) {
        recent_actions_.push_back(arm);
        while (recent_actions_.size() > static_cast<size_t>(m_players - 1))
            recent_actions_.pop_front();
    }
    has_pending_ = true;
    return arm;
}

void TdfsPlayer::observe(int arm, double value, bool collided) {
    global_stats_[arm - 1].observe(value);
    if (pending_context_active_) {
        auto [it, inserted] = context_stats_.try_emplace(pending_context_);
        if (inserted) it->second.resize(cfg_.num_arms);
        it->second[arm - 1].observe(value);
    }
    if (collided && !cfg_.pre_agreement) round_collision_ = true;
    has_pending_ = false;

    ++acted_;
    if (++round_position_ == cfg_.num_players) round_end();
}

void TdfsPlayer::round_end() {
    if (!cfg_.pre_agreement && round_collision_ && cfg_.num_players > 1) {
        offset_ = rng_.uniform_int(0, cfg_.num_players - 1);
        ++regenerations_;
    }
    round_collision_ = false;
    round_position_ = 0;
}

}  // namespace dbandit
