#include "dbandit/arena.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace dbandit {

bool PlayerPresence::present(long t) const {
    if (t < join_time) return false;
    for (const auto& w : absence_windows)
        if (t >= w.first && t <= w.last) return false;
    return true;
}

void PlayerPresence::validate() const {
    if (join_time < 1) throw ValidationError("join_time must be >= 1");
    std::vector<SlotInterval> sorted = absence_windows;
    std::sort(sorted.begin(), sorted.end(),
              [](const SlotInterval& a, const SlotInterval& b) { return a.first < b.first; });
    long prev_end = join_time;  // windows must come after the join slot
    for (const auto& w : sorted) {
        if (w.first > w.last) throw ValidationError("absence window with first > last");
        if (w.first <= prev_end)
            throw ValidationError("absence windows must be disjoint and after join_time");
        prev_end = w.last;
    }
}

void TrialConfig::validate() const {
    params.validate();
    tdfs.validate();
    if (params.num_arms() != tdfs.num_arms)
        throw ValidationError("parameter set size does not match arm count");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    rank_arms(params, tdfs.num_players);
    if (!presence.empty()) {
        if (presence.size() != static_cast<size_t>(tdfs.num_players))
            throw ValidationError("presence list must have one entry per player");
        for (const auto& p : presence) p.validate();
    }
    if (per_player_params) {
        if (per_player_params->size() != static_cast<size_t>(tdfs.num_players))
            throw ValidationError("per-player parameter list must have one entry per player");
        ArmRank reference = rank_arms(params, tdfs.num_players);
        std::set<int> ref_top(reference.order.begin(),
                              reference.order.begin() + tdfs.num_players);
        for (size_t i = 0; i < per_player_params->size(); ++i) {
            const ParameterSet& pp = (*per_player_params)[i];
            if (pp.num_arms() != tdfs.num_arms)
                throw ValidationError("per-player parameter set size mismatch");
            ArmRank r = rank_arms(pp, tdfs.num_players);
            std::set<int> top(r.order.begin(), r.order.begin() + tdfs.num_players);
            if (top != ref_top) {
                std::ostringstream oss;
                oss << "player " << (i + 1) << " disagrees on the top-" << tdfs.num_players
                    << " arm set";
                throw ValidationError(oss.str());
            }
            for (int arm : ref_top) {
                if (r.means[arm - 1] != reference.means[arm - 1]) {
                    std::ostringstream oss;
                    oss << "player " << (i + 1) << " has a different mean on top arm " << arm;
                    throw ValidationError(oss.str());
                }
            }
        }
    }
}

SlotOutcome resolve(const std::vector<int>& player_ids, const std::vector<int>& actions,
                    const std::vector<std::vector<double>>& states, CollisionModel model,
                    Rng& rng) {
    SlotOutcome out;
    out.player_ids = player_ids;
    out.actions = actions;
    out.states = states;
    size_t n_present = actions.size();
    out.observations.resize(n_present);
    out.collided.assign(n_present, false);
    out.rewards.assign(n_present, 0.0);

    auto state_of = [&](size_t idx, int arm) -> double {
        const auto& row = states.size() == 1 ? states[0] : states[idx];
        return row[arm - 1];
    };
    for (size_t i = 0; i < n_present; ++i) out.observations[i] = state_of(i, actions[i]);

    // Group choosers by arm, in player order.
    std::map<int, std::vector<size_t>> choosers;
    for (size_t i = 0; i < n_present; ++i) choosers[actions[i]].push_back(i);

    for (const auto& [arm, who] : choosers) {
        if (who.size() >= 2)
            for (size_t i : who) out.collided[i] = true;
        if (model == CollisionModel::Model1_Share) {
            size_t winner = who.size() == 1
                                ? who[0]
                                : who[rng.uniform_int(0, static_cast<int>(who.size()) - 1)];
            out.rewards[winner] = state_of(winner, arm);
        } else if (who.size() == 1) {
            out.rewards[who[0]] = state_of(who[0], arm);
        }
    }
    for (double r : out.rewards) out.system_reward += r;
    return out;
}

namespace {

std::vector<long> make_checkpoints(long horizon, CheckpointMode mode) {
    std::vector<long> cps;
    if (mode == CheckpointMode::Dense && horizon <= 10000) {
        cps.resize(horizon);
        for (long t = 1; t <= horizon; ++t) cps[t - 1] = t;
        return cps;
    }
    long t = 1;
    double x = 1.0;
    while (t < horizon) {
        cps.push_back(t);
        x *= 1.05;
        t = std::max<long>(t + 1, static_cast<long>(x));
    }
    cps.push_back(horizon);
    return cps;
}

}  // namespace

Trajectory run_trial(const TrialConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    int m_players = cfg.tdfs.num_players;
    int n_arms = cfg.tdfs.num_arms;

    Rng env(derive_seed(seed, 0));
    std::vector<TdfsPlayer> players;
    players.reserve(m_players);
    for (int i = 1; i <= m_players; ++i)
        players.emplace_back(i, cfg.tdfs, cfg.params.family, derive_seed(seed, i));

    Trajectory traj;
    traj.horizon = cfg.horizon;
    traj.checkpoints = make_checkpoints(cfg.horizon, cfg.checkpoints);
    traj.cum_system.resize(traj.checkpoints.size());
    traj.cum_player.assign(m_players, std::vector<double>(traj.checkpoints.size()));
    traj.cum_collisions.resize(traj.checkpoints.size());
    traj.play_counts.assign(m_players, std::vector<long>(n_arms, 0));
    traj.arm_collisions.assign(n_arms, 0);
    if (cfg.record_actions) traj.actions.resize(m_players);

    bool per_player_draws = cfg.per_player_params.has_value();
    double cum_system = 0.0;
    std::vector<double> cum_player(m_players, 0.0);
    long cum_collisions = 0;
    size_t next_cp = 0;

    for (long t = 1; t <= cfg.horizon; ++t) {
        // Draw arm states (one shared vector, or one per player).
        std::vector<std::vector<double>> states(per_player_draws ? m_players : 1,
                                                std::vector<double>(n_arms));
        for (size_t p = 0; p < states.size(); ++p) {
            const ParameterSet& ps = per_player_draws ? (*cfg.per_player_params)[p] : cfg.params;
            for (int arm = 0; arm < n_arms; ++arm)
                states[p][arm] = sample(ps.family, ps.theta[arm], env);
        }

        std::vector<int> present_ids;
        std::vector<int> actions;
        for (int i = 1; i <= m_players; ++i) {
            bool here = cfg.presence.empty() || cfg.presence[i - 1].present(t);
            if (!here) continue;
            present_ids.push_back(i);
            int arm = players[i - 1].step();
            actions.push_back(arm);
            traj.play_counts[i - 1][arm - 1]++;
            if (cfg.record_actions) traj.actions[i - 1].push_back(arm);
        }

        if (!present_ids.empty()) {
            std::vector<std::vector<double>> present_states;
            if (per_player_draws) {
                for (int id : present_ids) present_states.push_back(states[id - 1]);
            } else {
                present_states.push_back(states[0]);
            }
            SlotOutcome slot = resolve(present_ids, actions, present_states, cfg.model, env);
            for (size_t i = 0; i < present_ids.size(); ++i) {
                int id = present_ids[i];
                players[id - 1].observe(actions[i], slot.observations[i], slot.collided[i]);
                cum_player[id - 1] += slot.rewards[i];
                if (slot.collided[i]) ++cum_collisions;
            }
            // one collision event per arm with >= 2 choosers
            std::map<int, int> arm_choosers;
            for (int a : actions) arm_choosers[a]++;
            for (const auto& [arm, cnt] : arm_choosers)
                if (cnt >= 2) traj.arm_collisions[arm - 1]++;
            cum_system += slot.system_reward;
        }

        // Offset agreement bookkeeping (present players only).
        for (size_t i = 0; i + 1 < present_ids.size(); ++i)
            for (size_t j = i + 1; j < present_ids.size(); ++j)
                if (players[present_ids[i] - 1].offset() == players[present_ids[j] - 1].offset())
                    traj.last_offset_clash = t;

        if (next_cp < traj.checkpoints.size() && traj.checkpoints[next_cp] == t) {
            traj.cum_system[next_cp] = cum_system;
            for (int i = 0; i < m_players; ++i) traj.cum_player[i][next_cp] = cum_player[i];
            traj.cum_collisions[next_cp] = cum_collisions;
            ++next_cp;
        }
    }
    for (const auto& p : players) traj.regenerations += p.regenerations();
    return traj;
}

}  // namespace dbandit
