#include "dbandit/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dbandit/tdfs.hpp"

namespace dbandit {

namespace {
constexpr double kEstimateEps = 1e-6;
}

std::string to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::LaiRobbins: return "lai_robbins";
        case PolicyKind::AgrawalIndex: return "agrawal";
        case PolicyKind::AuerIndex: return "auer";
    }
    return "?";
}

double clamp_estimate(const RewardFamily& family, double estimate) {
    switch (family.kind) {
        case RewardKind::Bernoulli:
            return std::clamp(estimate, kEstimateEps, 1.0 - kEstimateEps);
        case RewardKind::Poisson:
        case RewardKind::Exponential:
            return std::max(estimate, kEstimateEps);
        case RewardKind::Gaussian:
            return estimate;
    }
    return estimate;
}

bool lr_comparison(const ArmStatistics& leader, const ArmStatistics& candidate,
                   const RewardFamily& family, long local_time) {
    double leader_h = leader.point_estimate();
    double candidate_h = candidate.point_estimate();
    if (!(candidate_h < leader_h)) return false;
    double divergence = kl(family, clamp_estimate(family, candidate_h),
                           clamp_estimate(family, leader_h));
    double threshold = std::log(static_cast<double>(local_time - 1)) /
                       static_cast<double>(candidate.count);
    return divergence > threshold;
}

double agrawal_index(const RewardFamily& family, double x, long local_time, long tau) {
    double t1 = static_cast<double>(local_time - 1);
    // ln ln(t-1) clamped at 0 for small t.
    double loglog = t1 > 1.0 ? std::max(std::log(std::log(t1)), 0.0) : 0.0;
    double e = std::log(t1) + 2.0 * loglog;
    double base = std::sqrt(2.0 * e / static_cast<double>(tau));
    switch (family.kind) {
        case RewardKind::Gaussian:
            return x + base;
        case RewardKind::Bernoulli:
            return x + std::min(base / 2.0, 1.0);
        case RewardKind::Poisson:
            return x + std::min(std::sqrt(2.0 * family.a * e / static_cast<double>(tau)) / 2.0,
                                family.a);
        case RewardKind::Exponential:
            return x + family.b * std::min(base, 1.0);
    }
    return x;
}

double auer_index(double x, long local_time, long tau) {
    return x + std::sqrt(2.0 * std::log(static_cast<double>(local_time - 1)) /
                         static_cast<double>(tau));
}

int lr_select(const std::vector<ArmStatistics>& stats, const std::vector<int>& eligible,
              long seq_time, const RewardFamily& family, double delta) {
    long n_eligible = static_cast<long>(eligible.size());
    if (seq_time <= n_eligible) return eligible[seq_time - 1];

    int candidate = eligible[oslash(seq_time, n_eligible) - 1];

    // Leader: largest point estimate among well-sampled eligible arms.
    double threshold = static_cast<double>(seq_time - 1) * delta;
    int leader = 0;
    double leader_h = -std::numeric_limits<double>::infinity();
    for (int arm : eligible) {
        const ArmStatistics& s = stats[arm - 1];
        if (s.count == 0 || static_cast<double>(s.count) < threshold) continue;
        double h = s.point_estimate();
        if (h > leader_h || (h == leader_h && arm < leader)) {
            leader = arm;
            leader_h = h;
        }
    }
    if (leader == 0) return candidate;  // no arm meets the threshold
    if (leader == candidate) return leader;
    if (stats[candidate - 1].count == 0) return candidate;
    return lr_comparison(stats[leader - 1], stats[candidate - 1], family, seq_time) ? leader
                                                                                    : candidate;
}

int index_select(const std::vector<ArmStatistics>& stats, const std::vector<int>& eligible,
                 long seq_time, PolicyKind kind, const RewardFamily& family) {
    long n_eligible = static_cast<long>(eligible.size());
    if (seq_time <= n_eligible) return eligible[seq_time - 1];

    int best = 0;
    double best_index = -std::numeric_limits<double>::infinity();
    for (int arm : eligible) {
        const ArmStatistics& s = stats[arm - 1];
        double idx;
        if (s.count == 0) {
            idx = std::numeric_limits<double>::infinity();  // unexplored: must play
        } else if (kind == PolicyKind::AgrawalIndex) {
            idx = agrawal_index(family, s.point_estimate(), seq_time, s.count);
        } else {
            idx = auer_index(s.point_estimate(), seq_time, s.count);
        }
        if (idx > best_index || (idx == best_index && arm < best)) {
            best = arm;
            best_index = idx;
        }
    }
    return best;
}

int policy_select(PolicyKind kind, const std::vector<ArmStatistics>& stats,
                  const std::vector<int>& eligible, long seq_time, const RewardFamily& family,
                  double delta) {
    if (kind == PolicyKind::LaiRobbins)
        return lr_select(stats, eligible, seq_time, family, delta);
    return index_select(stats, eligible, seq_time, kind, family);
}

}  // namespace dbandit
