#include "dbandit/analytics.hpp"

#include <cmath>

namespace dbandit {

namespace {

double best_sum(const ParameterSet& params, int m_players) {
    ArmRank rank = rank_arms(params, m_players);
    double total = 0.0;
    for (int r = 0; r < m_players; ++r) total += rank.means[rank.order[r] - 1];
    return total;
}

// Mean regret curve from per-trial cumulative reward series. `share` scales
// the optimal benchmark (1 for the system, 1/M per player).
RegretCurve regret_from(const std::vector<Trajectory>& trials, double optimal_per_slot,
                        const std::vector<const std::vector<double>*>& series) {
    const Trajectory& first = trials.front();
    size_t n_cp = first.checkpoints.size();
    size_t n_trials = trials.size();

    RegretCurve curve;
    curve.checkpoints = first.checkpoints;
    curve.regret.resize(n_cp);
    curve.stderr_.resize(n_cp);
    curve.regret_over_log.resize(n_cp);

    for (size_t c = 0; c < n_cp; ++c) {
        double t = static_cast<double>(first.checkpoints[c]);
        double sum = 0.0, sumsq = 0.0;
        for (size_t i = 0; i < n_trials; ++i) {
            double r = t * optimal_per_slot - (*series[i])[c];
            sum += r;
            sumsq += r * r;
        }
        double mean = sum / static_cast<double>(n_trials);
        curve.regret[c] = mean;
        if (n_trials > 1) {
            double var = (sumsq - sum * mean) / static_cast<double>(n_trials - 1);
            curve.stderr_[c] = std::sqrt(std::max(var, 0.0) / static_cast<double>(n_trials));
        }
        curve.regret_over_log[c] = t > 1.0 ? mean / std::log(t) : 0.0;
    }
    return curve;
}

}  // namespace

RegretCurve system_regret(const std::vector<Trajectory>& trials, const ParameterSet& params,
                          int m_players) {
    if (trials.empty()) throw ValidationError("empty trial set");
    std::vector<const std::vector<double>*> series;
    series.reserve(trials.size());
    for (const auto& t : trials) series.push_back(&t.cum_system);
    return regret_from(trials, best_sum(params, m_players), series);
}

std::vector<RegretCurve> per_player_regret(const std::vector<Trajectory>& trials,
                                           const ParameterSet& params, int m_players) {
    if (trials.empty()) throw ValidationError("empty trial set");
    double share = best_sum(params, m_players) / static_cast<double>(m_players);
    std::vector<RegretCurve> curves;
    curves.reserve(m_players);
    for (int p = 0; p < m_players; ++p) {
        std::vector<const std::vector<double>*> series;
        series.reserve(trials.size());
        for (const auto& t : trials) series.push_back(&t.cum_player[p]);
        curves.push_back(regret_from(trials, share, series));
    }
    return curves;
}

double centralized_constant(const ParameterSet& params, int m_players) {
    ArmRank rank = rank_arms(params, m_players);
    double mth_mean = rank.means[rank.order[m_players - 1] - 1];
    double mth_theta = params.theta[rank.order[m_players - 1] - 1];
    double total = 0.0;
    for (int arm = 1; arm <= params.num_arms(); ++arm) {
        if (rank.means[arm - 1] >= mth_mean) continue;
        total += (mth_mean - rank.means[arm - 1]) /
                 kl(params.family, params.theta[arm - 1], mth_theta);
    }
    return total;
}

double x_k(const ParameterSet& params, int m_players, int k) {
    if (k < 1 || k > m_players) throw ValidationError("x_k requires 1 <= k <= M");
    ArmRank rank = rank_arms(params, m_players);
    double total = 0.0;
    for (int i = 1; i <= k; ++i) {
        double ith_mean = rank.means[rank.order[i - 1] - 1];
        double ith_theta = params.theta[rank.order[i - 1] - 1];
        for (int arm = 1; arm <= params.num_arms(); ++arm) {
            if (rank.means[arm - 1] >= ith_mean) continue;
            total += 1.0 / kl(params.family, params.theta[arm - 1], ith_theta);
        }
    }
    return total;
}

double upper_constant(const ParameterSet& params, int m_players, CollisionModel model) {
    ArmRank rank = rank_arms(params, m_players);
    int m = m_players;
    double mth_mean = rank.means[rank.order[m - 1] - 1];
    double mth_theta = params.theta[rank.order[m - 1] - 1];

    std::vector<double> xs(m);
    for (int k = 1; k <= m; ++k) xs[k - 1] = x_k(params, m, k);

    if (model == CollisionModel::Model1_Share) {
        double head = 0.0;
        for (int i = 1; i <= m; ++i) head += xs[i - 1] * rank.means[rank.order[i - 1] - 1];
        double tail = 0.0;
        for (int arm = 1; arm <= params.num_arms(); ++arm) {
            if (rank.means[arm - 1] >= mth_mean) continue;
            tail += rank.means[arm - 1] / kl(params.family, params.theta[arm - 1], mth_theta);
        }
        return m * (head - tail);
    }

    double x_total = 0.0;
    for (int k = 1; k <= m; ++k) x_total += xs[k - 1];
    double head = 0.0;
    for (int i = 1; i <= m; ++i) head += x_total * rank.means[rank.order[i - 1] - 1];
    double tail = 0.0;
    for (int arm = 1; arm <= params.num_arms(); ++arm) {
        if (rank.means[arm - 1] >= mth_mean) continue;
        double inner = 1.0 / kl(params.family, params.theta[arm - 1], mth_theta);
        for (int i = 1; i <= m - 1; ++i) {
            double ith_theta = params.theta[rank.order[i - 1] - 1];
            inner -= 1.0 / kl(params.family, params.theta[arm - 1], ith_theta);
        }
        tail += rank.means[arm - 1] * std::max(inner, 0.0);
    }
    return m * (head - tail);
}

double tds_constant(const ParameterSet& params, int m_players) {
    ArmRank rank = rank_arms(params, m_players);
    double mth_mean = rank.means[rank.order[m_players - 1] - 1];
    double total = 0.0;
    for (int i = 1; i <= m_players; ++i) {
        double ith_theta = params.theta[rank.order[i - 1] - 1];
        for (int arm = 1; arm <= params.num_arms(); ++arm) {
            if (rank.means[arm - 1] >= mth_mean) continue;
            total += (mth_mean - rank.means[arm - 1]) /
                     kl(params.family, params.theta[arm - 1], ith_theta);
        }
    }
    return total;
}

BoundReport bound_report(const ParameterSet& params, int m_players) {
    BoundReport report;
    report.centralized_constant = centralized_constant(params, m_players);
    report.tds_constant = tds_constant(params, m_players);
    report.upper_model1 = upper_constant(params, m_players, CollisionModel::Model1_Share);
    report.upper_model2 = upper_constant(params, m_players, CollisionModel::Model2_NoReward);
    report.x.resize(m_players);
    for (int k = 1; k <= m_players; ++k) report.x[k - 1] = x_k(params, m_players, k);
    return report;
}

double leading_constant_estimate(const RegretCurve& curve) {
    long t = curve.checkpoints.back();
    if (t < 2) throw ValidationError("leading constant needs a final checkpoint >= 2");
    return curve.regret.back() / std::log(static_cast<double>(t));
}

}  // namespace dbandit
