#pragma once
#include <vector>

#include "dbandit/arena.hpp"
#include "dbandit/rewards.hpp"

namespace dbandit {

struct RegretCurve {
    std::vector<long> checkpoints;
    std::vector<double> regret;           // mean realized regret across trials
    std::vector<double> stderr_;          // standard error of the mean
    std::vector<double> regret_over_log;  // regret / ln(t); 0 at t = 1

    double final_regret() const { return regret.back(); }
};

// Analytic constants for a given (Theta, M): the centralized and TDS-class
// lower-bound constants and the two collision-model upper-bound constants,
// plus the x_k coefficients.
struct BoundReport {
    double centralized_constant = 0.0;
    double tds_constant = 0.0;
    double upper_model1 = 0.0;
    double upper_model2 = 0.0;
    std::vector<double> x;  // x_1..x_M
};

RegretCurve system_regret(const std::vector<Trajectory>& trials, const ParameterSet& params,
                          int m_players);

std::vector<RegretCurve> per_player_regret(const std::vector<Trajectory>& trials,
                                           const ParameterSet& params, int m_players);

double centralized_constant(const ParameterSet& params, int m_players);
double x_k(const ParameterSet& params, int m_players, int k);
double upper_constant(const ParameterSet& params, int m_players, CollisionModel model);
double tds_constant(const ParameterSet& params, int m_players);

BoundReport bound_report(const ParameterSet& params, int m_players);

// R_T / ln(T) at the final checkpoint.
double leading_constant_estimate(const RegretCurve& curve);

}  // namespace dbandit
