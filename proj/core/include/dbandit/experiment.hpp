#pragma once
#include <string>
#include <vector>

#include "dbandit/analytics.hpp"
#include "dbandit/arena.hpp"
#include "dbandit/config.hpp"

namespace dbandit {

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<Trajectory> trajectories;
    RegretCurve curve;
    std::vector<RegretCurve> player_curves;
    BoundReport bounds;
    double leading_constant = 0.0;
    double leading_constant_stderr = 0.0;
    double total_collisions_mean = 0.0;
    double regenerations_mean = 0.0;
    std::vector<double> player_total_reward_mean;
};

// Runs cfg.trials independent seeded trials (trial i's streams depend only
// on (seed, i), so results are identical for any worker count) and reduces.
std::vector<Trajectory> run_trials(const TrialConfig& trial, int trials, std::uint64_t seed,
                                   int threads);

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads);

// Writes curve.csv and summary.csv into out_dir (created if missing).
void write_experiment_csv(const ExperimentResult& result, const std::string& out_dir);

struct SweepRow {
    long value = 0;
    double leading_constant_mean = 0.0;
    double leading_constant_stderr = 0.0;
    double centralized_constant = 0.0;
    double tds_constant = 0.0;
    double upper_model1 = 0.0;
    double upper_model2 = 0.0;
};

enum class SweepParam { N, M };

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepParam param,
                                const std::vector<long>& values, int threads);

void write_sweep_csv(const std::vector<SweepRow>& rows, SweepParam param,
                     const std::string& out_dir);

// Fixed 9-significant-digit formatting shared by all CSV writers.
std::string format_number(double value);

}  // namespace dbandit
