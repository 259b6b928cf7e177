#include "dbandit/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

namespace dbandit {

std::string format_number(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

std::vector<Trajectory> run_trials(const TrialConfig& trial, int trials, std::uint64_t seed,
                                   int threads) {
    trial.validate();
    std::vector<Trajectory> out(trials);
    if (threads < 1) threads = 1;
    threads = std::min<int>(threads, trials);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= trials) return;
            out[i] = run_trial(trial, derive_seed(seed, static_cast<std::uint64_t>(i) + 1));
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, int threads) {
    ExperimentResult result;
    result.config = cfg;
    TrialConfig trial = cfg.trial_config();
    result.trajectories = run_trials(trial, cfg.trials, cfg.seed, threads);

    ParameterSet params = cfg.parameter_set();
    result.curve = system_regret(result.trajectories, params, cfg.num_players);
    result.player_curves = per_player_regret(result.trajectories, params, cfg.num_players);
    result.bounds = bound_report(params, cfg.num_players);

    // Leading constant with spread across trials.
    double log_t = std::log(static_cast<double>(result.curve.checkpoints.back()));
    result.leading_constant = result.curve.final_regret() / log_t;
    result.leading_constant_stderr = result.curve.stderr_.back() / log_t;

    int n_trials = static_cast<int>(result.trajectories.size());
    result.player_total_reward_mean.assign(cfg.num_players, 0.0);
    for (const auto& traj : result.trajectories) {
        result.total_collisions_mean += static_cast<double>(traj.cum_collisions.back());
        result.regenerations_mean += static_cast<double>(traj.regenerations);
        for (int p = 0; p < cfg.num_players; ++p)
            result.player_total_reward_mean[p] += traj.cum_player[p].back();
    }
    result.total_collisions_mean /= n_trials;
    result.regenerations_mean /= n_trials;
    for (double& v : result.player_total_reward_mean) v /= n_trials;
    return result;
}

void write_experiment_csv(const ExperimentResult& result, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    int m_players = result.config.num_players;
    int n_trials = static_cast<int>(result.trajectories.size());

    {
        std::ofstream out(fs::path(out_dir) / "curve.csv");
        if (!out) throw std::runtime_error("cannot write curve.csv in " + out_dir);
        out << "t,regret_mean,regret_stderr,regret_over_logt";
        for (int p = 1; p <= m_players; ++p) out << ",player" << p << "_regret";
        out << ",collisions_cum_mean\n";
        const RegretCurve& curve = result.curve;
        for (size_t c = 0; c < curve.checkpoints.size(); ++c) {
            out << curve.checkpoints[c] << ',' << format_number(curve.regret[c]) << ','
                << format_number(curve.stderr_[c]) << ','
                << format_number(curve.regret_over_log[c]);
            for (int p = 0; p < m_players; ++p)
                out << ',' << format_number(result.player_curves[p].regret[c]);
            double coll = 0.0;
            for (const auto& traj : result.trajectories)
                coll += static_cast<double>(traj.cum_collisions[c]);
            out << ',' << format_number(coll / n_trials) << '\n';
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "summary.csv");
        if (!out) throw std::runtime_error("cannot write summary.csv in " + out_dir);
        out << "leading_constant,leading_constant_stderr,centralized_constant,tds_constant,"
               "upper_model1,upper_model2,total_collisions_mean,regenerations_mean";
        for (int p = 1; p <= m_players; ++p) out << ",player" << p << "_total_reward_mean";
        out << '\n';
        out << format_number(result.leading_constant) << ','
            << format_number(result.leading_constant_stderr) << ','
            << format_number(result.bounds.centralized_constant) << ','
            << format_number(result.bounds.tds_constant) << ','
            << format_number(result.bounds.upper_model1) << ','
            << format_number(result.bounds.upper_model2) << ','
            << format_number(result.total_collisions_mean) << ','
            << format_number(result.regenerations_mean);
        for (double v : result.player_total_reward_mean) out << ',' << format_number(v);
        out << '\n';
    }
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, SweepParam param,
                                const std::vector<long>& values, int threads) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (long value : values) {
        ExperimentConfig cfg = base;
        if (param == SweepParam::N) {
            if (!cfg.theta.generated)
                throw ConfigError({"sweeping over N requires a theta generator "
                                   "(theta_start/theta_step/theta_count)"});
            cfg.theta.count = static_cast<int>(value);
        } else {
            cfg.num_players = static_cast<int>(value);
            if (cfg.policies.size() > 1)
                throw ConfigError({"sweeping over M requires a single shared policy"});
        }
        // re-validate the instantiated config
        try {
            cfg.trial_config().validate();
        } catch (const std::exception& e) {
            throw ConfigError({std::string("sweep value ") + std::to_string(value) + ": " +
                               e.what()});
        }
        ExperimentResult result = run_experiment(cfg, threads);
        SweepRow row;
        row.value = value;
        row.leading_constant_mean = result.leading_constant;
        row.leading_constant_stderr = result.leading_constant_stderr;
        row.centralized_constant = result.bounds.centralized_constant;
        row.tds_constant = result.bounds.tds_constant;
        row.upper_model1 = result.bounds.upper_model1;
        row.upper_model2 = result.bounds.upper_model2;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, SweepParam param,
                     const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    std::ofstream out(fs::path(out_dir) / "sweep.csv");
    if (!out) throw std::runtime_error("cannot write sweep.csv in " + out_dir);
    out << (param == SweepParam::N ? "N" : "M")
        << ",leading_constant_mean,leading_constant_stderr,centralized_constant,"
           "tds_constant,upper_model1,upper_model2\n";
    for (const auto& row : rows) {
        out << row.value << ',' << format_number(row.leading_constant_mean) << ','
            << format_number(row.leading_constant_stderr) << ','
            << format_number(row.centralized_constant) << ','
            << format_number(row.tds_constant) << ',' << format_number(row.upper_model1) << ','
            << format_number(row.upper_model2) << '\n';
    }
}

}  // namespace dbandit
