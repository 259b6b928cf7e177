// Benchmark CLI for decentralized multi-player bandit experiments.
//
//   dbandit-bench run    --config PATH [--trials K] [--seed S] [--threads W] --out DIR
//   dbandit-bench sweep  --config PATH --param {N|M} --values LIST --out DIR
//   dbandit-bench bounds --config PATH
//
// Exit codes: 0 success, 2 validation error, 1 runtime error.
#include <cstdio>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "dbandit/experiment.hpp"

namespace {

int default_threads() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void print_bounds(const dbandit::BoundReport& bounds) {
    using dbandit::format_number;
    std::cout << "centralized_constant: " << format_number(bounds.centralized_constant) << '\n'
              << "tds_constant: " << format_number(bounds.tds_constant) << '\n'
              << "upper_model1: " << format_number(bounds.upper_model1) << '\n'
              << "upper_model2: " << format_number(bounds.upper_model2) << '\n';
    for (size_t k = 0; k < bounds.x.size(); ++k)
        std::cout << "x_" << (k + 1) << ": " << format_number(bounds.x[k]) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized multi-player bandit benchmark"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string param_name;
    std::vector<long> values;
    int trials_override = -1;
    long long seed_override = -1;
    int threads = default_threads();

    auto* run = app.add_subcommand("run", "Run a seeded Monte Carlo experiment");
    run->add_option("--config", config_path, "Config file (TOML)")->required();
    run->add_option("--trials", trials_override, "Override trial count");
    run->add_option("--seed", seed_override, "Override master seed");
    run->add_option("--threads", threads, "Worker threads");
    run->add_option("--out", out_dir, "Output directory")->required();

    auto* sweep = app.add_subcommand("sweep", "Sweep N or M and emit one summary row per value");
    sweep->add_option("--config", config_path, "Config file (TOML)")->required();
    sweep->add_option("--param", param_name, "Sweep parameter: N or M")->required();
    sweep->add_option("--values", values, "Sweep values")->required()->delimiter(',');
    sweep->add_option("--threads", threads, "Worker threads");
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto* bounds = app.add_subcommand("bounds", "Print analytic bound constants, no simulation");
    bounds->add_option("--config", config_path, "Config file (TOML)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        dbandit::ExperimentConfig cfg = dbandit::load_config_file(config_path);
        if (trials_override > 0) cfg.trials = trials_override;
        if (seed_override >= 0) cfg.seed = static_cast<std::uint64_t>(seed_override);
        if (!out_dir.empty()) cfg.output_dir = out_dir;

        if (run->parsed()) {
            dbandit::ExperimentResult result = dbandit::run_experiment(cfg, threads);
            dbandit::write_experiment_csv(result, cfg.output_dir);
            std::cout << "wrote " << cfg.output_dir << "/curve.csv and summary.csv ("
                      << cfg.trials << " trials, T=" << cfg.horizon << ")\n";
        } else if (sweep->parsed()) {
            dbandit::SweepParam param;
            if (param_name == "N") param = dbandit::SweepParam::N;
            else if (param_name == "M") param = dbandit::SweepParam::M;
            else throw dbandit::ConfigError({"--param must be N or M"});
            auto rows = dbandit::run_sweep(cfg, param, values, threads);
            dbandit::write_sweep_csv(rows, param, cfg.output_dir);
            std::cout << "wrote " << cfg.output_dir << "/sweep.csv (" << rows.size()
                      << " rows)\n";
        } else if (bounds->parsed()) {
            print_bounds(dbandit::bound_report(cfg.parameter_set(), cfg.num_players));
        }
    } catch (const dbandit::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const dbandit::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
