#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dbandit/config.hpp"
#include "dbandit/experiment.hpp"

using namespace dbandit;
namespace fs = std::filesystem;

namespace {

const char* kSmallConfig = R"(family = "bernoulli"
theta = [0.1, 0.5, 0.9]
players = 2
horizon = 300
trials = 8
seed = 7
policy = "lai_robbins"
collision_model = 1
)";

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path fresh_dir(const std::string& leaf) {
    fs::path dir = fs::temp_directory_path() / "dbandit_tests" / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("parse a full generator-based config") {
    ExperimentConfig cfg = parse_config(R"(
family = "bernoulli"
theta_start = 0.1
theta_step = 0.1
theta_count = 9
players = 2
horizon = 5000
trials = 200
seed = 20260823
policy = "lai_robbins"
collision_model = 2
)");
    CHECK(cfg.family.kind == RewardKind::Bernoulli);
    CHECK(cfg.theta.generated);
    CHECK(cfg.num_arms() == 9);
    CHECK(cfg.theta.expand()[8] == doctest::Approx(0.9));
    CHECK(cfg.num_players == 2);
    CHECK(cfg.horizon == 5000);
    CHECK(cfg.trials == 200);
    CHECK(cfg.seed == 20260823);
    CHECK(cfg.policies == std::vector<PolicyKind>{PolicyKind::LaiRobbins});
    CHECK(cfg.collision_model == CollisionModel::Model2_NoReward);
    CHECK(cfg.pre_agreement);
    CHECK(cfg.coupled);
    CHECK(cfg.trial_config().tdfs.effective_delta() == doctest::Approx(1.0 / 18.0));
}

TEST_CASE("the shipped presets all parse") {
    for (const auto& entry : fs::directory_iterator(DBANDIT_PRESET_DIR)) {
        if (entry.path().extension() != ".toml") continue;
        CAPTURE(entry.path().string());
        CHECK_NOTHROW(load_config_file(entry.path().string()));
    }
}

TEST_CASE("validation failures raise ConfigError") {
    SUBCASE("delta outside (0, 1/N)") {
        CHECK_THROWS_AS(parse_config("family = \"bernoulli\"\ntheta = [0.1, 0.5, 0.9]\n"
                                     "delta = 0.5\n"),
                        ConfigError);
    }
    SUBCASE("players not below arm count") {
        CHECK_THROWS_AS(parse_config("family = \"bernoulli\"\ntheta = [0.1, 0.5, 0.9]\n"
                                     "players = 3\n"),
                        ConfigError);
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_config("family = \"bernoulli\"\ntheta = [0.1, 0.9]\n"
                                     "horizonn = 100\n"),
                        ConfigError);
    }
    SUBCASE("all problems reported at once") {
        try {
            parse_config("family = \"nope\"\ntheta = [0.1, 0.5]\nplayers = 5\n"
                         "policy = \"bogus\"\nwhatever = 3\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(e.errors.size() >= 3);
        }
    }
    SUBCASE("missing theta") {
        CHECK_THROWS_AS(parse_config("family = \"bernoulli\"\n"), ConfigError);
    }
}

TEST_CASE("exponential bound defaults to max theta") {
    ExperimentConfig cfg = parse_config("family = \"exponential\"\ntheta = [1.0, 2.0, 3.0]\n");
    CHECK(cfg.family.b == doctest::Approx(3.0));
    CHECK_THROWS_AS(
        parse_config("family = \"exponential\"\ntheta = [1.0, 2.0, 3.0]\nb = 2.0\n"),
        ConfigError);
}

TEST_CASE("csv output: headers, determinism across worker counts") {
    ExperimentConfig cfg = parse_config(kSmallConfig);

    fs::path dir1 = fresh_dir("csv_t1");
    fs::path dir8 = fresh_dir("csv_t8");
    write_experiment_csv(run_experiment(cfg, 1), dir1.string());
    write_experiment_csv(run_experiment(cfg, 8), dir8.string());

    std::string curve = slurp(dir1 / "curve.csv");
    std::string summary = slurp(dir1 / "summary.csv");
    CHECK(curve.substr(0, curve.find('\n')) ==
          "t,regret_mean,regret_stderr,regret_over_logt,player1_regret,player2_regret,"
          "collisions_cum_mean");
    CHECK(summary.substr(0, summary.find('\n')) ==
          "leading_constant,leading_constant_stderr,centralized_constant,tds_constant,"
          "upper_model1,upper_model2,total_collisions_mean,regenerations_mean,"
          "player1_total_reward_mean,player2_total_reward_mean");

    CHECK(curve == slurp(dir8 / "curve.csv"));
    CHECK(summary == slurp(dir8 / "summary.csv"));
}

TEST_CASE("trial seeding is positional") {
    ExperimentConfig cfg = parse_config(kSmallConfig);
    TrialConfig trial = cfg.trial_config();
    auto trials = run_trials(trial, 4, cfg.seed, 2);
    Trajectory third = run_trial(trial, derive_seed(cfg.seed, 3));
    CHECK(trials[2].cum_system == third.cum_system);
    CHECK(trials[2].cum_player == third.cum_player);
    CHECK(trials[2].play_counts == third.play_counts);
    CHECK(trials[2].cum_collisions == third.cum_collisions);
}

TEST_CASE("a single-value M sweep matches the plain run") {
    ExperimentConfig cfg = parse_config(kSmallConfig);
    ExperimentResult direct = run_experiment(cfg, 4);
    auto rows = run_sweep(cfg, SweepParam::M, {2}, 4);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].value == 2);
    CHECK(rows[0].leading_constant_mean == direct.leading_constant);
    CHECK(rows[0].centralized_constant == direct.bounds.centralized_constant);
    CHECK(rows[0].tds_constant == direct.bounds.tds_constant);

    fs::path dir = fresh_dir("sweep");
    write_sweep_csv(rows, SweepParam::M, dir.string());
    std::string sweep = slurp(dir / "sweep.csv");
    CHECK(sweep.substr(0, sweep.find('\n')) ==
          "M,leading_constant_mean,leading_constant_stderr,centralized_constant,"
          "tds_constant,upper_model1,upper_model2");
}

TEST_CASE("format_number uses 9 significant digits") {
    CHECK(format_number(10.0435302489) == "10.0435302");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-1.5) == "-1.5");
}
