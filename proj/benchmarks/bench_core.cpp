#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "dbandit/arena.hpp"
#include "dbandit/policy.hpp"
#include "dbandit/rewards.hpp"

using namespace dbandit;

static void BM_kl_bernoulli(benchmark::State& state) {
    RewardFamily fam{RewardKind::Bernoulli};
    double t1 = 0.3, t2 = 0.7;
    for (auto _ : state) benchmark::DoNotOptimize(kl(fam, t1, t2));
}
BENCHMARK(BM_kl_bernoulli);

static void BM_lr_select(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    RewardFamily fam{RewardKind::Bernoulli};
    std::vector<ArmStatistics> stats(n);
    for (int i = 0; i < n; ++i) stats[i] = {100 + i, (100.0 + i) * (i + 1) / (n + 1.0)};
    std::vector<int> eligible(n);
    std::iota(eligible.begin(), eligible.end(), 1);
    long t = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lr_select(stats, eligible, t, fam, 1.0 / (2 * n)));
        ++t;
    }
}
BENCHMARK(BM_lr_select)->Arg(4)->Arg(9)->Arg(16);

static void BM_run_trial(benchmark::State& state) {
    TrialConfig cfg;
    std::vector<double> theta(9);
    for (int i = 0; i < 9; ++i) theta[i] = 0.1 * (i + 1);
    cfg.params = ParameterSet{RewardFamily{RewardKind::Bernoulli}, theta};
    cfg.tdfs.num_players = 2;
    cfg.tdfs.num_arms = 9;
    cfg.tdfs.base_policy = {PolicyKind::LaiRobbins};
    cfg.model = CollisionModel::Model2_NoReward;
    cfg.horizon = static_cast<long>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trial(cfg, seed++));
    }
    state.SetItemsProcessed(state.iterations() * cfg.horizon);
}
BENCHMARK(BM_run_trial)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
