#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "dbandit/analytics.hpp"
#include "dbandit/rng.hpp"

using namespace dbandit;

namespace {
ParameterSet bern(std::vector<double> theta) {
    return {RewardFamily{RewardKind::Bernoulli}, std::move(theta)};
}
ParameterSet gauss(std::vector<double> theta, double sigma = 1.0) {
    return {RewardFamily{RewardKind::Gaussian, sigma}, std::move(theta)};
}

// Random Bernoulli parameter set with strictly distinct thetas.
ParameterSet random_bern(Rng& rng, int n) {
    std::set<double> vals;
    while (static_cast<int>(vals.size()) < n)
        vals.insert(0.05 + 0.9 * rng.uniform01());
    std::vector<double> theta(vals.begin(), vals.end());
    std::shuffle(theta.begin(), theta.end(), rng.engine());
    return bern(theta);
}

// Trajectory whose cumulative reward tracks t * per_slot - c * ln(t).
Trajectory synthetic(long horizon, double per_slot, const std::vector<double>& c_player) {
    Trajectory traj;
    traj.horizon = horizon;
    int m = static_cast<int>(c_player.size());
    traj.cum_player.resize(m);
    for (long t = 1; t <= horizon; ++t) {
        traj.checkpoints.push_back(t);
        double sys = 0.0;
        for (int p = 0; p < m; ++p) {
            double v = t * per_slot / m - c_player[p] * std::log(static_cast<double>(t));
            traj.cum_player[p].push_back(v);
            sys += v;
        }
        traj.cum_system.push_back(sys);
        traj.cum_collisions.push_back(0);
    }
    return traj;
}
}  // namespace

TEST_CASE("centralized constant spot values") {
    CHECK(centralized_constant(bern({0.9, 0.1}), 1) == doctest::Approx(0.455120).epsilon(1e-4));
    // gaussian: kl = (d^2)/2 at sigma 1, so terms are 1/0.5 and 2/2
    CHECK(centralized_constant(gauss({2.0, 1.0, 0.0}), 1) == doctest::Approx(3.0));
    // arms with identical sub-optimal means contribute identically
    double c = centralized_constant(bern({0.9, 0.6, 0.5, 0.5}), 2);
    double half = (0.6 - 0.5) / kl(RewardFamily{RewardKind::Bernoulli}, 0.5, 0.6);
    CHECK(c == doctest::Approx(2.0 * half));
}

TEST_CASE("x_k examples and monotonicity") {
    CHECK(x_k(gauss({2.0, 1.0}), 1, 1) == doctest::Approx(2.0));
    Rng rng(11);
    for (int iter = 0; iter < 20; ++iter) {
        ParameterSet params = random_bern(rng, 6);
        int m = 1 + iter % 4;
        double prev = 0.0;
        for (int k = 1; k <= m; ++k) {
            double x = x_k(params, m, k);
            CHECK(x >= prev);
            prev = x;
        }
    }
    CHECK_THROWS_AS(x_k(bern({0.9, 0.1}), 1, 2), ValidationError);
}

TEST_CASE("tds constant example") {
    // gaussian [3,2,1], M=2: (2-1)/kl(1,3) + (2-1)/kl(1,2) = 0.5 + 2
    CHECK(tds_constant(gauss({3.0, 2.0, 1.0}), 2) == doctest::Approx(2.5));
}

TEST_CASE("all constants coincide for a single player") {
    Rng rng(17);
    for (int iter = 0; iter < 20; ++iter) {
        ParameterSet params = random_bern(rng, 5);
        double cen = centralized_constant(params, 1);
        CHECK(tds_constant(params, 1) == doctest::Approx(cen));
        CHECK(upper_constant(params, 1, CollisionModel::Model1_Share) == doctest::Approx(cen));
        CHECK(upper_constant(params, 1, CollisionModel::Model2_NoReward) == doctest::Approx(cen));
    }
}

TEST_CASE("tds dominates the centralized constant") {
    Rng rng(23);
    for (int iter = 0; iter < 50; ++iter) {
        int n = 4 + iter % 4;
        ParameterSet params = random_bern(rng, n);
        for (int m = 1; m <= 3; ++m) {
            CHECK(tds_constant(params, m) >= centralized_constant(params, m) - 1e-12);
        }
    }
}

TEST_CASE("bound report regression fixture (bernoulli 0.1..0.9, M=2)") {
    std::vector<double> theta;
    for (int i = 1; i <= 9; ++i) theta.push_back(0.1 * i);
    BoundReport report = bound_report(bern(theta), 2);
    CHECK(report.centralized_constant == doctest::Approx(10.043530249).epsilon(1e-8));
    CHECK(report.tds_constant == doctest::Approx(13.779784637).epsilon(1e-8));
    CHECK(report.upper_model1 == doctest::Approx(148.615939727).epsilon(1e-8));
    CHECK(report.upper_model2 == doctest::Approx(394.830422315).epsilon(1e-8));
    REQUIRE(report.x.size() == 2);
    CHECK(report.x[0] == doctest::Approx(37.802611538).epsilon(1e-8));
    CHECK(report.x[1] == doctest::Approx(93.751238677).epsilon(1e-8));
}

TEST_CASE("regret curves recover a synthetic logarithmic law") {
    ParameterSet params = bern({0.9, 0.8, 0.1});
    // best_sum = 1.7; player shares 0.85 each
    std::vector<Trajectory> trials{synthetic(200, 1.7, {1.0, 1.5})};
    RegretCurve sys = system_regret(trials, params, 2);
    auto players = per_player_regret(trials, params, 2);

    for (size_t c = 0; c < sys.checkpoints.size(); ++c) {
        double lnt = std::log(static_cast<double>(sys.checkpoints[c]));
        CHECK(sys.regret[c] == doctest::Approx(2.5 * lnt).epsilon(1e-9));
        CHECK(players[0].regret[c] == doctest::Approx(1.0 * lnt).epsilon(1e-9));
        CHECK(players[1].regret[c] == doctest::Approx(1.5 * lnt).epsilon(1e-9));
        CHECK(players[0].regret[c] + players[1].regret[c] ==
              doctest::Approx(sys.regret[c]).epsilon(1e-9));
    }
    CHECK(leading_constant_estimate(sys) == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(sys.regret_over_log.back() == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(sys.regret_over_log.front() == 0.0);  // undefined at t = 1
}

TEST_CASE("regret standard error across two offset trials") {
    ParameterSet params = bern({0.9, 0.1});
    Trajectory lo = synthetic(50, 0.9, {1.0});
    Trajectory hi = lo;
    const double d = 0.25;
    for (auto& v : lo.cum_system) v += d;   // regret shifted down by d
    for (auto& v : hi.cum_system) v -= d;   // and up by d
    RegretCurve curve = system_regret({lo, hi}, params, 1);
    for (double se : curve.stderr_) CHECK(se == doctest::Approx(d).epsilon(1e-9));
}

TEST_CASE("leading constant requires a usable final checkpoint") {
    RegretCurve curve;
    curve.checkpoints = {1};
    curve.regret = {0.0};
    CHECK_THROWS_AS(leading_constant_estimate(curve), ValidationError);
}
