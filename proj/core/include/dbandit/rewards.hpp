#pragma once
#include <stdexcept>
#include <string>
#include <vector>

#include "dbandit/rng.hpp"

namespace dbandit {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// KL divergence of a boundary Bernoulli pair is infinite; callers that feed
// sample means must clamp first (see policy.hpp).
struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RewardKind { Bernoulli, Gaussian, Poisson, Exponential };

std::string to_string(RewardKind kind);

// Distribution family plus its known constants: sigma for Gaussian,
// a/b upper bounds on theta for Poisson/Exponential index policies.
struct RewardFamily {
    RewardKind kind = RewardKind::Bernoulli;
    double sigma = 1.0;
    double a = 1.0;
    double b = 1.0;

    void validate() const;
};

// Ground-truth per-arm parameters; hidden from policies.
struct ParameterSet {
    RewardFamily family;
    std::vector<double> theta;

    int num_arms() const { return static_cast<int>(theta.size()); }
    void validate() const;
};

// Arm ids (1-based) sorted by descending mean, plus the raw means.
struct ArmRank {
    std::vector<int> order;
    std::vector<double> means;
};

bool theta_valid(const RewardFamily& family, double theta);

// mu(theta); all four families are mean-parameterized, so this also
// validates theta for the family.
double mean(const RewardFamily& family, double theta);

// Closed-form KL divergence I(theta, theta_prime) in nats.
double kl(const RewardFamily& family, double theta, double theta_prime);

double sample(const RewardFamily& family, double theta, Rng& rng);

// Stable descending sort with the top-(M+1) distinctness and top-M
// nonnegativity checks. Equal means among strictly suboptimal arms keep
// ascending arm-id order.
ArmRank rank_arms(const ParameterSet& params, int m_players);

}  // namespace dbandit
