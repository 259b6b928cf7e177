#include "dbandit/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace dbandit {

std::string to_string(RewardKind kind) {
    switch (kind) {
        case RewardKind::Bernoulli: return "bernoulli";
        case RewardKind::Gaussian: return "gaussian";
        case RewardKind::Poisson: return "poisson";
        case RewardKind::Exponential: return "exponential";
    }
    return "?";
}

void RewardFamily::validate() const {
    if (kind == RewardKind::Gaussian && !(sigma > 0.0))
        throw ValidationError("gaussian family requires sigma > 0");
    if (kind == RewardKind::Poisson && !(a > 0.0))
        throw ValidationError("poisson family requires a > 0");
    if (kind == RewardKind::Exponential && !(b > 0.0))
        throw ValidationError("exponential family requires b > 0");
}

bool theta_valid(const RewardFamily& family, double theta) {
    if (!std::isfinite(theta)) return false;
    switch (family.kind) {
        case RewardKind::Bernoulli: return theta > 0.0 && theta < 1.0;
        case RewardKind::Gaussian: return true;
        case RewardKind::Poisson: return theta > 0.0 && theta <= family.a;
        case RewardKind::Exponential: return theta > 0.0 && theta <= family.b;
    }
    return false;
}

static void require_theta(const RewardFamily& family, double theta) {
    if (!theta_valid(family, theta)) {
        std::ostringstream oss;
        oss << "theta " << theta << " outside the parameter domain of the "
            << to_string(family.kind) << " family";
        throw ValidationError(oss.str());
    }
}

void ParameterSet::validate() const {
    family.validate();
    if (theta.size() < 2) throw ValidationError("at least 2 arms required");
    for (double t : theta) require_theta(family, t);
}

double mean(const RewardFamily& family, double theta) {
    require_theta(family, theta);
    return theta;  // mean-parameterized for all four families
}

double kl(const RewardFamily& family, double theta, double theta_prime) {
    if (family.kind == RewardKind::Bernoulli) {
        // Closed interval here: boundary arguments map to the explicit
        // divergence error below instead of a domain error.
        if (!std::isfinite(theta) || theta < 0.0 || theta > 1.0 || !std::isfinite(theta_prime) ||
            theta_prime < 0.0 || theta_prime > 1.0)
            throw ValidationError("bernoulli KL arguments must lie in [0,1]");
    } else {
        require_theta(family, theta);
        require_theta(family, theta_prime);
    }
    switch (family.kind) {
        case RewardKind::Bernoulli: {
            if ((theta_prime == 0.0 || theta_prime == 1.0) && theta != theta_prime)
                throw DivergenceError("infinite Bernoulli KL divergence at boundary parameter");
            if (theta == theta_prime) return 0.0;
            double head = theta == 0.0 ? 0.0 : theta * std::log(theta / theta_prime);
            double tail = theta == 1.0
                              ? 0.0
                              : (1.0 - theta) * std::log((1.0 - theta) / (1.0 - theta_prime));
            return head + tail;
        }
        case RewardKind::Gaussian: {
            double d = theta - theta_prime;
            return d * d / (2.0 * family.sigma * family.sigma);
        }
        case RewardKind::Poisson:
            return theta * std::log(theta / theta_prime) + theta_prime - theta;
        case RewardKind::Exponential:
            return std::log(theta_prime / theta) + theta / theta_prime - 1.0;
    }
    return 0.0;
}

double sample(const RewardFamily& family, double theta, Rng& rng) {
    require_theta(family, theta);
    switch (family.kind) {
        case RewardKind::Bernoulli:
            return rng.uniform01() < theta ? 1.0 : 0.0;
        case RewardKind::Gaussian:
            return std::normal_distribution<double>(theta, family.sigma)(rng.engine());
        case RewardKind::Poisson:
            return static_cast<double>(std::poisson_distribution<long>(theta)(rng.engine()));
        case RewardKind::Exponential:
            return std::exponential_distribution<double>(1.0 / theta)(rng.engine());
    }
    return 0.0;
}

ArmRank rank_arms(const ParameterSet& params, int m_players) {
    params.validate();
    int n = params.num_arms();
    if (m_players < 1 || m_players >= n)
        throw ValidationError("player count M must satisfy 1 <= M < N");

    ArmRank rank;
    rank.means.resize(n);
    for (int i = 0; i < n; ++i) rank.means[i] = mean(params.family, params.theta[i]);
    rank.order.resize(n);
    std::iota(rank.order.begin(), rank.order.end(), 1);
    std::stable_sort(rank.order.begin(), rank.order.end(), [&](int lhs, int rhs) {
        return rank.means[lhs - 1] > rank.means[rhs - 1];
    });

    // The M best arms must have distinct means, distinct also from the
    // (M+1)th, and nonnegative.
    for (int r = 0; r < m_players; ++r) {
        int arm = rank.order[r];
        int next = rank.order[r + 1];
        if (rank.means[arm - 1] == rank.means[next - 1]) {
            std::ostringstream oss;
            oss << "tied means at rank " << (r + 1) << ": arms " << arm << " and " << next;
            throw ValidationError(oss.str());
        }
        if (rank.means[arm - 1] < 0.0) {
            std::ostringstream oss;
            oss << "negative mean among the top " << m_players << " arms: arm " << arm;
            throw ValidationError(oss.str());
        }
    }
    return rank;
}

}  // namespace dbandit
