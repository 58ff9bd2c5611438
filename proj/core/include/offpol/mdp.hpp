#pragma once

#include <vector>

#include "offpol/linalg.hpp"

namespace offpol {

using ValueVector = Vector;

/// Finite MDP with deterministic expected rewards r(s,a). Immutable after
/// construction; the constructor rejects non-stochastic transition rows and a
/// discount outside (0,1).
class Mdp {
public:
    /// `transitions` holds p(s'|s,a) indexed by (s * num_actions + a) * num_states + s'.
    Mdp(int num_states, int num_actions, std::vector<double> transitions, Matrix rewards,
        double discount);

    int num_states() const { return num_states_; }
    int num_actions() const { return num_actions_; }
    double discount() const { return discount_; }

    double transition(int s, int a, int next) const {
        return transitions_[(static_cast<std::size_t>(s) * num_actions_ + a) * num_states_ + next];
    }
    double reward(int s, int a) const { return rewards_(s, a); }
    const Matrix& rewards() const { return rewards_; }

    friend bool operator==(const Mdp&, const Mdp&) = default;

private:
    int num_states_ = 0;
    int num_actions_ = 0;
    std::vector<double> transitions_;
    Matrix rewards_;
    double discount_ = 0.0;
};

/// Incremental construction from (s, a, s', p) and (s, a, r) entries, matching
/// the config file's trans:/reward: lines. Unlisted rewards default to zero;
/// every (s,a) transition row must end up stochastic.
class MdpBuilder {
public:
    MdpBuilder(int num_states, int num_actions);

    MdpBuilder& transition(int s, int a, int next, double p);
    MdpBuilder& reward(int s, int a, double r);
    MdpBuilder& discount(double gamma);

    Mdp build() const;

private:
    int num_states_;
    int num_actions_;
    std::vector<double> transitions_;
    Matrix rewards_;
    double discount_ = 0.9;
};

/// Row-stochastic state -> action-distribution table.
class Policy {
public:
    explicit Policy(Matrix probs);

    int num_states() const { return static_cast<int>(probs_.rows()); }
    int num_actions() const { return static_cast<int>(probs_.cols()); }
    double prob(int s, int a) const { return probs_(s, a); }
    const Matrix& probs() const { return probs_; }

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    Matrix probs_;
};

/// State-to-state Markov kernel induced by a policy.
struct PolicyKernel {
    Matrix matrix;
};

/// Kernel with entries sum_a policy(i,a) * p(j|i,a).
PolicyKernel policy_kernel(const Mdp& mdp, const Policy& policy);

/// Expected one-step reward per state under the policy.
ValueVector policy_reward(const Mdp& mdp, const Policy& policy);

/// Stationary distribution of the kernel by power iteration (tolerance 1e-12,
/// cap 1e6 iterations). Rejects structurally reducible chains with
/// ReducibilityError and non-converging (e.g. periodic) chains with
/// ConvergenceError.
Vector stationary_distribution(const PolicyKernel& kernel);

/// Exact value function (I - gamma*P_pi)^{-1} r_pi by direct elimination.
ValueVector exact_value(const Mdp& mdp, const Policy& policy);

/// Perturbed Bellman operator application: (r_pi + gamma*P_pi*v) / (1 + eta).
/// eta = 0 gives the standard operator.
ValueVector bellman_apply(const Mdp& mdp, const Policy& policy, const ValueVector& v,
                          double eta);

}  // namespace offpol
