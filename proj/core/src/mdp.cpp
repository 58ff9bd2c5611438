#include "offpol/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "offpol/errors.hpp"

namespace offpol {

namespace {

constexpr double kStochasticTol = 1e-12;
constexpr int kStationaryCap = 1000000;

void check_policy_shape(const Mdp& mdp, const Policy& policy, const char* where) {
    if (policy.num_states() != mdp.num_states() || policy.num_actions() != mdp.num_actions())
        throw std::invalid_argument(std::string(where) + ": policy shape does not match MDP");
}

}  // namespace

Mdp::Mdp(int num_states, int num_actions, std::vector<double> transitions, Matrix rewards,
         double discount)
    : num_states_(num_states),
      num_actions_(num_actions),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)),
      discount_(discount) {
    if (num_states_ <= 0 || num_actions_ <= 0)
        throw std::invalid_argument("Mdp: state and action counts must be positive");
    const std::size_t expected =
        static_cast<std::size_t>(num_states_) * num_actions_ * num_states_;
    if (transitions_.size() != expected)
        throw std::invalid_argument("Mdp: transition tensor has wrong size");
    if (rewards_.rows() != static_cast<std::size_t>(num_states_) ||
        rewards_.cols() != static_cast<std::size_t>(num_actions_))
        throw std::invalid_argument("Mdp: reward table has wrong shape");
    if (!(discount_ > 0.0 && discount_ < 1.0))
        throw std::invalid_argument("Mdp: discount must lie in (0,1)");
    if (!all_finite(rewards_))
        throw std::invalid_argument("Mdp: rewards must be finite");

    for (int s = 0; s < num_states_; ++s) {
        for (int a = 0; a < num_actions_; ++a) {
            double sum = 0.0;
            for (int next = 0; next < num_states_; ++next) {
                const double p = transition(s, a, next);
                if (!(p >= 0.0) || !std::isfinite(p))
                    throw std::invalid_argument("Mdp: p(s'|s=" + std::to_string(s) +
                                                ",a=" + std::to_string(a) + ") has a negative or non-finite entry");
                sum += p;
            }
            if (std::abs(sum - 1.0) > kStochasticTol)
                throw std::invalid_argument("Mdp: transition row (s=" + std::to_string(s) +
                                            ",a=" + std::to_string(a) + ") sums to " +
                                            std::to_string(sum) + ", expected 1");
        }
    }
}

MdpBuilder::MdpBuilder(int num_states, int num_actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      transitions_(num_states > 0 && num_actions > 0
                       ? static_cast<std::size_t>(num_states) * num_actions * num_states
                       : 0,
                   0.0),
      rewards_(static_cast<std::size_t>(std::max(num_states, 0)),
               static_cast<std::size_t>(std::max(num_actions, 0))) {}

MdpBuilder& MdpBuilder::transition(int s, int a, int next, double p) {
    if (s < 0 || s >= num_states_ || a < 0 || a >= num_actions_ || next < 0 ||
        next >= num_states_)
        throw std::invalid_argument("MdpBuilder::transition: index out of range");
    transitions_[(static_cast<std::size_t>(s) * num_actions_ + a) * num_states_ + next] = p;
    return *this;
}

MdpBuilder& MdpBuilder::reward(int s, int a, double r) {
    if (s < 0 || s >= num_states_ || a < 0 || a >= num_actions_)
        throw std::invalid_argument("MdpBuilder::reward: index out of range");
    rewards_(s, a) = r;
    return *this;
}

MdpBuilder& MdpBuilder::discount(double gamma) {
    discount_ = gamma;
    return *this;
}

Mdp MdpBuilder::build() const {
    return Mdp(num_states_, num_actions_, transitions_, rewards_, discount_);
}

Policy::Policy(Matrix probs) : probs_(std::move(probs)) {
    if (probs_.rows() == 0 || probs_.cols() == 0)
        throw std::invalid_argument("Policy: empty probability table");
    for (std::size_t s = 0; s < probs_.rows(); ++s) {
        double sum = 0.0;
        for (std::size_t a = 0; a < probs_.cols(); ++a) {
            const double p = probs_(s, a);
            if (!(p >= 0.0) || !std::isfinite(p))
                throw std::invalid_argument("Policy: negative or non-finite entry in row " +
                                            std::to_string(s));
            sum += p;
        }
        if (std::abs(sum - 1.0) > kStochasticTol)
            throw std::invalid_argument("Policy: row " + std::to_string(s) + " sums to " +
                                        std::to_string(sum) + ", expected 1");
    }
}

PolicyKernel policy_kernel(const Mdp& mdp, const Policy& policy) {
    check_policy_shape(mdp, policy, "policy_kernel");
    const int n = mdp.num_states();
    Matrix k(n, n);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < mdp.num_actions(); ++a) {
            const double pa = policy.prob(i, a);
            if (pa == 0.0) continue;
            for (int j = 0; j < n; ++j) k(i, j) += pa * mdp.transition(i, a, j);
        }
    return PolicyKernel{std::move(k)};
}

ValueVector policy_reward(const Mdp& mdp, const Policy& policy) {
    check_policy_shape(mdp, policy, "policy_reward");
    ValueVector r(mdp.num_states(), 0.0);
    for (int s = 0; s < mdp.num_states(); ++s)
        for (int a = 0; a < mdp.num_actions(); ++a)
            r[s] += mdp.reward(s, a) * policy.prob(s, a);
    return r;
}

Vector stationary_distribution(const PolicyKernel& kernel) {
    const Matrix& p = kernel.matrix;
    const std::size_t n = p.rows();
    if (n == 0 || p.cols() != n)
        throw std::invalid_argument("stationary_distribution: square kernel required");

    // structural irreducibility: boolean transitive closure over positive edges
    std::vector<char> reach(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) reach[i * n + j] = (i == j || p(i, j) > 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (reach[k * n + j]) reach[i * n + j] = 1;
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!reach[i * n + j])
                throw ReducibilityError(
                    "stationary_distribution: chain is reducible (state " + std::to_string(j) +
                    " unreachable from state " + std::to_string(i) + ")");

    Vector d(n, 1.0 / static_cast<double>(n));
    for (int iter = 0; iter < kStationaryCap; ++iter) {
        Vector next = vec_mat(d, p);
        double sum = 0.0;
        for (double x : next) sum += x;
        for (double& x : next) x /= sum;
        const double residual = inf_norm(subtract(vec_mat(next, p), next));
        d = std::move(next);
        if (residual <= 1e-12) {
            for (std::size_t i = 0; i < n; ++i)
                if (!(d[i] > 0.0))
                    throw ReducibilityError("stationary_distribution: state " +
                                            std::to_string(i) + " has zero stationary mass");
            return d;
        }
    }
    throw ConvergenceError(
        "stationary_distribution: power iteration did not converge (periodic chain?)");
}

ValueVector exact_value(const Mdp& mdp, const Policy& policy) {
    const PolicyKernel k = policy_kernel(mdp, policy);
    const ValueVector r = policy_reward(mdp, policy);
    const std::size_t n = k.matrix.rows();
    Matrix system = Matrix::identity(n) - mdp.discount() * k.matrix;
    ValueVector v = solve_linear(system, r);
    const double residual = inf_norm(subtract(mat_vec(system, v), r));
    if (!(residual <= 1e-10))
        throw NumericError("exact_value: solve residual " + std::to_string(residual) +
                           " exceeds 1e-10");
    return v;
}

ValueVector bellman_apply(const Mdp& mdp, const Policy& policy, const ValueVector& v,
                          double eta) {
    if (eta < 0.0) throw std::invalid_argument("bellman_apply: eta must be >= 0");
    if (v.size() != static_cast<std::size_t>(mdp.num_states()))
        throw std::invalid_argument("bellman_apply: value vector length mismatch");
    const PolicyKernel k = policy_kernel(mdp, policy);
    const ValueVector r = policy_reward(mdp, policy);
    ValueVector pv = mat_vec(k.matrix, v);
    ValueVector out(v.size());
    for (std::size_t s = 0; s < v.size(); ++s)
        out[s] = (r[s] + mdp.discount() * pv[s]) / (1.0 + eta);
    return out;
}

}  // namespace offpol
