#include "offpol/analysis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "offpol/errors.hpp"

namespace offpol {

ExpectedSystem expected_system(const Mdp& mdp, const Policy& target, const Policy& behavior,
                               const FeatureMap& features, double eta) {
    if (eta < 0.0) throw std::invalid_argument("expected_system: eta must be >= 0");
    if (features.num_states() != mdp.num_states())
        throw std::invalid_argument("expected_system: feature rows do not match state count");

    const Vector d = stationary_distribution(policy_kernel(mdp, behavior));
    const Matrix p_pi = policy_kernel(mdp, target).matrix;
    const ValueVector r_pi = policy_reward(mdp, target);
    const Matrix& phi = features.phi();
    const int n = mdp.num_states();

    // D_mu ((1+eta) I - gamma P_pi), rows scaled by d
    Matrix weighted(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) weighted(i, j) = -d[i] * mdp.discount() * p_pi(i, j);
        weighted(i, i) += d[i] * (1.0 + eta);
    }

    ExpectedSystem out;
    out.eta = eta;
    out.a = phi.transposed() * weighted * phi;
    out.b.assign(features.dim(), 0.0);
    for (int s = 0; s < n; ++s) features.add_row_scaled(s, d[s] * r_pi[s], out.b);

    Matrix sym = out.a + out.a.transposed();
    out.min_sym_eigenvalue = symmetric_eigenvalues(std::move(sym)).front();
    return out;
}

bool is_positive_definite(const ExpectedSystem& system) {
    return system.min_sym_eigenvalue > kPdTolerance;
}

double eta_lower_bound(const Mdp& mdp, const Policy& target, const Policy& behavior) {
    const Vector d = stationary_distribution(policy_kernel(mdp, behavior));
    const Matrix p_pi = policy_kernel(mdp, target).matrix;
    const Vector visit = vec_mat(d, p_pi);  // (d^T P_pi)_i = sum_j d_j p_pi(i|j)
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        worst = std::max(worst, mdp.discount() * visit[i] / d[i]);
    return std::max(worst - 1.0, 0.0);
}

Vector fixed_point(const ExpectedSystem& system) {
    Vector theta = solve_linear(system.a, system.b);
    const double residual = inf_norm(subtract(mat_vec(system.a, theta), system.b));
    if (!(residual <= 1e-10))
        throw NumericError("fixed_point: residual " + std::to_string(residual) +
                           " exceeds 1e-10");
    return theta;
}

double fixed_point_consistency(const Mdp& mdp, const Policy& target, const Policy& behavior,
                               const FeatureMap& features, double eta,
                               const Vector& theta_star) {
    const StateWeights weights(stationary_distribution(policy_kernel(mdp, behavior)));
    const ValueVector v = approx_value(features, theta_star);
    const ValueVector bellman = bellman_apply(mdp, target, v, eta);
    const Projection proj = project(features, weights, bellman);
    return inf_norm(subtract(v, proj.values));
}

}  // namespace offpol
