#pragma once

// Random problem instances for property tests. Transition rows and policies
// mix in a uniform floor so chains are irreducible and aperiodic and the
// behavior policy covers every action; features are resampled until their
// unweighted Gram matrix is well conditioned, keeping the weighted Gram
// invertible for any positive state weighting.

#include <algorithm>
#include <cmath>

#include "offpol/linear_arch.hpp"
#include "offpol/mdp.hpp"
#include "offpol/rng.hpp"

namespace offpol::testgen {

inline Vector random_simplex_row(Rng& rng, int n, double uniform_floor = 0.1) {
    Vector row(n);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        row[i] = -std::log(1.0 - rng.uniform());
        sum += row[i];
    }
    for (int i = 0; i < n; ++i)
        row[i] = (1.0 - uniform_floor) * row[i] / sum + uniform_floor / n;
    return row;
}

inline Mdp random_mdp(Rng& rng, int states, int actions, double gamma) {
    MdpBuilder builder(states, actions);
    builder.discount(gamma);
    for (int s = 0; s < states; ++s)
        for (int a = 0; a < actions; ++a) {
            const Vector row = random_simplex_row(rng, states);
            for (int next = 0; next < states; ++next) builder.transition(s, a, next, row[next]);
            builder.reward(s, a, 4.0 * rng.uniform() - 2.0);
        }
    return builder.build();
}

inline Policy random_policy(Rng& rng, int states, int actions) {
    Matrix probs(states, actions);
    for (int s = 0; s < states; ++s) {
        const Vector row = random_simplex_row(rng, actions);
        for (int a = 0; a < actions; ++a) probs(s, a) = row[a];
    }
    return Policy(probs);
}

inline FeatureMap random_features(Rng& rng, int states, int dim) {
    for (;;) {
        Matrix phi(states, dim);
        for (int s = 0; s < states; ++s)
            for (int c = 0; c < dim; ++c) phi(s, c) = 2.0 * rng.uniform() - 1.0;
        Matrix gram(dim, dim);
        for (int s = 0; s < states; ++s)
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) gram(r, c) += phi(s, r) * phi(s, c);
        const Vector eig = symmetric_eigenvalues(gram);
        if (eig.front() > 0.01) return FeatureMap(phi);
    }
}

inline Vector random_vector(Rng& rng, int n, double scale = 10.0) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = scale * (2.0 * rng.uniform() - 1.0);
    return v;
}

struct RandomInstance {
    Mdp mdp;
    Policy target;
    Policy behavior;
    FeatureMap features;
};

inline RandomInstance random_instance(Rng& rng, int max_states = 5, int max_actions = 3) {
    const int states = 2 + static_cast<int>(rng.uniform() * (max_states - 1));
    const int actions = 1 + static_cast<int>(rng.uniform() * max_actions);
    const int dim = 1 + static_cast<int>(rng.uniform() * std::min(states, 3));
    const double gamma = 0.1 + 0.89 * rng.uniform();
    Mdp mdp = random_mdp(rng, states, actions, gamma);
    Policy target = random_policy(rng, states, actions);
    Policy behavior = random_policy(rng, states, actions);
    FeatureMap features = random_features(rng, states, dim);
    return RandomInstance{std::move(mdp), std::move(target), std::move(behavior),
                          std::move(features)};
}

}  // namespace offpol::testgen
