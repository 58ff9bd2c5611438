#pragma once

#include "offpol/linalg.hpp"
#include "offpol/mdp.hpp"

namespace offpol {

/// |S| x d feature matrix; row s is the feature vector of state s.
class FeatureMap {
public:
    explicit FeatureMap(Matrix phi);

    int num_states() const { return static_cast<int>(phi_.rows()); }
    int dim() const { return static_cast<int>(phi_.cols()); }
    const Matrix& phi() const { return phi_; }

    /// phi(s)^T theta
    double dot_row(int s, const Vector& theta) const {
        double acc = 0.0;
        for (std::size_t c = 0; c < phi_.cols(); ++c) acc += phi_(s, c) * theta[c];
        return acc;
    }

    /// theta += scale * phi(s)
    void add_row_scaled(int s, double scale, Vector& theta) const {
        for (std::size_t c = 0; c < phi_.cols(); ++c) theta[c] += scale * phi_(s, c);
    }

    friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

private:
    Matrix phi_;
};

/// Probability weights over states: the diagonal of the behavior-weighting
/// matrix. Nonnegative and normalized within 1e-10.
class StateWeights {
public:
    explicit StateWeights(Vector weights);

    int size() const { return static_cast<int>(weights_.size()); }
    double operator[](int s) const { return weights_[s]; }
    const Vector& weights() const { return weights_; }

private:
    Vector weights_;
};

/// Phi * theta.
ValueVector approx_value(const FeatureMap& features, const Vector& theta);

/// sqrt( sum_s weights[s] * (v_exact[s] - v_approx[s])^2 ).
double weighted_rmse(const ValueVector& v_exact, const ValueVector& v_approx,
                     const StateWeights& weights);

struct Projection {
    Vector theta;
    ValueVector values;
};

/// Weighted least-squares projection of v onto span(Phi). Throws RankError
/// when the Gram matrix Phi^T diag(w) Phi is singular or has condition number
/// above 1e12.
Projection project(const FeatureMap& features, const StateWeights& weights,
                   const ValueVector& v);

/// Whether the Gram matrix is invertible at the tolerance project() uses,
/// i.e. whether the projection (and a best-RMSE query) is defined.
bool projection_defined(const FeatureMap& features, const StateWeights& weights);

}  // namespace offpol
