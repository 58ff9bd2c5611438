#include "offpol/linear_arch.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "offpol/errors.hpp"

namespace offpol {

namespace {

constexpr double kMaxGramCondition = 1e12;

Matrix gram_matrix(const FeatureMap& features, const StateWeights& weights) {
    const Matrix& phi = features.phi();
    const int d = features.dim();
    Matrix gram(d, d);
    for (int s = 0; s < features.num_states(); ++s) {
        const double w = weights[s];
        if (w == 0.0) continue;
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) gram(r, c) += w * phi(s, r) * phi(s, c);
    }
    return gram;
}

void check_gram_condition(const Matrix& gram) {
    const Vector eig = symmetric_eigenvalues(gram);
    const double lo = eig.front();
    const double hi = eig.back();
    if (!(lo > 0.0) || hi / lo > kMaxGramCondition)
        throw RankError("project: Gram matrix is singular or ill-conditioned "
                        "(features not full column rank under these weights)");
}

}  // namespace

FeatureMap::FeatureMap(Matrix phi) : phi_(std::move(phi)) {
    if (phi_.rows() == 0 || phi_.cols() == 0)
        throw std::invalid_argument("FeatureMap: feature matrix must be nonempty");
    if (!all_finite(phi_))
        throw std::invalid_argument("FeatureMap: feature entries must be finite");
}

StateWeights::StateWeights(Vector weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw std::invalid_argument("StateWeights: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("StateWeights: weights must be nonnegative and finite");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
        throw std::invalid_argument("StateWeights: weights sum to " + std::to_string(sum) +
                                    ", expected 1");
}

ValueVector approx_value(const FeatureMap& features, const Vector& theta) {
    if (theta.size() != static_cast<std::size_t>(features.dim()))
        throw std::invalid_argument("approx_value: weight vector length mismatch");
    return mat_vec(features.phi(), theta);
}

double weighted_rmse(const ValueVector& v_exact, const ValueVector& v_approx,
                     const StateWeights& weights) {
    if (v_exact.size() != v_approx.size() ||
        v_exact.size() != static_cast<std::size_t>(weights.size()))
        throw std::invalid_argument("weighted_rmse: length mismatch");
    double acc = 0.0;
    for (std::size_t s = 0; s < v_exact.size(); ++s) {
        const double e = v_exact[s] - v_approx[s];
        acc += weights[static_cast<int>(s)] * e * e;
    }
    return std::sqrt(acc);
}

Projection project(const FeatureMap& features, const StateWeights& weights,
                   const ValueVector& v) {
    if (v.size() != static_cast<std::size_t>(features.num_states()) ||
        weights.size() != features.num_states())
        throw std::invalid_argument("project: dimension mismatch");

    const Matrix gram = gram_matrix(features, weights);
    check_gram_condition(gram);

    // rhs = Phi^T diag(w) v
    Vector rhs(features.dim(), 0.0);
    for (int s = 0; s < features.num_states(); ++s) {
        const double wv = weights[s] * v[s];
        if (wv == 0.0) continue;
        features.add_row_scaled(s, wv, rhs);
    }

    Projection out;
    out.theta = solve_spd(gram, rhs);
    out.values = approx_value(features, out.theta);

    // normal-equation residual ||Phi^T D (v - v_proj)||_inf
    Vector residual(features.dim(), 0.0);
    for (int s = 0; s < features.num_states(); ++s)
        features.add_row_scaled(s, weights[s] * (v[s] - out.values[s]), residual);
    if (!(inf_norm(residual) <= 1e-9))
        throw NumericError("project: normal-equation residual exceeds 1e-9");
    return out;
}

bool projection_defined(const FeatureMap& features, const StateWeights& weights) {
    try {
        check_gram_condition(gram_matrix(features, weights));
        return true;
    } catch (const RankError&) {
        return false;
    }
}

}  // namespace offpol
