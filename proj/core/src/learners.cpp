#include "offpol/learners.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace offpol {

namespace {

void check_sample(const TransitionSample& sample, const FeatureMap& features,
                  const Policy& behavior) {
    if (sample.state < 0 || sample.state >= features.num_states() || sample.next_state < 0 ||
        sample.next_state >= features.num_states())
        throw std::invalid_argument("learner step: state index out of range");
    if (sample.action < 0 || sample.action >= behavior.num_actions())
        throw std::invalid_argument("learner step: action index out of range");
}

}  // namespace

StepSchedule StepSchedule::constant(double alpha0) {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("StepSchedule: alpha0 must be > 0");
    return {Kind::Constant, alpha0, 1.0};
}

StepSchedule StepSchedule::polynomial(double alpha0, double exponent) {
    if (!(alpha0 > 0.0)) throw std::invalid_argument("StepSchedule: alpha0 must be > 0");
    if (!(exponent > 0.5 && exponent <= 1.0))
        throw std::invalid_argument("StepSchedule: polynomial exponent must lie in (0.5, 1]");
    return {Kind::Polynomial, alpha0, exponent};
}

double StepSchedule::at(std::int64_t n) const {
    if (kind == Kind::Constant) return alpha0;
    return alpha0 / std::pow(static_cast<double>(n + 1), exponent);
}

LearnerState make_learner_state(Algorithm algorithm, Vector theta0) {
    LearnerState state;
    state.theta = std::move(theta0);
    switch (algorithm) {
        case Algorithm::Etd:
            state.aux = EtdTrace{};
            break;
        case Algorithm::Tdc:
            state.aux = TdcWeights{Vector(state.theta.size(), 0.0)};
            break;
        default:
            break;
    }
    return state;
}

double importance_ratio(const Policy& target, const Policy& behavior, int s, int a) {
    if (s < 0 || s >= behavior.num_states() || a < 0 || a >= behavior.num_actions())
        throw std::invalid_argument("importance_ratio: index out of range");
    if (target.num_states() != behavior.num_states() ||
        target.num_actions() != behavior.num_actions())
        throw std::invalid_argument("importance_ratio: policy shapes differ");
    const double mu = behavior.prob(s, a);
    if (!(mu > 0.0))
        throw CoverageError("importance_ratio: behavior policy assigns zero probability to "
                            "sampled action " + std::to_string(a) + " in state " +
                            std::to_string(s));
    return target.prob(s, a) / mu;
}

double perturbed_td_error(const Vector& theta, const TransitionSample& sample,
                          const FeatureMap& features, double gamma, double eta) {
    return sample.reward + gamma * features.dot_row(sample.next_state, theta) -
           (1.0 + eta) * features.dot_row(sample.state, theta);
}

LearnerState step_perturbed_td(LearnerState state, const TransitionSample& sample,
                               const FeatureMap& features, const Policy& target,
                               const Policy& behavior, double gamma, double eta,
                               double alpha) {
    if (eta < 0.0) throw std::invalid_argument("step_perturbed_td: eta must be >= 0");
    check_sample(sample, features, behavior);
    const double rho = importance_ratio(target, behavior, sample.state, sample.action);
    const double delta = perturbed_td_error(state.theta, sample, features, gamma, eta);
    features.add_row_scaled(sample.state, alpha * rho * delta, state.theta);
    return state;
}

LearnerState step_offpolicy_td(LearnerState state, const TransitionSample& sample,
                               const FeatureMap& features, const Policy& target,
                               const Policy& behavior, double gamma, double alpha) {
    return step_perturbed_td(std::move(state), sample, features, target, behavior, gamma,
                             /*eta=*/0.0, alpha);
}

LearnerState step_etd(LearnerState state, const TransitionSample& sample,
                      const FeatureMap& features, const Policy& target,
                      const Policy& behavior, double gamma, double alpha) {
    check_sample(sample, features, behavior);
    auto* trace = std::get_if<EtdTrace>(&state.aux);
    if (trace == nullptr)
        throw std::invalid_argument("step_etd: learner state carries no follow-on trace");
    // thrown before any mutation, so a caller's state survives the failure
    if (!(trace->followon <= kFollowOnCap))
        throw EmphasisOverflowError("step_etd: follow-on trace exceeded 1e100");

    const double rho = importance_ratio(target, behavior, sample.state, sample.action);
    const double followon = trace->followon;  // F_n, already includes rho_{n-1}
    const double delta = perturbed_td_error(state.theta, sample, features, gamma, /*eta=*/0.0);
    features.add_row_scaled(sample.state, alpha * followon * rho * delta, state.theta);
    trace->followon = 1.0 + gamma * rho * followon;  // F_{n+1}
    trace->prev_ratio = rho;
    return state;
}

LearnerState step_tdc(LearnerState state, const TransitionSample& sample,
                      const FeatureMap& features, const Policy& target,
                      const Policy& behavior, double gamma, double alpha, double beta) {
    check_sample(sample, features, behavior);
    auto* weights = std::get_if<TdcWeights>(&state.aux);
    if (weights == nullptr)
        throw std::invalid_argument("step_tdc: learner state carries no secondary weights");

    const double rho = importance_ratio(target, behavior, sample.state, sample.action);
    const double delta = perturbed_td_error(state.theta, sample, features, gamma, /*eta=*/0.0);
    const double correction = features.dot_row(sample.state, weights->w);

    features.add_row_scaled(sample.state, alpha * rho * delta, state.theta);
    features.add_row_scaled(sample.next_state, -alpha * rho * gamma * correction, state.theta);
    features.add_row_scaled(sample.state, beta * rho * (delta - correction), weights->w);
    return state;
}

SampleSystem sample_system(const TransitionSample& sample, const FeatureMap& features,
                           const Policy& target, const Policy& behavior, double gamma,
                           double eta) {
    check_sample(sample, features, behavior);
    const double rho = importance_ratio(target, behavior, sample.state, sample.action);
    const int d = features.dim();
    const Matrix& phi = features.phi();

    SampleSystem out;
    out.a_n = Matrix(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            out.a_n(r, c) = -rho * (gamma * phi(sample.state, r) * phi(sample.next_state, c) -
                                    (1.0 + eta) * phi(sample.state, r) * phi(sample.state, c));
    out.b_n.assign(d, 0.0);
    features.add_row_scaled(sample.state, rho * sample.reward, out.b_n);
    return out;
}

}  // namespace offpol
