#pragma once

#include <cstdint>
#include <variant>

#include "offpol/errors.hpp"
#include "offpol/linalg.hpp"
#include "offpol/linear_arch.hpp"
#include "offpol/mdp.hpp"

namespace offpol {

enum class Algorithm { OffPolicyTd, PerturbedTd, Etd, Tdc };

/// One behavior-policy transition (s_n, a_n, r_n, s_{n+1}).
struct TransitionSample {
    int state = 0;
    int action = 0;
    double reward = 0.0;
    int next_state = 0;
};

/// Step-size sequence alpha_n. Polynomial decay alpha0/(n+1)^exponent with
/// exponent in (0.5, 1] satisfies the usual square-summability conditions;
/// constant steps are supported for reproducing fixed-step experiments.
struct StepSchedule {
    enum class Kind { Constant, Polynomial };

    Kind kind = Kind::Constant;
    double alpha0 = 0.01;
    double exponent = 1.0;

    static StepSchedule constant(double alpha0);
    static StepSchedule polynomial(double alpha0, double exponent);

    double at(std::int64_t n) const;
};

/// Follow-on trace state for ETD(0). `followon` is the F_n the next update
/// will apply (recursion F_{n+1} = 1 + gamma rho_n F_n already folds in the
/// previous ratio); `prev_ratio` records rho_{n-1}. Stream-start convention:
/// F_0 = 1, rho_{-1} = 1.
struct EtdTrace {
    double followon = 1.0;
    double prev_ratio = 1.0;
};

/// Secondary weight vector for TDC, initialized to zero.
struct TdcWeights {
    Vector w;
};

/// Overflow guard on the ETD follow-on trace.
inline constexpr double kFollowOnCap = 1e100;

/// The follow-on trace exceeded kFollowOnCap; the run should be flagged
/// diverged and truncated.
class EmphasisOverflowError : public NumericError {
public:
    using NumericError::NumericError;
};

/// Value-type learner state: the weight vector plus the aux state of the one
/// algorithm that declares it.
struct LearnerState {
    Vector theta;
    std::variant<std::monostate, EtdTrace, TdcWeights> aux;
};

LearnerState make_learner_state(Algorithm algorithm, Vector theta0);

/// pi(s,a) / mu(s,a). Throws CoverageError when mu(s,a) = 0.
double importance_ratio(const Policy& target, const Policy& behavior, int s, int a);

/// r + gamma phi(s')^T theta - (1+eta) phi(s)^T theta. eta = 0 gives the
/// standard TD error; all steppers share this definition.
double perturbed_td_error(const Vector& theta, const TransitionSample& sample,
                          const FeatureMap& features, double gamma, double eta);

LearnerState step_perturbed_td(LearnerState state, const TransitionSample& sample,
                               const FeatureMap& features, const Policy& target,
                               const Policy& behavior, double gamma, double eta, double alpha);

LearnerState step_offpolicy_td(LearnerState state, const TransitionSample& sample,
                               const FeatureMap& features, const Policy& target,
                               const Policy& behavior, double gamma, double alpha);

LearnerState step_etd(LearnerState state, const TransitionSample& sample,
                      const FeatureMap& features, const Policy& target,
                      const Policy& behavior, double gamma, double alpha);

LearnerState step_tdc(LearnerState state, const TransitionSample& sample,
                      const FeatureMap& features, const Policy& target,
                      const Policy& behavior, double gamma, double alpha, double beta);

/// Per-sample update system of the perturbed iteration, written as
/// theta' = theta + alpha (b_n - A_n theta):
///   A_n = -rho ( gamma phi(s) phi(s')^T - (1+eta) phi(s) phi(s)^T ),
///   b_n = rho r phi(s).
struct SampleSystem {
    Matrix a_n;
    Vector b_n;
};

SampleSystem sample_system(const TransitionSample& sample, const FeatureMap& features,
                           const Policy& target, const Policy& behavior, double gamma,
                           double eta);

}  // namespace offpol
