#pragma once

#include "offpol/linalg.hpp"
#include "offpol/linear_arch.hpp"
#include "offpol/mdp.hpp"

namespace offpol {

/// Smallest eigenvalue of A + A^T must exceed this for a positive-definite
/// verdict; values within the band around zero are reported as indeterminate
/// by the CLI but count as false here.
inline constexpr double kPdTolerance = 1e-12;

/// Expected update system of the perturbed off-policy TD iteration:
/// A = Phi^T D_mu ((1+eta) I - gamma P_pi) Phi and b = Phi^T D_mu r_pi,
/// with D_mu the stationary weighting of the behavior chain.
struct ExpectedSystem {
    Matrix a;
    Vector b;
    double eta = 0.0;
    double min_sym_eigenvalue = 0.0;
};

ExpectedSystem expected_system(const Mdp& mdp, const Policy& target, const Policy& behavior,
                               const FeatureMap& features, double eta);

/// True iff the smallest eigenvalue of A + A^T exceeds kPdTolerance.
bool is_positive_definite(const ExpectedSystem& system);

/// Sufficient perturbation for positive definiteness, from the Gershgorin
/// bound on the symmetrized state-space matrix:
///   max( max_i gamma * (d^T P_pi)_i / d_i - 1, 0 )
/// Any eta strictly above this value yields a positive definite A (for
/// full-column-rank features).
double eta_lower_bound(const Mdp& mdp, const Policy& target, const Policy& behavior);

/// Solves A theta* = b. Throws RankError when A is singular.
Vector fixed_point(const ExpectedSystem& system);

/// || Phi theta* - Proj T^eta_pi (Phi theta*) ||_inf, the projected-fixed-point
/// residual. Requires full-column-rank features (the projection must exist).
double fixed_point_consistency(const Mdp& mdp, const Policy& target, const Policy& behavior,
                               const FeatureMap& features, double eta,
                               const Vector& theta_star);

}  // namespace offpol
