#pragma once

#include <cstdint>

#include <Eigen/Dense>

namespace entroflux {

/// Linear-coefficient diffusion matrices a_ij(u) = alpha_ij + beta_ij u1 +
/// gamma_ij u2 on the simplex, restricted to the five free parameters left
/// after requiring A (D^2h)^{-1} to be symmetric for the logarithmic entropy.
struct LinearFamilyParams {
    double alpha11 = 0.0, alpha22 = 0.0, beta11 = 0.0, beta12 = 0.0, gamma22 = 0.0;
};

/// Full 12-coefficient table reconstructed through the fixed relations
/// alpha12 = alpha21 = gamma12 = beta21 = 0, gamma21 = beta12 + alpha22 -
/// alpha11, beta22 = beta11 - gamma21, gamma11 = gamma22 - beta12.
struct LinearCoeffs {
    Eigen::Matrix2d alpha, beta, gamma;

    Eigen::Matrix2d A(const Eigen::Vector2d& u) const {
        return alpha + beta * u[0] + gamma * u[1];
    }
};

LinearCoeffs reconstruct_A(const LinearFamilyParams& p);

/// Polynomial numerators of c11 and det(c), c = (D^2h) A, with the positive
/// singular prefactors 1/(u1 u3) and 1/(u1 u2 u3) dropped (only signs matter).
double c11_numerator(const LinearFamilyParams& p, double u1, double u2);
double detc_numerator(const LinearFamilyParams& p, double u1, double u2);

struct FeasibilityResult {
    bool feasible = true;
    Eigen::Vector2d worst_u = Eigen::Vector2d::Zero();
    int which = 0; // 1 = c11, 2 = det(c)
    double worst_value = 0.0;
    long points = 0;
};

/// Entropy compatibility over a triangular grid (margin 1e-4) plus a
/// near-boundary band at margin 1e-6; feasible iff both numerators stay
/// >= -1e-12. Sampling-based: the verdict is "feasible (sampled)".
FeasibilityResult feasibility_scan(const LinearFamilyParams& p, int grid_resolution);

/// Independent check: minimum eigenvalue of sym(D^2h A) at n quasi-random
/// interior points (used to cross-validate scan verdicts).
bool eigenvalue_oracle(const LinearFamilyParams& p, long n_points,
                       double* min_eig_out = nullptr);

} // namespace entroflux
