#pragma once

#include <array>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "entroflux/entropy.hpp"
#include "entroflux/model.hpp"

namespace entroflux {

enum class Verdict { Pass, Fail, Unknown };

std::string to_string(Verdict v);

/// Sampling-based positive-definiteness report. Verdicts are empirical
/// ("pass" means no violation was found at the stated tolerance), never a
/// proof; "unknown" marks model/hypothesis pairs outside the analyzed class.
struct PDReport {
    std::string model, entropy, hypothesis;
    long samples = 0;
    double min_eig = 0.0;
    Eigen::VectorXd worst_point;
    double bound_residual = 0.0; // min residual of the H2' lower bound
    double a_star = 0.0;         // fitted H2'' constant (0 when vacuous)
    Verdict verdict = Verdict::Unknown;
    std::string note;
};

/// Tolerance absorbing roundoff near the boundary, and the sampling margin.
inline constexpr double kCertifyTol = 1e-10;
inline constexpr double kCertifyMargin = 1e-4;

/// Minimum eigenvalue of sym(D^2h(u) A(u)) over quasi-random interior
/// samples. For the regularized power family (eps > 0) the matching
/// regularized diffusion matrix A + eps diag(u2, u1) is certified.
PDReport certify_H2(const EntropyModel& em, const CrossDiffusionModel& model,
                    long n_samples);

/// Residual of the lower bound z^T D^2h A z >= sum alpha_i(u_i)^2 z_i^2
/// (minimum eigenvalue of the difference matrix over samples), plus the
/// fitted H2'' constant a*. Uses model.h2prime_meta when meta is empty;
/// verdict "unknown" when no metadata exists.
PDReport certify_H2prime(const EntropyModel& em, const CrossDiffusionModel& model,
                         const std::optional<std::vector<H2PrimeTerm>>& meta,
                         long n_samples);

/// z^T D^2h A z minus the displayed volume-filling lower bound
/// q(u3)/u1 z1^2 + q(u3)/u2 z2^2 + q'(u3)^2/q(u3) (z1+z2)^2.
/// Requires q positive and nondecreasing with y q'(y) <= 2 q(y) and beta >= 1
/// (smaller beta is removed by rescaling time); violations throw ConfigError.
double lemma_pd1_residual(const TransitionQ& q, double beta,
                          const Eigen::VectorXd& u, const Eigen::VectorXd& z);

/// z^T D^2h A z minus the power-family lower bound
/// (a10 + a11 u1^s)/u1 a21'(u1) z1^2 + (a20 + a22 u2^s)/u2 a12'(u2) z2^2
/// for the unregularized entropy (eps = 0).
double lemma_pd_residual(const std::array<double, 6>& alpha, double s,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& z);

nlohmann::json report_json(const PDReport& report);

} // namespace entroflux
