#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "entroflux/domain.hpp"

namespace entroflux {

/// Which boundary of (a,b) the H2' weight alpha_i(u_i) is anchored to.
enum class BoundSide { Lower, Upper };

/// One species' entry of the H2' lower bound
/// z^T D2h A z >= sum_i alpha_i(u_i)^2 z_i^2,
/// alpha_i(u_i) = alpha_star * (u_i - a)^(m-1)  (Lower)
///              = alpha_star * (b - u_i)^(m-1)  (Upper).
struct H2PrimeTerm {
    double alpha_star = 0.0;
    double m = 1.0;
    BoundSide side = BoundSide::Lower;
};

/// Arrival-probability function q with analytic derivative; `power` marks the
/// built-in family q(y) = y^s for which the entropy integral has closed form.
struct TransitionQ {
    std::function<double(double)> q;
    std::function<double(double)> dq;
    std::optional<double> power;

    static TransitionQ power_family(double s) {
        return {[s](double y) { return std::pow(y, s); },
                [s](double y) { return s * std::pow(y, s - 1.0); },
                s};
    }
    static TransitionQ one() {
        return {[](double) { return 1.0; }, [](double) { return 0.0; }, std::nullopt};
    }
};

/// A concrete cross-diffusion system: diffusion matrix, reactions, admissible
/// set, and certification metadata. Immutable after construction; evaluators
/// are pure and thread-safe.
struct CrossDiffusionModel {
    std::string name;
    int n = 2;
    StateDomain domain;
    std::map<std::string, double> params;

    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> eval_A;
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> eval_f; // zero by default

    /// Closed-form z^T D2h(u) A(u) z when the pairing with the default
    /// entropy admits one (used by the identity tests); empty otherwise.
    std::function<double(const Eigen::VectorXd& u, const Eigen::VectorXd& z)> quadratic_form;

    std::optional<std::vector<H2PrimeTerm>> h2prime_meta;
    std::optional<double> h3_constant;

    /// Arrival-probability function for volume-filling models; shared with
    /// the matching entropy density.
    std::optional<TransitionQ> transition_q;

    /// Hypothesis certification is meaningful only where the paper's analysis
    /// applies; models outside it (e.g. Burger with distinct diffusivities,
    /// n > 2) report "unknown" instead of pass/fail.
    bool certification_known = true;

    /// Warnings produced at construction (sufficient conditions violated).
    std::vector<std::string> warnings;

    Eigen::VectorXd reactions(const Eigen::VectorXd& u) const {
        if (eval_f) return eval_f(u);
        return Eigen::VectorXd::Zero(n);
    }
};

/// Lattice transition model: departure propensities p_j(u1, u2) with analytic
/// partials, and arrival probabilities q_j(y) with analytic derivative,
/// y = 1 - u1 - u2.
struct TransitionModel {
    std::function<double(double, double)> p1, p2;
    std::function<double(double, double)> d1p1, d2p1, d1p2, d2p2;
    std::function<double(double)> q1, q2;
    std::function<double(double)> dq1, dq2;
    bool volume_filling = false; // q_j(0) = 0 and q_j nondecreasing required
};

} // namespace entroflux
