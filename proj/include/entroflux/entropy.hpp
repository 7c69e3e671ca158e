#pragma once

#include <Eigen/Dense>

#include "entroflux/domain.hpp"
#include "entroflux/model.hpp"

namespace entroflux {

enum class EntropyFamily {
    Logarithmic,     // simplex mixtures, h = sum u_i(log u_i - 1) + u_0(log u_0 - 1)
    VolumeFilling,   // simplex with arrival probability q, h = sum u_i(log u_i - 1) + int_c^{u_3} log q
    SKTLog,          // positive orthant, h = u_1/a12 (log u_1 - 1) + u_2/a21 (log u_2 - 1)
    PopulationPower, // positive orthant, double integral of s a_ji y^{s-2}, plus eps log terms
};

/// Entropy density h with analytic gradient, Hessian, and inverse gradient.
/// The integration constant c only shifts h by constants/affine terms; eps is
/// the logarithmic regularization weight of the power family (eps > 0 makes
/// the range of Dh all of R^2).
struct EntropyModel {
    EntropyFamily family = EntropyFamily::Logarithmic;
    int n = 2;
    double c = 0.5;
    double eps = 0.0;
    TransitionQ q;               // VolumeFilling only
    double a12 = 1.0, a21 = 1.0; // SKTLog / PopulationPower coefficients
    double s = 2.0;              // PopulationPower exponent, 1 < s < 4

    static EntropyModel logarithmic(int n);
    static EntropyModel volume_filling(TransitionQ q, double c = 0.5);
    static EntropyModel skt_log(double a12, double a21);
    static EntropyModel population_power(double a12, double a21, double s,
                                         double c = 1.0, double eps = 1e-2);

    StateDomain domain() const;
    std::string name() const;
};

struct EntropyEval {
    double h = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;
};

/// h, Dh, D^2h at a strictly interior point (throws DomainError otherwise).
EntropyEval eval_entropy(const EntropyModel& em, const Eigen::VectorXd& u);

/// Entropy density alone; tolerates boundary states via 0 log 0 := 0.
double entropy_density(const EntropyModel& em, const Eigen::VectorXd& u);

/// u = (Dh)^{-1}(w); always strictly interior to the admissible set.
/// Throws NumericalError when the scalar root-finder cannot converge or w is
/// outside the range of Dh (power family with eps = 0).
Eigen::VectorXd invert_grad(const EntropyModel& em, const Eigen::VectorXd& w);

/// The entropy family each catalog model is analyzed with. `eps_override`
/// replaces the default regularization weight of the power family.
EntropyModel default_entropy_for(const CrossDiffusionModel& model,
                                 std::optional<double> eps_override = std::nullopt);

} // namespace entroflux
