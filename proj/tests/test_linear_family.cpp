#include <cmath>

#include <doctest.h>

#include "entroflux/catalog.hpp"
#include "entroflux/linear_family.hpp"
#include "helpers.hpp"

using namespace entroflux;

namespace {

Eigen::Matrix2d log_hessian(double u1, double u2) {
    double u3 = 1.0 - u1 - u2;
    Eigen::Matrix2d H;
    H << 1.0 / u1 + 1.0 / u3, 1.0 / u3, 1.0 / u3, 1.0 / u2 + 1.0 / u3;
    return H;
}

LinearFamilyParams random_params(SplitMix64& rng) {
    LinearFamilyParams p;
    p.alpha11 = rng.uniform(-3.0, 3.0);
    p.alpha22 = rng.uniform(-3.0, 3.0);
    p.beta11 = rng.uniform(-3.0, 3.0);
    p.beta12 = rng.uniform(-3.0, 3.0);
    p.gamma22 = rng.uniform(-3.0, 3.0);
    return p;
}

} // namespace

TEST_CASE("reconstruction hits the known families") {
    // (1, beta, 0, 1, 0): the two-species ion-transport family
    for (double beta : {0.5, 1.0, 2.0}) {
        LinearCoeffs c = reconstruct_A({1.0, beta, 0.0, 1.0, 0.0});
        CrossDiffusionModel ion = make_burger_ion({1.0, beta});
        for (int k = 0; k < 50; ++k) {
            Eigen::VectorXd u = testutil::interior_point(StateDomain::simplex(2), k,
                                                         1e-3);
            CHECK((c.A(u.head<2>()) - ion.eval_A(u)).cwiseAbs().maxCoeff() <= 1e-13);
        }
    }

    // (1, 1, -1, -1, -1): the aggregation matrix
    LinearCoeffs ks = reconstruct_A({1.0, 1.0, -1.0, -1.0, -1.0});
    CrossDiffusionModel ksm = make_keller_segel_like();
    for (int k = 0; k < 50; ++k) {
        Eigen::VectorXd u = testutil::interior_point(StateDomain::simplex(2), k, 1e-3);
        CHECK((ks.A(u.head<2>()) - ksm.eval_A(u)).cwiseAbs().maxCoeff() <= 1e-14);
    }

    // (1, 1, 1, 1, c22) has the displayed closed form
    for (double c22 : {0.0, 1.0, 5.0}) {
        LinearCoeffs c = reconstruct_A({1.0, 1.0, 1.0, 1.0, c22});
        Eigen::Vector2d u(0.3, 0.25);
        Eigen::Matrix2d expected;
        expected << 1.0 + u[0] + (c22 - 1.0) * u[1], u[0], u[1], 1.0 + c22 * u[1];
        CHECK((c.A(u) - expected).cwiseAbs().maxCoeff() <= 1e-14);
    }
}

TEST_CASE("mobility matrix is symmetric by construction") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        LinearCoeffs c = reconstruct_A(random_params(rng));
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd u = testutil::interior_point(StateDomain::simplex(2),
                                                         20 * trial + k, 1e-2);
            Eigen::Matrix2d B =
                c.A(u.head<2>()) * log_hessian(u[0], u[1]).inverse();
            CHECK(std::abs(B(0, 1) - B(1, 0)) <= 1e-12 * (1.0 + B.cwiseAbs().maxCoeff()));
        }
    }
}

TEST_CASE("polynomial numerators match the direct product") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        LinearFamilyParams p = random_params(rng);
        LinearCoeffs coeffs = reconstruct_A(p);
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd u = testutil::interior_point(StateDomain::simplex(2),
                                                         31 * trial + k, 1e-2);
            double u1 = u[0], u2 = u[1], u3 = 1.0 - u1 - u2;
            Eigen::Matrix2d c = log_hessian(u1, u2) * coeffs.A(u.head<2>());
            double c11 = c11_numerator(p, u1, u2) / (u1 * u3);
            double detc = detc_numerator(p, u1, u2) / (u1 * u2 * u3);
            CHECK(std::abs(c11 - c(0, 0)) <= 1e-10 * (1.0 + std::abs(c(0, 0))));
            double det_direct = c.determinant();
            CHECK(std::abs(detc - det_direct) <=
                  1e-10 * (1.0 + std::abs(det_direct)));
        }
    }
}

TEST_CASE("feasibility of the documented families") {
    CHECK(feasibility_scan({1.0, 2.0, 0.0, 1.0, 0.0}, 64).feasible);
    CHECK(feasibility_scan({1.0, 1.0, -1.0, -1.0, -1.0}, 64).feasible);
    CHECK(feasibility_scan({1.0, 1.0, 1.0, 1.0, 1.0}, 64).feasible);

    // frozen violator found by randomized search in [-3,3]^5
    FeasibilityResult bad =
        feasibility_scan({-0.528, 2.451, 2.817, 2.489, -0.534}, 64);
    CHECK(!bad.feasible);
    CHECK(bad.worst_value < -1e-6);
}

TEST_CASE("scan verdicts agree with the eigenvalue oracle") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        LinearFamilyParams p = random_params(rng);
        bool scan = feasibility_scan(p, 64).feasible;
        bool oracle = eigenvalue_oracle(p, 1000);
        CAPTURE(trial);
        CHECK(scan == oracle);
    }
}
