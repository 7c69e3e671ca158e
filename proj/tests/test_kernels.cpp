#include <cmath>

#include <doctest.h>

#include "entroflux/catalog.hpp"
#include "entroflux/kernels.hpp"
#include "helpers.hpp"

using namespace entroflux;

TEST_CASE("parallel kernels match the serial reference bit for bit") {
    CrossDiffusionModel model = make_maxwell_stefan(3.0, 2.0, 1.0);
    EntropyModel em = default_entropy_for(model);

    const int M = 257;
    Eigen::MatrixXd u(2, M), w(2, M);
    for (int k = 0; k < M; ++k) {
        u.col(k) = testutil::interior_point(model.domain, k, 1e-3);
        w.col(k) = eval_entropy(em, u.col(k)).grad;
    }

    Eigen::MatrixXd us, up;
    kernels::invert_columns(em, w, us, kernels::Mode::Serial);
    kernels::invert_columns(em, w, up, kernels::Mode::Parallel);
    CHECK((us - up).cwiseAbs().maxCoeff() == 0.0);
    CHECK((us - u).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::MatrixXd Fs, Fp;
    kernels::face_fluxes(model, u, 1.0 / M, Fs, kernels::Mode::Serial);
    kernels::face_fluxes(model, u, 1.0 / M, Fp, kernels::Mode::Parallel);
    CHECK((Fs - Fp).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Fs.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Fs.col(M).cwiseAbs().maxCoeff() == 0.0);

    auto f = [](std::uint64_t k) { return std::cos(0.37 * static_cast<double>(k)); };
    kernels::SweepMin ss = kernels::sweep_min(100000, f, kernels::Mode::Serial);
    kernels::SweepMin sp = kernels::sweep_min(100000, f, kernels::Mode::Parallel);
    CHECK(ss.value == sp.value);
    CHECK(ss.index == sp.index);
}

TEST_CASE("sweep_min finds the exact minimizer and breaks ties low") {
    auto f = [](std::uint64_t k) { return k == 41 || k == 977 ? -3.0 : 1.0; };
    for (auto mode : {kernels::Mode::Serial, kernels::Mode::Parallel}) {
        kernels::SweepMin r = kernels::sweep_min(2000, f, mode);
        CHECK(r.value == -3.0);
        CHECK(r.index == 41);
    }
}

TEST_CASE("inversion failures surface as numerical errors") {
    EntropyModel em0 = EntropyModel::population_power(1.0, 1.0, 2.0, 1.0, 0.0);
    Eigen::MatrixXd w(2, 8);
    w.setZero();
    w(0, 5) = -100.0; // below the range of Dh for eps = 0
    Eigen::MatrixXd u;
    CHECK_THROWS_AS(kernels::invert_columns(em0, w, u, kernels::Mode::Serial),
                    NumericalError);
    CHECK_THROWS_AS(kernels::invert_columns(em0, w, u, kernels::Mode::Parallel),
                    NumericalError);
}
