#include "entroflux/kernels.hpp"

#include <omp.h>

namespace entroflux::kernels {

Mode& default_mode() {
    static Mode mode = Mode::Parallel;
    return mode;
}

void invert_columns(const EntropyModel& em, const Eigen::MatrixXd& w, Eigen::MatrixXd& u,
                    Mode mode) {
    const int M = static_cast<int>(w.cols());
    u.resize(w.rows(), M);
    // exceptions must not escape the parallel region; capture the first one
    bool failed = false;
    std::string message;
#pragma omp parallel for schedule(static) if (mode == Mode::Parallel)
    for (int k = 0; k < M; ++k) {
        try {
            u.col(k) = invert_grad(em, w.col(k));
        } catch (const std::exception& e) {
#pragma omp critical
            {
                failed = true;
                message = e.what();
            }
        }
    }
    if (failed) throw NumericalError("invert_columns: " + message);
}

void face_fluxes(const CrossDiffusionModel& model, const Eigen::MatrixXd& u, double dx,
                 Eigen::MatrixXd& F, Mode mode) {
    const int M = static_cast<int>(u.cols());
    F.resize(u.rows(), M + 1);
    F.col(0).setZero();
    F.col(M).setZero();
#pragma omp parallel for schedule(static) if (mode == Mode::Parallel)
    for (int k = 1; k < M; ++k) {
        Eigen::VectorXd ubar = 0.5 * (u.col(k - 1) + u.col(k));
        F.col(k) = -(model.eval_A(ubar) * (u.col(k) - u.col(k - 1))) / dx;
    }
}

SweepMin sweep_min(std::uint64_t count, const std::function<double(std::uint64_t)>& f,
                   Mode mode) {
    SweepMin best;
    if (mode == Mode::Serial) {
        for (std::uint64_t k = 0; k < count; ++k) {
            double v = f(k);
            if (v < best.value || (v == best.value && k < best.index)) best = {v, k};
        }
        return best;
    }
#pragma omp parallel
    {
        SweepMin local;
#pragma omp for schedule(static) nowait
        for (long long k = 0; k < static_cast<long long>(count); ++k) {
            double v = f(static_cast<std::uint64_t>(k));
            std::uint64_t ku = static_cast<std::uint64_t>(k);
            if (v < local.value || (v == local.value && ku < local.index)) local = {v, ku};
        }
#pragma omp critical
        {
            // exact min with index tie-break: result independent of threads
            if (local.value < best.value ||
                (local.value == best.value && local.index < best.index))
                best = local;
        }
    }
    return best;
}

} // namespace entroflux::kernels
