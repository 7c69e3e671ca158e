// Timing harness for the parallel kernels against their serial reference.
// Usage: bench_kernels [columns] [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "entroflux/catalog.hpp"
#include "entroflux/entropy.hpp"
#include "entroflux/kernels.hpp"

using namespace entroflux;

namespace {

template <typename F>
double time_ms(int repeats, F&& body) {
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < repeats; ++r) body();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

} // namespace

int main(int argc, char** argv) {
    const int M = argc > 1 ? std::atoi(argv[1]) : 200000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

    CrossDiffusionModel model = make_maxwell_stefan(3.0, 2.0, 1.0);
    EntropyModel em = default_entropy_for(model);

    Eigen::MatrixXd u(2, M);
    for (int k = 0; k < M; ++k) {
        double a = 0.3 + 0.15 * std::sin(0.01 * k);
        u.col(k) << a, 0.6 - a;
    }
    Eigen::MatrixXd w(2, M);
    for (int k = 0; k < M; ++k) w.col(k) = eval_entropy(em, u.col(k)).grad;

    Eigen::MatrixXd out, F;
    double t_inv_s = time_ms(repeats, [&] {
        kernels::invert_columns(em, w, out, kernels::Mode::Serial);
    });
    double t_inv_p = time_ms(repeats, [&] {
        kernels::invert_columns(em, w, out, kernels::Mode::Parallel);
    });
    double t_flux_s = time_ms(repeats, [&] {
        kernels::face_fluxes(model, u, 1.0 / M, F, kernels::Mode::Serial);
    });
    double t_flux_p = time_ms(repeats, [&] {
        kernels::face_fluxes(model, u, 1.0 / M, F, kernels::Mode::Parallel);
    });
    auto sweep = [&](kernels::Mode mode) {
        return kernels::sweep_min(
                   static_cast<std::uint64_t>(M),
                   [&](std::uint64_t k) { return std::cos(1e-3 * k); }, mode)
            .value;
    };
    double t_min_s = time_ms(repeats, [&] { (void)sweep(kernels::Mode::Serial); });
    double t_min_p = time_ms(repeats, [&] { (void)sweep(kernels::Mode::Parallel); });

    std::printf("kernel            serial_ms  parallel_ms  speedup\n");
    std::printf("invert_columns    %9.3f  %11.3f  %6.2fx\n", t_inv_s, t_inv_p,
                t_inv_s / t_inv_p);
    std::printf("face_fluxes       %9.3f  %11.3f  %6.2fx\n", t_flux_s, t_flux_p,
                t_flux_s / t_flux_p);
    std::printf("sweep_min         %9.3f  %11.3f  %6.2fx\n", t_min_s, t_min_p,
                t_min_s / t_min_p);
    return 0;
}
