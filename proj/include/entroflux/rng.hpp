#pragma once

#include <cmath>
#include <cstdint>

namespace entroflux {

/// Seeded 64-bit generator (splitmix64). Used for all pseudo-random
/// perturbations so runs are reproducible from the config seed alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

private:
    std::uint64_t state_;
};

/// Low-discrepancy point sequence (additive recurrence with the generalized
/// golden ratio). Deterministic, dimension up to 8; good enough for
/// quasi-random coverage of the admissible set in certification sweeps.
class QuasiRandom {
public:
    explicit QuasiRandom(int dim) : dim_(dim > kMaxDim ? kMaxDim : dim) {
        // phi_d is the unique positive root of x^(d+1) = x + 1.
        double phi = 2.0;
        for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim_ + 1));
        double a = 1.0;
        for (int d = 0; d < dim_; ++d) {
            a /= phi;
            alpha_[d] = a;
            x_[d] = 0.5;
        }
    }

    /// Next point, components in (0, 1).
    void next(double* out) {
        for (int d = 0; d < dim_; ++d) {
            x_[d] += alpha_[d];
            x_[d] -= std::floor(x_[d]);
            out[d] = x_[d];
        }
    }

    /// k-th point of the sequence starting from the canonical seed, without
    /// mutating the stream (used by parallel sampling loops).
    void at(std::uint64_t k, double* out) const {
        for (int d = 0; d < dim_; ++d) {
            double v = 0.5 + alpha_[d] * static_cast<double>(k + 1);
            out[d] = v - std::floor(v);
        }
    }

    int dim() const { return dim_; }

private:
    static constexpr int kMaxDim = 8;
    int dim_;
    double alpha_[kMaxDim] = {};
    double x_[kMaxDim] = {};
};

} // namespace entroflux
