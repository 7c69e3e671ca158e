#include "entroflux/lattice.hpp"

#include <cmath>

#include "entroflux/errors.hpp"

namespace entroflux {

TransitionModel transition_volume_filling(TransitionQ q, double beta) {
    TransitionModel tm;
    auto one = [](double, double) { return 1.0; };
    auto zero = [](double, double) { return 0.0; };
    tm.p1 = one;
    tm.p2 = one;
    tm.d1p1 = zero;
    tm.d2p1 = zero;
    tm.d1p2 = zero;
    tm.d2p2 = zero;
    tm.q1 = [q](double y) { return q.q(y); };
    tm.dq1 = [q](double y) { return q.dq(y); };
    tm.q2 = [q, beta](double y) { return beta * q.q(y); };
    tm.dq2 = [q, beta](double y) { return beta * q.dq(y); };
    tm.volume_filling = true;
    return tm;
}

TransitionModel transition_population(const std::array<double, 6>& alpha, double s) {
    auto [a10, a11, a12, a20, a21, a22] = alpha;
    TransitionModel tm;
    auto pw = [s](double x) { return std::pow(std::max(x, 0.0), s); };
    auto dpw = [s](double x) { return s * std::pow(std::max(x, 0.0), s - 1.0); };
    tm.p1 = [=](double u1, double u2) { return a10 + a11 * pw(u1) + a12 * pw(u2); };
    tm.p2 = [=](double u1, double u2) { return a20 + a21 * pw(u1) + a22 * pw(u2); };
    tm.d1p1 = [=](double u1, double) { return a11 * dpw(u1); };
    tm.d2p1 = [=](double, double u2) { return a12 * dpw(u2); };
    tm.d1p2 = [=](double u1, double) { return a21 * dpw(u1); };
    tm.d2p2 = [=](double, double u2) { return a22 * dpw(u2); };
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    tm.q1 = one;
    tm.q2 = one;
    tm.dq1 = zero;
    tm.dq2 = zero;
    tm.volume_filling = false;
    return tm;
}

Eigen::MatrixXd lattice_rhs(const LatticeSystem& sys) {
    const int N = sys.N;
    const auto& u = sys.state;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2, N);
    auto q_at = [&](int k, int species) {
        double free_vol = 1.0 - u(0, k) - u(1, k);
        return species == 0 ? sys.transition.q1(free_vol) : sys.transition.q2(free_vol);
    };
    auto p_at = [&](int k, int species) {
        return species == 0 ? sys.transition.p1(u(0, k), u(1, k))
                            : sys.transition.p2(u(0, k), u(1, k));
    };
    for (int i = 0; i < 2; ++i) {
        for (int k = 0; k < N; ++k) {
            double gain = 0.0, loss = 0.0;
            if (k > 0) {
                gain += p_at(k - 1, i) * q_at(k, i) * u(i, k - 1);
                loss += p_at(k, i) * q_at(k - 1, i) * u(i, k);
            }
            if (k + 1 < N) {
                gain += p_at(k + 1, i) * q_at(k, i) * u(i, k + 1);
                loss += p_at(k, i) * q_at(k + 1, i) * u(i, k);
            }
            rhs(i, k) = sys.sigma0() * (gain - loss);
        }
    }
    return rhs;
}

Eigen::Matrix2d macroscopic_matrix(const TransitionModel& tm, const Eigen::Vector2d& u) {
    double y = 1.0 - u[0] - u[1];
    double q1 = tm.q1(y), q2 = tm.q2(y), dq1 = tm.dq1(y), dq2 = tm.dq2(y);
    double p1 = tm.p1(u[0], u[1]), p2 = tm.p2(u[0], u[1]);
    Eigen::Matrix2d A;
    A(0, 0) = p1 * q1 + u[0] * (tm.d1p1(u[0], u[1]) * q1 + p1 * dq1);
    A(0, 1) = u[0] * (tm.d2p1(u[0], u[1]) * q1 + p1 * dq1);
    A(1, 0) = u[1] * (tm.d1p2(u[0], u[1]) * q2 + p2 * dq2);
    A(1, 1) = p2 * q2 + u[1] * (tm.d2p2(u[0], u[1]) * q2 + p2 * dq2);
    return A;
}

std::vector<LatticeSnapshot> integrate_lattice(LatticeSystem& sys, double T, double dt,
                                               int stride) {
    if (T < 0.0 || dt <= 0.0 || stride < 1)
        throw ConfigError("integrate_lattice: need T >= 0, dt > 0, stride >= 1");
    std::vector<LatticeSnapshot> out;
    out.push_back({0.0, sys.state});
    if (T == 0.0) return out;

    auto ok_state = [&](const Eigen::MatrixXd& s) {
        for (int k = 0; k < sys.N; ++k) {
            if (s(0, k) < -1e-14 || s(1, k) < -1e-14) return false;
            if (sys.transition.volume_filling && s(0, k) + s(1, k) > 1.0 + 1e-14)
                return false;
        }
        return true;
    };
    auto rk4 = [&](const Eigen::MatrixXd& s, double h) {
        LatticeSystem tmp = sys;
        tmp.state = s;
        Eigen::MatrixXd k1 = lattice_rhs(tmp);
        tmp.state = s + 0.5 * h * k1;
        Eigen::MatrixXd k2 = lattice_rhs(tmp);
        tmp.state = s + 0.5 * h * k2;
        Eigen::MatrixXd k3 = lattice_rhs(tmp);
        tmp.state = s + h * k3;
        Eigen::MatrixXd k4 = lattice_rhs(tmp);
        return (s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).eval();
    };

    // explicit stability clamp: fastest per-cell exit rate bounds the spectrum
    double max_rate = 1.0;
    {
        LatticeSystem tmp = sys;
        Eigen::MatrixXd r = lattice_rhs(tmp).cwiseAbs();
        double denom = std::max(sys.state.cwiseAbs().maxCoeff(), 1e-12);
        max_rate = std::max(r.maxCoeff() / denom, 4.0 * sys.sigma0());
    }
    dt = std::min(dt, 0.25 / max_rate);

    double t = 0.0;
    long accepted = 0;
    while (t < T - 1e-15) {
        double h = std::min(dt, T - t);
        Eigen::MatrixXd next = rk4(sys.state, h);
        int retries = 0;
        while ((!next.allFinite() || !ok_state(next)) && retries < 20) {
            h *= 0.5;
            next = rk4(sys.state, h);
            ++retries;
        }
        if (!next.allFinite() || !ok_state(next))
            throw NumericalError("integrate_lattice: persistent bound violation");
        sys.state = next;
        t += h;
        ++accepted;
        if (accepted % stride == 0 || t >= T - 1e-15) out.push_back({t, sys.state});
    }
    return out;
}

} // namespace entroflux
