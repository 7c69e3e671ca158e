#include "entroflux/certify.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "entroflux/catalog.hpp"
#include "entroflux/kernels.hpp"
#include "entroflux/rng.hpp"

namespace entroflux {
namespace {

double min_eig_sym_part(const Eigen::MatrixXd& M) {
    if (M.rows() == 2) {
        double a = M(0, 0), d = M(1, 1), b = 0.5 * (M(0, 1) + M(1, 0));
        return 0.5 * (a + d - std::hypot(a - d, 2.0 * b));
    }
    Eigen::MatrixXd S = 0.5 * (M + M.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double alpha_weight(const H2PrimeTerm& term, double u, double a, double b) {
    double base = term.side == BoundSide::Lower ? u - a : b - u;
    return term.alpha_star * std::pow(base, term.m - 1.0);
}

Eigen::MatrixXd certified_A(const EntropyModel& em, const CrossDiffusionModel& model,
                            const Eigen::VectorXd& u) {
    Eigen::MatrixXd A = model.eval_A(u);
    // the regularized entropy pairs with the regularized diffusion matrix
    if (em.family == EntropyFamily::PopulationPower && em.eps > 0.0) {
        A(0, 0) += em.eps * u[1];
        A(1, 1) += em.eps * u[0];
    }
    return A;
}

struct SampledMin {
    double value;
    Eigen::VectorXd worst;
    long samples;
};

template <typename F>
SampledMin sample_min(const CrossDiffusionModel& model, long n_samples, F per_point) {
    QuasiRandom seq(std::min(model.n + 1, 8));
    auto result = kernels::sweep_min(
        static_cast<std::uint64_t>(n_samples), [&](std::uint64_t k) {
            Eigen::VectorXd u = model.domain.sample(seq, k, kCertifyMargin);
            return per_point(u);
        });
    // recompute the attaining point (cheaper than tracking it in the sweep)
    Eigen::VectorXd worst = model.domain.sample(seq, result.index, kCertifyMargin);
    return {result.value, worst, n_samples};
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

PDReport certify_H2(const EntropyModel& em, const CrossDiffusionModel& model,
                    long n_samples) {
    if (em.n != model.n) throw ConfigError("certify_H2: dimension mismatch");
    PDReport report;
    report.model = model.name;
    report.entropy = em.name();
    report.hypothesis = "H2";
    auto got = sample_min(model, n_samples, [&](const Eigen::VectorXd& u) {
        return min_eig_sym_part(eval_entropy(em, u).hess * certified_A(em, model, u));
    });
    report.samples = got.samples;
    report.min_eig = got.value;
    report.worst_point = got.worst;
    report.bound_residual = got.value;
    if (!model.certification_known) {
        report.verdict = Verdict::Unknown;
        report.note = "entropy analysis open for this model class";
    } else {
        report.verdict = got.value >= -kCertifyTol ? Verdict::Pass : Verdict::Fail;
    }
    return report;
}

PDReport certify_H2prime(const EntropyModel& em, const CrossDiffusionModel& model,
                         const std::optional<std::vector<H2PrimeTerm>>& meta,
                         long n_samples) {
    if (em.n != model.n) throw ConfigError("certify_H2prime: dimension mismatch");
    PDReport report;
    report.model = model.name;
    report.entropy = em.name();
    report.hypothesis = "H2prime";
    const auto& terms = meta ? meta : model.h2prime_meta;
    if (!terms || static_cast<int>(terms->size()) != model.n) {
        report.verdict = Verdict::Unknown;
        report.note = "no H2' parameterization available";
        return report;
    }
    double a = model.domain.lo, b = model.domain.hi;
    double a_star = 0.0;
    auto got = sample_min(model, n_samples, [&](const Eigen::VectorXd& u) {
        Eigen::MatrixXd M = eval_entropy(em, u).hess * certified_A(em, model, u);
        Eigen::MatrixXd A = model.eval_A(u);
        for (int i = 0; i < model.n; ++i) {
            double ai = alpha_weight((*terms)[i], u[i], a, b);
            M(i, i) -= ai * ai;
            if ((*terms)[i].m > 1.0) {
                double quot = A.col(i).cwiseAbs().maxCoeff() / std::abs(ai);
#pragma omp critical
                a_star = std::max(a_star, quot);
            }
        }
        return min_eig_sym_part(M);
    });
    report.samples = got.samples;
    report.bound_residual = got.value;
    report.min_eig = got.value;
    report.worst_point = got.worst;
    report.a_star = a_star;
    if (!model.certification_known) {
        report.verdict = Verdict::Unknown;
        report.note = "entropy analysis open for this model class";
    } else {
        report.verdict = got.value >= -kCertifyTol ? Verdict::Pass : Verdict::Fail;
    }
    return report;
}

double lemma_pd1_residual(const TransitionQ& q, double beta, const Eigen::VectorXd& u,
                          const Eigen::VectorXd& z) {
    if (!(beta >= 1.0))
        throw ConfigError("lemma_pd1_residual: beta >= 1 required (rescale time "
                          "otherwise)");
    for (double y : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
        if (q.q(y) < -1e-14 || q.dq(y) < -1e-12)
            throw ConfigError("lemma_pd1_residual: q must be positive and nondecreasing");
        if (y * q.dq(y) > 2.0 * q.q(y) + 1e-12)
            throw ConfigError("lemma_pd1_residual: y q'(y) <= 2 q(y) violated");
    }
    auto model = make_volume_filling(q, beta);
    auto em = EntropyModel::volume_filling(q);
    double qf = z.dot(eval_entropy(em, u).hess * model.eval_A(u) * z);
    double u3 = 1.0 - u[0] - u[1];
    double qv = q.q(u3), dq = q.dq(u3);
    double zs = z[0] + z[1];
    double bound = qv / u[0] * z[0] * z[0] + qv / u[1] * z[1] * z[1] +
                   dq * dq / qv * zs * zs;
    return qf - bound;
}

double lemma_pd_residual(const std::array<double, 6>& alpha, double s,
                         const Eigen::VectorXd& u, const Eigen::VectorXd& z) {
    auto model = make_power_population(alpha, s);
    auto em = EntropyModel::population_power(alpha[2], alpha[4], s, 1.0, 0.0);
    double qf = z.dot(eval_entropy(em, u).hess * model.eval_A(u) * z);
    auto [a10, a11, a12, a20, a21, a22] = alpha;
    double d_a21 = s * a21 * std::pow(u[0], s - 1.0);
    double d_a12 = s * a12 * std::pow(u[1], s - 1.0);
    double bound = (a10 + a11 * std::pow(u[0], s)) / u[0] * d_a21 * z[0] * z[0] +
                   (a20 + a22 * std::pow(u[1], s)) / u[1] * d_a12 * z[1] * z[1];
    return qf - bound;
}

nlohmann::json report_json(const PDReport& report) {
    nlohmann::json j;
    j["model"] = report.model;
    j["entropy"] = report.entropy;
    j["hypothesis"] = report.hypothesis;
    j["samples"] = report.samples;
    j["min_eig"] = report.min_eig;
    std::vector<double> wp(report.worst_point.data(),
                           report.worst_point.data() + report.worst_point.size());
    j["worst_point"] = wp;
    j["bound_residual"] = report.bound_residual;
    j["a_star"] = report.a_star;
    j["verdict"] = to_string(report.verdict);
    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

} // namespace entroflux
