// Acceptance gate: each criterion prints exactly one pass/fail line.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "entroflux/catalog.hpp"
#include "entroflux/certify.hpp"
#include "entroflux/config.hpp"
#include "entroflux/diagnostics.hpp"
#include "entroflux/jobs.hpp"
#include "entroflux/lattice.hpp"
#include "entroflux/linear_family.hpp"
#include "entroflux/solver.hpp"
#include "helpers.hpp"

using namespace entroflux;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Check {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Eigen::VectorXd vec2(double a, double b) {
    Eigen::VectorXd v(2);
    v << a, b;
    return v;
}

// --- 1. round-trip inversion ------------------------------------------------

Check criterion_round_trip() {
    Check c;
    std::vector<EntropyModel> families = {
        EntropyModel::logarithmic(2),
        EntropyModel::volume_filling(TransitionQ::power_family(1.0)),
        EntropyModel::volume_filling(TransitionQ::power_family(2.0)),
        EntropyModel::skt_log(1.0, 1.0),
        EntropyModel::population_power(1.0, 1.0, 2.0, 1.0, 1e-2),
    };
    for (const EntropyModel& em : families) {
        StateDomain dom = em.domain();
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Eigen::VectorXd u = testutil::interior_point(dom, k, 1e-3);
            Eigen::VectorXd back = invert_grad(em, eval_entropy(em, u).grad);
            worst = std::max(worst, (back - u).cwiseAbs().maxCoeff());
        }
        c.require(worst <= 1e-10,
                  em.name() + " round-trip error " + std::to_string(worst));
    }
    return c;
}

// --- 2. quadratic-form identities -------------------------------------------

Check criterion_quadratic_forms() {
    Check c;
    std::vector<CrossDiffusionModel> models;
    models.push_back(make_maxwell_stefan(3.0, 2.0, 1.0));
    models.push_back(make_tumor());
    models.push_back(make_skt({1, 2, 1, 1, 1, 2}));
    models.push_back(make_electron_hole(2.0, 0.5));
    models.push_back(make_burger_ion({1.0, 2.0}));
    for (const auto& m : models) {
        EntropyModel em = default_entropy_for(m);
        QuasiRandom seq(4);
        double x[8], worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            seq.next(x);
            Eigen::VectorXd u = testutil::interior_point(m.domain, 3 * k + 1, 1e-3);
            Eigen::VectorXd z = vec2(2.0 * x[2] - 1.0, 2.0 * x[3] - 1.0);
            double direct = z.dot(eval_entropy(em, u).hess * m.eval_A(u) * z);
            worst = std::max(worst, std::abs(direct - m.quadratic_form(u, z)));
        }
        c.require(worst <= 1e-10, m.name + " identity error " + std::to_string(worst));
    }
    return c;
}

// --- 3. lemma bounds --------------------------------------------------------

Check criterion_lemma_bounds() {
    Check c;
    StateDomain simplex = StateDomain::simplex(2);
    StateDomain orthant = StateDomain::positive_orthant(2);
    QuasiRandom seq(4);
    double x[8];
    for (double s : {1.0, 2.0}) {
        TransitionQ q = TransitionQ::power_family(s);
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            seq.next(x);
            Eigen::VectorXd u = testutil::interior_point(simplex, 5 * k + 2, 1e-3);
            Eigen::VectorXd z = vec2(2.0 * x[2] - 1.0, 2.0 * x[3] - 1.0);
            worst = std::min(worst, lemma_pd1_residual(q, 1.0, u, z));
        }
        c.require(worst >= -1e-12, "q power " + std::to_string(s) +
                                       " residual " + std::to_string(worst));
    }
    {
        std::array<double, 6> ones = {1, 1, 1, 1, 1, 1};
        double worst = 0.0;
        for (int k = 0; k < 10000; ++k) {
            seq.next(x);
            Eigen::VectorXd u = testutil::interior_point(orthant, 9 * k + 4, 1e-3);
            Eigen::VectorXd z = vec2(2.0 * x[2] - 1.0, 2.0 * x[3] - 1.0);
            worst = std::min(worst, lemma_pd_residual(ones, 2.0, u, z));
        }
        c.require(worst >= -1e-12, "power-family residual " + std::to_string(worst));
    }
    // expected failure: linear arrival probability degenerates at full packing
    CrossDiffusionModel vf = make_volume_filling(TransitionQ::power_family(1.0), 1.0);
    PDReport r = certify_H2prime(default_entropy_for(vf), vf, std::nullopt, 5000);
    c.require(r.verdict == Verdict::Fail,
              "degenerate fixture verdict " + to_string(r.verdict));
    return c;
}

// --- 4. bound preservation --------------------------------------------------

Check criterion_bound_preservation() {
    Check c;
    for (double s : {1.0, 2.0, 3.0}) {
        for (double beta : {0.5, 2.0}) {
            CrossDiffusionModel model =
                make_volume_filling(TransitionQ::power_family(s), beta);
            EntropyModel em = default_entropy_for(model);
            Grid1D grid(128, 1.0);
            StateField field(grid, 2);
            for (int k = 0; k < grid.M; ++k) {
                bool left = grid.x(k) < 0.5;
                field.values(0, k) = left ? 0.899 : 0.05;
                field.values(1, k) = left ? 0.1 : 0.05;
            }
            SolverConfig cfg;
            cfg.tau = 1e-3;
            int clamps = 0;
            double min_margin = 1.0;
            StepStats last =
                run(model, em, field, 0.5, cfg,
                    [&](int, double, const StateField& f, const StepStats& st) {
                        clamps += st.clamping_events;
                        for (int k = 0; k < f.grid.M; ++k)
                            min_margin = std::min(
                                min_margin,
                                model.domain.interior_margin(f.values.col(k)));
                    });
            std::string tag = "s=" + std::to_string(s) + " beta=" + std::to_string(beta);
            c.require(last.ok, tag + ": run failed (" + last.error + ")");
            c.require(clamps == 0, tag + ": clamping events " + std::to_string(clamps));
            c.require(min_margin > 0.0,
                      tag + ": margin " + std::to_string(min_margin));
        }
    }
    return c;
}

// --- 5. conservation and entropy monotonicity -------------------------------

Check criterion_conservation_monotonicity() {
    Check c;
    for (const CrossDiffusionModel& model : reference_catalog()) {
        EntropyModel em = default_entropy_for(model);
        Grid1D grid(128, 1.0);
        StateField field(grid, model.n);
        for (int k = 0; k < grid.M; ++k) {
            double x = grid.x(k);
            for (int i = 0; i < model.n; ++i) {
                double base = model.domain.kind == DomainKind::Simplex
                                  ? 0.8 / model.n
                                  : 0.5;
                double amp = model.domain.kind == DomainKind::Simplex ? 0.1 / model.n
                                                                      : 0.2;
                field.values(i, k) =
                    base + amp * std::sin(2.0 * kPi * x + 0.7 * (i + 1));
            }
        }
        SolverConfig cfg;
        cfg.tau = 1e-3;
        Eigen::VectorXd m0 = field.masses();
        double H_prev = entropy_functional(em, field);
        double worst_drift = 0.0, worst_jump = -1.0;
        StepStats last = run(model, em, field, 0.5, cfg,
                             [&](int, double, const StateField& f, const StepStats&) {
                                 Eigen::VectorXd m = f.masses();
                                 for (int i = 0; i < model.n; ++i)
                                     worst_drift = std::max(
                                         worst_drift,
                                         std::abs(m[i] - m0[i]) / std::abs(m0[i]));
                                 double H = entropy_functional(em, f);
                                 worst_jump = std::max(worst_jump, H - H_prev);
                                 H_prev = H;
                             });
        c.require(last.ok, model.name + ": run failed (" + last.error + ")");
        c.require(worst_drift <= 1e-12,
                  model.name + ": mass drift " + std::to_string(worst_drift));
        c.require(worst_jump <= 1e-8,
                  model.name + ": entropy jump " + std::to_string(worst_jump));
    }
    return c;
}

// --- 6. heat-equation reduction order ---------------------------------------

Check criterion_heat_order() {
    Check c;
    CrossDiffusionModel model = make_maxwell_stefan(1.0, 1.0, 1.0);
    EntropyModel em = default_entropy_for(model);
    const double T = 0.01;
    std::vector<double> errs, hs;
    for (int M : {32, 64, 128, 256}) {
        Grid1D grid(M, 1.0);
        StateField field(grid, 2);
        auto cos_avg = [&](int k) {
            double xl = k * grid.dx(), xr = (k + 1) * grid.dx();
            return (std::sin(kPi * xr) - std::sin(kPi * xl)) / (kPi * grid.dx());
        };
        for (int k = 0; k < M; ++k) {
            double cm = cos_avg(k);
            field.values(0, k) = 0.3 + 0.1 * cm;
            field.values(1, k) = 0.3 - 0.1 * cm;
        }
        SolverConfig cfg;
        cfg.tau = 0.4 * grid.dx() * grid.dx();
        StepStats last = run(model, em, field, T, cfg);
        c.require(last.ok, "M=" + std::to_string(M) + " failed");
        int n_steps = static_cast<int>(std::ceil(T / cfg.tau - 1e-12));
        double decay = std::exp(-kPi * kPi * n_steps * cfg.tau);
        double l2 = 0.0;
        for (int k = 0; k < M; ++k) {
            double exact = 0.3 + 0.1 * decay * cos_avg(k);
            double d = field.values(0, k) - exact;
            l2 += d * d * grid.dx();
        }
        errs.push_back(std::sqrt(l2));
        hs.push_back(grid.dx());
    }
    // least-squares slope of log err vs log h
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < errs.size(); ++i) {
        double lx = std::log(hs[i]), ly = std::log(errs[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double n = static_cast<double>(errs.size());
    double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    c.require(std::abs(order - 2.0) <= 0.2,
              "observed order " + std::to_string(order));
    return c;
}

// --- 7. diffusive limit -----------------------------------------------------

Check criterion_diffusive_limit() {
    Check c;
    CrossDiffusionModel model = make_volume_filling(TransitionQ::power_family(1.0), 1.0);
    EntropyModel em = default_entropy_for(model);
    const double T = 0.05;

    auto gaussian_ic = [&](int M) {
        Grid1D grid(M, 1.0);
        StateField f(grid, 2);
        for (int k = 0; k < M; ++k) {
            double arg = (grid.x(k) - 0.5) / 0.1;
            double bump = std::exp(-0.5 * arg * arg);
            f.values(0, k) = 0.3 + 0.2 * bump;
            f.values(1, k) = 0.2 + 0.1 * bump;
        }
        return f;
    };

    // PDE reference, computed once on the fine grid
    StateField ref = gaussian_ic(256);
    SolverConfig cfg;
    cfg.tau = 1e-5;
    StepStats last = run(model, em, ref, T, cfg);
    c.require(last.ok, "reference run failed");

    std::vector<double> errs;
    for (int N : {32, 64, 128}) {
        TransitionModel tm =
            transition_volume_filling(TransitionQ::power_family(1.0), 1.0);
        LatticeSystem sys;
        sys.N = N;
        sys.h = 1.0 / N;
        sys.transition = tm;
        sys.state = gaussian_ic(N).values;
        integrate_lattice(sys, T, 0.25 * sys.h * sys.h, 1 << 20);
        int ratio = 256 / N;
        double l2 = 0.0;
        for (int k = 0; k < N; ++k) {
            Eigen::Vector2d avg = Eigen::Vector2d::Zero();
            for (int j = 0; j < ratio; ++j) avg += ref.values.col(k * ratio + j).head<2>();
            avg /= ratio;
            l2 += (sys.state.col(k).head<2>() - avg).squaredNorm() / N;
        }
        errs.push_back(std::sqrt(l2));
    }
    c.require(errs[0] > errs[1] && errs[1] > errs[2],
              "errors not strictly decreasing: " + std::to_string(errs[0]) + ", " +
                  std::to_string(errs[1]) + ", " + std::to_string(errs[2]));
    double order = std::log2(errs[0] / errs[2]) / 2.0;
    c.require(order >= 1.5, "empirical order " + std::to_string(order));
    return c;
}

// --- 8. exponential decay ---------------------------------------------------

Check criterion_decay() {
    Check c;
    std::vector<CrossDiffusionModel> models;
    models.push_back(make_maxwell_stefan(3.0, 2.0, 1.0));
    models.push_back(make_tumor());
    const double T = 0.5;
    for (const auto& model : models) {
        EntropyModel em = default_entropy_for(model);
        Grid1D grid(64, 1.0);
        StateField field(grid, 2);
        SplitMix64 rng(42);
        for (int k = 0; k < grid.M; ++k)
            for (int i = 0; i < 2; ++i)
                field.values(i, k) = 0.3 + 0.05 * rng.uniform(-1.0, 1.0);
        Eigen::VectorXd u_inf = steady_state(field);
        SolverConfig cfg;
        cfg.tau = 1e-3;
        std::vector<std::pair<double, double>> series = {
            {0.0, relative_entropy(field, u_inf)}};
        double prev = series[0].second;
        double worst_rise = -1.0;
        StepStats last = run(model, em, field, T, cfg,
                             [&](int, double t, const StateField& f, const StepStats&) {
                                 double hs = relative_entropy(f, u_inf);
                                 worst_rise = std::max(worst_rise, hs - prev);
                                 prev = hs;
                                 series.push_back({t, hs});
                             });
        c.require(last.ok, model.name + ": run failed");
        c.require(worst_rise <= 1e-12,
                  model.name + ": H* rise " + std::to_string(worst_rise));
        DecayFit fit = fit_decay(series, T / 2.0, T);
        c.require(fit.lambda > 0.0, model.name + ": lambda " + std::to_string(fit.lambda));
        c.require(fit.r_squared >= 0.99,
                  model.name + ": r^2 " + std::to_string(fit.r_squared));
    }
    return c;
}

// --- 9. linear-coefficient feasibility --------------------------------------

Check criterion_feasibility() {
    Check c;
    for (double beta : {0.5, 1.0, 2.0})
        c.require(feasibility_scan({1.0, beta, 0.0, 1.0, 0.0}, 128).feasible,
                  "family (i) beta=" + std::to_string(beta));
    c.require(feasibility_scan({1.0, 1.0, -1.0, -1.0, -1.0}, 128).feasible,
              "family (ii)");
    for (double c22 : {0.0, 1.0, 5.0})
        c.require(feasibility_scan({1.0, 1.0, 1.0, 1.0, c22}, 128).feasible,
                  "family (1,1,1,1,c22) c22=" + std::to_string(c22));

    SplitMix64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        LinearFamilyParams p;
        p.alpha11 = rng.uniform(-3.0, 3.0);
        p.alpha22 = rng.uniform(-3.0, 3.0);
        p.beta11 = rng.uniform(-3.0, 3.0);
        p.beta12 = rng.uniform(-3.0, 3.0);
        p.gamma22 = rng.uniform(-3.0, 3.0);
        bool scan = feasibility_scan(p, 128).feasible;
        bool oracle = eigenvalue_oracle(p, 1000);
        c.require(scan == oracle,
                  "scan/oracle disagreement at trial " + std::to_string(trial));
    }
    c.require(!feasibility_scan({-0.528, 2.451, 2.817, 2.489, -0.534}, 128).feasible,
              "frozen infeasible fixture not detected");
    return c;
}

// --- 10. CLI determinism ----------------------------------------------------

Check criterion_determinism() {
    Check c;
    std::string dir = testutil::scratch_dir("acceptance_cli");
    std::string config = R"({
  "job": "simulate",
  "model": {"name": "maxwell_stefan", "params": {"d0": 3, "d1": 2, "d2": 1}},
  "grid": {"M": 64, "L": 1.0},
  "time": {"T": 0.02, "tau": 1e-3},
  "ic": {"kind": "perturbed_constant", "values": [0.3, 0.3],
         "amplitude": [0.05, 0.05], "seed": 42},
  "output": {"dir": "unused"}
})";
    testutil::write_file(dir + "/run.json", config);
    int rc1 = testutil::run_cli("simulate --config " + dir + "/run.json --out " + dir +
                                "/a --seed 42");
    int rc2 = testutil::run_cli("simulate --config " + dir + "/run.json --out " + dir +
                                "/b --seed 42");
    c.require(rc1 == 0 && rc2 == 0, "CLI exit codes " + std::to_string(rc1) + "/" +
                                        std::to_string(rc2));
    for (const char* f :
         {"/snapshots.csv", "/steps.csv", "/diagnostics.csv", "/manifest.json"}) {
        std::string a = testutil::read_file(dir + "/a" + f);
        std::string b = testutil::read_file(dir + "/b" + f);
        c.require(!a.empty() && a == b, std::string("output differs: ") + f);
    }
    return c;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Check()> fn;
    };
    std::vector<Criterion> criteria = {
        {"entropy-variable round trip (1e3 states, 1e-10)", criterion_round_trip},
        {"quadratic-form identities (1e4 pairs, 1e-10)", criterion_quadratic_forms},
        {"pointwise lower bounds (1e4 samples, -1e-12)", criterion_lemma_bounds},
        {"simplex bounds preserved without clamping", criterion_bound_preservation},
        {"mass conservation and entropy monotonicity", criterion_conservation_monotonicity},
        {"heat-equation reduction order 2.0 +/- 0.2", criterion_heat_order},
        {"lattice diffusive limit, order >= 1.5", criterion_diffusive_limit},
        {"exponential relaxation fit, r^2 >= 0.99", criterion_decay},
        {"linear-coefficient feasibility scans", criterion_feasibility},
        {"byte-identical CLI reruns", criterion_determinism},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = criteria[i].fn();
        } catch (const std::exception& e) {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        std::printf("[%s] criterion %2zu: %s (%.1fs)%s%s\n", c.ok ? "PASS" : "FAIL",
                    i + 1, criteria[i].name, secs, c.ok ? "" : " — ",
                    c.ok ? "" : c.detail.c_str());
        std::fflush(stdout);
        failures += c.ok ? 0 : 1;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
