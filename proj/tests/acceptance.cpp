// Acceptance gate: one behavioral criterion per line, PASS or FAIL, nonzero
// exit when anything fails. Each check works at ensemble scale, so the whole
// binary takes a few minutes.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "levyepi/engine.hpp"
#include "levyepi/estimators.hpp"
#include "levyepi/scenario.hpp"
#include "levyepi/thresholds.hpp"
#include "levyepi/verify.hpp"
#include "ode_reference.hpp"

using namespace levyepi;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok,
            const std::string& detail = {}) {
    std::cout << "criterion " << index << " [" << name << "]: "
              << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void criterion_1_closed_forms_extinction() {
    VerifyReport rep = verify_tables(preset("table1-extinction"));
    bool ok = rep.all_passed();
    std::string detail;
    for (const auto& c : rep.checks)
        if (!c.passed && !c.discrepancy) detail += c.name + " ";
    report(1, "closed forms, extinction preset", ok, detail);
}

void criterion_2_closed_forms_persistence() {
    VerifyReport rep = verify_tables(preset("table1-persistence"));
    bool ok = rep.all_passed();
    std::string detail;
    for (const auto& c : rep.checks)
        if (!c.passed && !c.discrepancy) detail += c.name + " ";
    report(2, "closed forms, persistence preset", ok, detail);
}

void criterion_3_aux_time_averages() {
    VerifyReport rep = verify_lemma2(preset("table1-extinction"), 100, 500.0);
    std::string detail;
    for (const auto& c : rep.checks)
        detail += c.name + "=" + fmt(c.computed) + " ";
    report(3, "auxiliary time-average limits", rep.all_passed(), detail);
}

void criterion_4_extinction_ensemble() {
    Scenario sc = preset("table1-extinction");
    SimConfig cfg = sc.sim;
    cfg.t_end = 200.0;
    cfg.record_stride = 100;
    EnsembleSummary sum = ensemble_run(sc, 100, 2024, cfg);
    double kappa_formula =
        classify(sc.model, sc.noise, sc.jumps, sc.p).kappa;
    bool median_ok = sum.terminal_infection.median < 1e-3;
    bool slope_ok = sum.lyapunov_excluded < sum.n_paths &&
                    sum.lyapunov_rate <= kappa_formula + 0.05;
    report(4, "extinction ensemble behavior", median_ok && slope_ok,
           "median terminal=" + fmt(sum.terminal_infection.median) +
               " mean slope=" + fmt(sum.lyapunov_rate) +
               " threshold=" + fmt(kappa_formula));
}

void criterion_5_persistence_ensemble() {
    Scenario sc = preset("table1-persistence");
    SimConfig cfg = sc.sim;
    cfg.t_end = 500.0;
    cfg.record_stride = 100;
    EnsembleSummary sum = ensemble_run(sc, 100, 2024, cfg);
    std::vector<double> averages;
    for (const auto& m : sum.per_path)
        if (!m.failed) averages.push_back(m.time_avg_infection);
    double bound =
        persistence_weights_and_bound(sc.model, sc.noise, sc.jumps).bound;
    PersistenceCheck pc = persistence_check(averages, bound);
    bool ok = averages.size() == 100 && pc.fraction_positive == 1.0 &&
              pc.mean_time_avg > bound;
    report(5, "persistence ensemble behavior", ok,
           "positive fraction=" + fmt(pc.fraction_positive) +
               " mean avg=" + fmt(pc.mean_time_avg) + " bound=" + fmt(bound));
}

void criterion_6_pathwise_domination() {
    VerifyReport rep = verify_comparison(preset("table1-extinction"), 100, 100.0);
    std::string detail =
        rep.checks.empty() ? "" : rep.checks.front().note;
    report(6, "pathwise domination by the auxiliary processes",
           rep.all_passed(), detail);
}

void criterion_7_deterministic_oracle() {
    // noiseless reduction against a 4th-order reference
    Scenario sc = preset("table1-extinction");
    sc.noise = NoiseParams{};
    sc.jumps.atoms.clear();
    SimConfig cfg = sc.sim;
    cfg.dt = 1e-3;
    cfg.t_end = 50.0;
    cfg.record_stride = 100;
    Trajectory traj = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init);
    auto ref = levyepi_tests::rk4_path(sc.model, sc.init, cfg.dt, 50000);
    double max_err = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        std::size_t idx =
            static_cast<std::size_t>(std::llround(traj.times[k] / cfg.dt));
        for (int i = 0; i < 4; ++i)
            max_err =
                std::max(max_err, std::abs(traj.states[k][i] - ref[idx][i]));
    }

    // supercritical noiseless run settles at the closed-form equilibrium
    Scenario pc = preset("table1-persistence");
    pc.noise = NoiseParams{};
    pc.jumps.atoms.clear();
    auto eq = endemic_equilibrium(pc.model);
    bool eq_ok = eq.has_value();
    double rel_err = 1.0, residual = 1.0;
    if (eq_ok) {
        JumpMeasure none;
        auto d = drift(*eq, pc.model, none, false);
        residual = 0.0;
        for (int i = 0; i < 4; ++i) residual = std::max(residual, std::abs(d[i]));
        SimConfig pcfg = pc.sim;
        pcfg.t_end = 200.0;
        pcfg.record_stride = 1000;
        Trajectory long_run =
            simulate(pc.model, pc.noise, pc.jumps, pcfg, pc.init);
        const State& last = long_run.states.back();
        rel_err = 0.0;
        for (int i = 0; i < 4; ++i)
            rel_err = std::max(rel_err,
                               std::abs(last[i] - (*eq)[i]) / (*eq)[i]);
    }
    bool ok = max_err < 1e-3 && eq_ok && rel_err < 0.02 && residual < 1e-10;
    report(7, "deterministic reduction oracle", ok,
           "ode max err=" + fmt(max_err) + " eq rel err=" + fmt(rel_err) +
               " fixed-point residual=" + fmt(residual));
}

void criterion_8_martingale_decay() {
    VerifyReport rep = verify_slln(preset("table1-extinction"), 100, 500.0);
    std::string detail;
    for (const auto& c : rep.checks)
        if (!c.passed) detail += c.name + "=" + fmt(c.computed) + " ";
    report(8, "martingale decay diagnostics", rep.all_passed(), detail);
}

void criterion_9_determinism() {
    Scenario sc = preset("table1-extinction");
    SimConfig cfg = sc.sim;
    cfg.t_end = 20.0;
    Trajectory a = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init, 11);
    Trajectory b = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init, 11);
    bool traj_ok = a.brownian_digest == b.brownian_digest &&
                   a.states.size() == b.states.size();
    for (std::size_t k = 0; traj_ok && k < a.states.size(); ++k)
        for (int i = 0; i < 4; ++i)
            if (a.states[k][i] != b.states[k][i]) traj_ok = false;

    cfg.record_stride = 10;
    setenv("LEVYEPI_WORKERS", "1", 1);
    std::string serial = ensemble_run(sc, 16, 5, cfg).to_json();
    setenv("LEVYEPI_WORKERS", "7", 1);
    std::string parallel = ensemble_run(sc, 16, 5, cfg).to_json();
    unsetenv("LEVYEPI_WORKERS");
    std::string repeat = ensemble_run(sc, 16, 5, cfg).to_json();
    bool ens_ok = serial == parallel && serial == repeat;
    report(9, "determinism and parallel soundness", traj_ok && ens_ok);
}

}  // namespace

int main() {
    criterion_1_closed_forms_extinction();
    criterion_2_closed_forms_persistence();
    criterion_3_aux_time_averages();
    criterion_4_extinction_ensemble();
    criterion_5_persistence_ensemble();
    criterion_6_pathwise_domination();
    criterion_7_deterministic_oracle();
    criterion_8_martingale_decay();
    criterion_9_determinism();
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all acceptance criteria passed" << std::endl;
    return 0;
}
