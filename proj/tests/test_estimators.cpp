#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <doctest.h>

#include "levyepi/estimators.hpp"
#include "levyepi/scenario.hpp"
#include "levyepi/thresholds.hpp"

using namespace levyepi;

namespace {

Scenario extinction() { return preset("table1-extinction"); }

Trajectory synthetic_decay(const double rate, double scale, double t_end,
                           double dt) {
    Trajectory traj;
    for (double t = 0.0; t <= t_end + 1e-12; t += dt) {
        traj.times.push_back(t);
        double v = scale * std::exp(rate * t);
        traj.states.push_back({0.5, v, 0.5, v});
    }
    return traj;
}

}  // namespace

TEST_CASE("time average of simple paths") {
    std::vector<double> times, values;
    for (int k = 0; k <= 1000; ++k) {
        times.push_back(k / 1000.0);
        values.push_back(3.5);
    }
    CHECK(time_average(times, values, 1) == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(time_average(times, values, 2) ==
          doctest::Approx(3.5 * 3.5).epsilon(1e-12));

    for (int k = 0; k <= 1000; ++k) values[k] = times[k];  // linear ramp
    CHECK(time_average(times, values, 1) == doctest::Approx(0.5).epsilon(1e-5));

    // the average of any path lies inside its range
    for (int k = 0; k <= 1000; ++k) values[k] = std::sin(7.0 * times[k]) + 2.0;
    double avg = time_average(times, values, 1);
    CHECK(avg >= 1.0);
    CHECK(avg <= 3.0);

    CHECK_THROWS_AS(time_average(std::vector<double>{0.0},
                                 std::vector<double>{1.0}, 1),
                    std::invalid_argument);
}

TEST_CASE("fitted decay rate recovers an exact exponential") {
    Scenario sc = extinction();
    Trajectory traj = synthetic_decay(-0.3, 1.0, 100.0, 0.01);
    auto rate = extinction_rate(traj, sc.model, sc.noise, sc.jumps);
    REQUIRE(rate.has_value());
    CHECK(*rate == doctest::Approx(-0.3).epsilon(1e-6));

    // invariance under positive scaling of the weighted sum
    Trajectory scaled = synthetic_decay(-0.3, 10.0, 100.0, 0.01);
    auto rate10 = extinction_rate(scaled, sc.model, sc.noise, sc.jumps);
    REQUIRE(rate10.has_value());
    CHECK(*rate10 == doctest::Approx(*rate).epsilon(1e-9));

    Trajectory flat = synthetic_decay(0.0, 0.7, 100.0, 0.01);
    auto zero = extinction_rate(flat, sc.model, sc.noise, sc.jumps);
    REQUIRE(zero.has_value());
    CHECK(*zero == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("fitted decay rate is absent when the path hits the floor") {
    Scenario sc = extinction();
    Trajectory traj;
    for (double t = 0.0; t <= 10.0; t += 0.1) {
        traj.times.push_back(t);
        traj.states.push_back({0.5, 0.0, 0.5, 0.0});
    }
    CHECK(!extinction_rate(traj, sc.model, sc.noise, sc.jumps).has_value());
}

TEST_CASE("persistence fractions") {
    std::vector<double> averages{0.5, 0.6, 0.2, 0.9};
    PersistenceCheck pc = persistence_check(averages, 0.4);
    CHECK(pc.fraction_positive == doctest::Approx(1.0));
    CHECK(pc.fraction_above_bound == doctest::Approx(0.75));
    CHECK(pc.mean_time_avg == doctest::Approx(0.55));

    std::vector<double> zeros{0.0, 0.0};
    PersistenceCheck zc = persistence_check(zeros, 0.1);
    CHECK(zc.fraction_positive == doctest::Approx(0.0));
    CHECK(zc.fraction_above_bound == doctest::Approx(0.0));
}

TEST_CASE("martingale residuals vanish without noise") {
    Scenario sc = extinction();
    sc.noise = NoiseParams{};
    sc.jumps.atoms.clear();
    SimConfig cfg = sc.sim;
    cfg.t_end = 10.0;
    Trajectory traj = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init);
    auto res = slln_terminal_residuals(traj);
    for (double r : res) CHECK(r == 0.0);
}

TEST_CASE("median martingale residual shrinks with the horizon") {
    Scenario sc = extinction();
    SimConfig cfg = sc.sim;
    cfg.dt = 1e-2;
    cfg.t_end = 80.0;
    cfg.record_stride = 100;
    const int n_paths = 30;
    std::vector<double> at_quarter, at_full;
    for (int p = 0; p < n_paths; ++p) {
        Trajectory traj = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init,
                                   static_cast<std::uint64_t>(p));
        REQUIRE(traj.diagnostics.size() == 5);
        double q = 0.0, f = 0.0;
        for (int i = 0; i < 8; ++i) {
            q = std::max(q, std::abs(traj.diagnostics[2].m_over_t[i]));
            f = std::max(f, std::abs(traj.diagnostics[4].m_over_t[i]));
        }
        at_quarter.push_back(q);
        at_full.push_back(f);
    }
    std::sort(at_quarter.begin(), at_quarter.end());
    std::sort(at_full.begin(), at_full.end());
    CHECK(at_full[n_paths / 2] < at_quarter[n_paths / 2]);
}

TEST_CASE("single-path ensemble equals the path statistics") {
    Scenario sc = extinction();
    SimConfig cfg = sc.sim;
    cfg.t_end = 20.0;
    cfg.record_stride = 10;
    EnsembleSummary sum = ensemble_run(sc, 1, 42, cfg);
    REQUIRE(sum.n_paths == 1);
    REQUIRE(sum.failed_paths == 0);

    cfg.seed = 42;
    Trajectory traj = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init, 0);
    CHECK(sum.terminal_infection.mean ==
          doctest::Approx(traj.states.back().i + traj.states.back().i_m));
    CHECK(sum.mean_time_avg_infection ==
          doctest::Approx(time_average(traj, -1, 1)));
}

TEST_CASE("ensemble runs are reproducible and worker-count invariant") {
    Scenario sc = extinction();
    SimConfig cfg = sc.sim;
    cfg.t_end = 10.0;
    cfg.record_stride = 10;

    setenv("LEVYEPI_WORKERS", "1", 1);
    EnsembleSummary serial = ensemble_run(sc, 12, 7, cfg);
    EnsembleSummary again = ensemble_run(sc, 12, 7, cfg);
    CHECK(serial.to_json() == again.to_json());

    setenv("LEVYEPI_WORKERS", "4", 1);
    EnsembleSummary parallel = ensemble_run(sc, 12, 7, cfg);
    unsetenv("LEVYEPI_WORKERS");
    CHECK(serial.to_json() == parallel.to_json());

    EnsembleSummary other_seed = ensemble_run(sc, 12, 8, cfg);
    CHECK(serial.to_json() != other_seed.to_json());
}

TEST_CASE("deterministic endemic scenario links estimators to the equilibrium") {
    Scenario sc = preset("table1-persistence");
    sc.noise = NoiseParams{};
    sc.jumps.atoms.clear();
    auto eq = endemic_equilibrium(sc.model);
    REQUIRE(eq.has_value());
    SimConfig cfg = sc.sim;
    cfg.t_end = 500.0;
    cfg.record_stride = 100;
    Trajectory traj = simulate(sc.model, sc.noise, sc.jumps, cfg, sc.init, 0);
    double avg = time_average(traj, -1, 1);
    double target = eq->i + eq->i_m;
    CHECK(std::abs(avg - target) / target < 0.02);
}

TEST_CASE("per-path csv carries the documented header") {
    Scenario sc = extinction();
    SimConfig cfg = sc.sim;
    cfg.t_end = 5.0;
    cfg.record_stride = 10;
    EnsembleSummary sum = ensemble_run(sc, 3, 1, cfg);
    std::ostringstream os;
    sum.write_per_path_csv(os);
    CHECK(os.str().rfind(
              "path,terminal_I,terminal_Im,time_avg_infection,lyapunov_rate,"
              "clamped\n",
              0) == 0);
}

TEST_CASE("distribution summary quantiles are monotone") {
    DistSummary s = summarize({5.0, 1.0, 3.0, 2.0, 4.0});
    CHECK(s.min <= s.q10);
    CHECK(s.q10 <= s.median);
    CHECK(s.median <= s.q90);
    CHECK(s.q90 <= s.max);
    CHECK(s.mean == doctest::Approx(3.0));
    CHECK(s.median == doctest::Approx(3.0));
}
