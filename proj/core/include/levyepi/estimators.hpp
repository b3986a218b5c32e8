#ifndef LEVYEPI_ESTIMATORS_HPP
#define LEVYEPI_ESTIMATORS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "levyepi/engine.hpp"
#include "levyepi/scenario.hpp"

namespace levyepi {

struct DistSummary {
    double mean = 0.0;
    double median = 0.0;
    double q10 = 0.0, q90 = 0.0;
    double min = 0.0, max = 0.0;
};

DistSummary summarize(std::vector<double> values);

struct PathMetrics {
    double terminal_i = 0.0;
    double terminal_im = 0.0;
    double time_avg_infection = 0.0;
    std::optional<double> lyapunov_rate;  // absent when the log window is empty
    std::size_t clamp_count = 0;
    std::size_t step_count = 0;
    double slln_max_residual = 0.0;
    bool failed = false;
};

struct EnsembleSummary {
    int n_paths = 0;
    int failed_paths = 0;
    DistSummary terminal_infection;  // I(T) + Im(T) across paths
    double mean_time_avg_infection = 0.0;
    double se_time_avg_infection = 0.0;
    double lyapunov_rate = 0.0;  // mean fitted slope over included paths
    int lyapunov_excluded = 0;   // paths dropped because the log was undefined
    double aux_avg_psi = 0.0, aux_avg_psi2 = 0.0;
    double aux_avg_psi_hat = 0.0, aux_avg_psi_hat2 = 0.0;
    double slln_max_residual = 0.0;  // max over paths and monitored terms
    double clamp_rate = 0.0;         // clamped steps / total steps
    std::vector<PathMetrics> per_path;

    std::string to_json(int indent = 2) const;
    void write_per_path_csv(std::ostream& os) const;
};

// Trapezoidal (1/T) * int x(s)^power ds over the recorded grid.
double time_average(std::span<const double> times,
                    std::span<const double> values, int power);
double time_average(const AuxTrajectory& traj, int power);
// component: 0..3 selects a State component, -1 selects I + Im.
double time_average(const Trajectory& traj, int component, int power);

// Least-squares slope of ln(lambda1*I + lambda2*Im) against t over the
// trailing half of the horizon. nullopt when every window point has a
// nonpositive weighted sum.
std::optional<double> extinction_rate(const Trajectory& traj,
                                      const ModelParams& params,
                                      const NoiseParams& noise,
                                      const JumpMeasure& jumps);

struct PersistenceCheck {
    double fraction_positive = 0.0;    // paths with positive time-average
    double fraction_above_bound = 0.0; // paths exceeding the theoretical bound
    double mean_time_avg = 0.0;
};

PersistenceCheck persistence_check(std::span<const double> path_time_averages,
                                   double bound);

// |M(T)/T| per monitored martingale term at the final checkpoint.
std::array<double, 8> slln_terminal_residuals(const Trajectory& traj);

// Runs simulate (and both auxiliary processes) per path with derived seeds
// and aggregates. Parallel over paths; the result is independent of the
// worker count. Worker cap: LEVYEPI_WORKERS, else hardware concurrency.
EnsembleSummary ensemble_run(const Scenario& scenario, int n_paths,
                             std::uint64_t base_seed, const SimConfig& config);

}  // namespace levyepi

#endif
