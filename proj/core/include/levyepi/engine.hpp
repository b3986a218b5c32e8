#ifndef LEVYEPI_ENGINE_HPP
#define LEVYEPI_ENGINE_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "levyepi/model.hpp"

namespace levyepi {

enum class PositivityPolicy { ClampToZero, Reject };

struct SimConfig {
    double dt = 1e-3;       // base step (day)
    double t_end = 200.0;   // horizon (day)
    std::uint64_t seed = 1;
    int record_stride = 1;  // store every k-th grid point
    PositivityPolicy positivity = PositivityPolicy::ClampToZero;
    bool saturated = false;  // saturated human incidence variant

    void check() const;
};

// Thrown under PositivityPolicy::Reject when a step drives a component
// negative.
struct NegativityError : std::runtime_error {
    double time;
    int component;
    NegativityError(double t, int c);
};

struct JumpEvent {
    double t;
    std::size_t atom;
    State pre;  // left limit just before the jump is applied
};

// Samples of M(t)/t at geometric checkpoints for the eight monitored local
// martingales: the diffusion integrals int sigma_i x_i dB_i (i=1..4) then
// the compensated jump integrals int int xi_i x_i dN~ (i=1..4).
struct MartingaleSample {
    double t;
    std::array<double, 8> m_over_t;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    std::vector<JumpEvent> jump_events;
    std::size_t clamp_count = 0;
    std::size_t step_count = 0;
    std::uint64_t brownian_digest = 0;  // checksum of consumed increments
    std::vector<MartingaleSample> diagnostics;
};

struct AuxTrajectory {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> jump_times;
    std::size_t clamp_count = 0;
    std::size_t step_count = 0;
    std::uint64_t brownian_digest = 0;
};

// Euler-Maruyama over the fixed grid with exact compound-Poisson jump events
// applied at their exact times by splitting the enclosing step. The result is
// a deterministic function of (config.seed, path_index, all inputs).
Trajectory simulate(const ModelParams& params, const NoiseParams& noise,
                    const JumpMeasure& jumps, const SimConfig& config,
                    const State& init, std::uint64_t path_index = 0);

// Scalar auxiliary process d(psi) = (recruitment - death*psi)dt
// + sigma*psi dB + compensated jumps with the xi row of component
// xi_component. brownian_b3 selects the B3 stream (mosquito analogue);
// otherwise B1 is used, which makes the process couple pathwise with S.
AuxTrajectory simulate_aux(double recruitment, double death, double sigma,
                           const JumpMeasure& jumps, int xi_component,
                           const SimConfig& config, double init,
                           std::uint64_t path_index = 0,
                           bool brownian_b3 = false);

struct CoupledResult {
    Trajectory main;
    AuxTrajectory psi;      // dominates S
    AuxTrajectory psi_hat;  // dominates S_m
};

// Runs the main system and both auxiliary processes on identical (B1, B3)
// increments and an identical jump event stream. Initial values are forced
// to psi(0) = S(0), psi_hat(0) = S_m(0).
CoupledResult simulate_coupled(const ModelParams& params,
                               const NoiseParams& noise,
                               const JumpMeasure& jumps,
                               const SimConfig& config, const State& init,
                               std::uint64_t path_index = 0);

// EM on a caller-supplied table of per-step Brownian increments, no jumps.
// Used by convergence tests that need refinement coupling on a fixed path.
State simulate_given_increments(
    const ModelParams& params, const NoiseParams& noise,
    const SimConfig& config, const State& init,
    const std::vector<std::array<double, 4>>& increments);

// CSV with header t,S,I,S_m,I_m.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
// CSV with header t,atom,S_pre,I_pre,S_m_pre,I_m_pre.
void write_jump_events_csv(std::ostream& os, const Trajectory& traj);

}  // namespace levyepi

#endif
