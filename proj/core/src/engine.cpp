#include "levyepi/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <string>

#include "levyepi/rng.hpp"

namespace levyepi {

void SimConfig::check() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end must be > 0");
    if (!(dt <= t_end)) throw std::invalid_argument("SimConfig: dt must be <= t_end");
    if (record_stride < 1)
        throw std::invalid_argument("SimConfig: record_stride must be >= 1");
}

NegativityError::NegativityError(double t, int c)
    : std::runtime_error("negative state at t=" + std::to_string(t) +
                         ", component " + std::to_string(c)),
      time(t),
      component(c) {}

namespace {

struct RawJump {
    double t;
    std::size_t atom;
};

// Exact marked Poisson process on [0, t_end]: exponential interarrivals at
// total rate nu(U), atom chosen proportionally to mass.
std::vector<RawJump> generate_jumps(const JumpMeasure& jumps,
                                    const SimConfig& config,
                                    std::uint64_t path_index) {
    std::vector<RawJump> events;
    double rate = jumps.total_mass();
    if (rate <= 0.0) return events;
    RngStream times(config.seed, path_index, StreamRole::JumpTimes);
    RngStream marks(config.seed, path_index, StreamRole::JumpMarks);
    double t = times.exponential(rate);
    while (t < config.t_end) {
        double u = marks.uniform01() * rate;
        std::size_t atom = 0;
        for (; atom + 1 < jumps.atoms.size(); ++atom) {
            u -= jumps.atoms[atom].mass;
            if (u <= 0.0) break;
        }
        events.push_back({t, atom});
        t += times.exponential(rate);
    }
    return events;
}

std::uint64_t fnv1a_accumulate(std::uint64_t h, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    for (int i = 0; i < 8; ++i) {
        h ^= (bits >> (8 * i)) & 0xffULL;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::size_t grid_steps(const SimConfig& config) {
    return static_cast<std::size_t>(std::ceil(config.t_end / config.dt - 1e-9));
}

std::array<double, 5> checkpoints(double t_end) {
    return {t_end / 16.0, t_end / 8.0, t_end / 4.0, t_end / 2.0, t_end};
}

}  // namespace

Trajectory simulate(const ModelParams& params, const NoiseParams& noise,
                    const JumpMeasure& jumps, const SimConfig& config,
                    const State& init, std::uint64_t path_index) {
    params.check();
    noise.check();
    jumps.check();
    config.check();
    if (!init.nonnegative())
        throw std::invalid_argument("simulate: init must be componentwise >= 0");

    auto events = generate_jumps(jumps, config, path_index);
    std::size_t next_event = 0;

    RngStream streams[4] = {
        RngStream(config.seed, path_index, StreamRole::B1),
        RngStream(config.seed, path_index, StreamRole::B2),
        RngStream(config.seed, path_index, StreamRole::B3),
        RngStream(config.seed, path_index, StreamRole::B4),
    };

    std::array<double, 4> comp{};  // int xi_i dnu per component
    for (int i = 0; i < 4; ++i)
        comp[i] = jumps.integrate(i, [](double x) { return x; });

    Trajectory traj;
    std::size_t n = grid_steps(config);
    traj.times.reserve(n / config.record_stride + 2);
    traj.states.reserve(n / config.record_stride + 2);
    traj.times.push_back(0.0);
    traj.states.push_back(init);

    State x = init;
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    std::array<double, 8> mart{};  // 4 Brownian + 4 compensated jump terms
    auto cps = checkpoints(config.t_end);
    std::size_t next_cp = 0;

    for (std::size_t k = 0; k < n; ++k) {
        double t0 = static_cast<double>(k) * config.dt;
        double t1 = std::min(static_cast<double>(k + 1) * config.dt, config.t_end);
        double a = t0;
        while (a < t1) {
            bool jump_here =
                next_event < events.size() && events[next_event].t <= t1;
            double b = jump_here ? events[next_event].t : t1;
            double h = b - a;
            if (h > 0.0) {
                double sqrt_h = std::sqrt(h);
                std::array<double, 4> db;
                for (int i = 0; i < 4; ++i) {
                    db[i] = streams[i].gaussian() * sqrt_h;
                    digest = fnv1a_accumulate(digest, db[i]);
                }
                auto d = drift(x, params, jumps, config.saturated);
                auto g = diffusion(x, noise);
                for (int i = 0; i < 4; ++i) {
                    // the SDE's own martingale parts: the diffusion integral
                    // (sigma-scaled, so it vanishes in the noiseless limit)
                    // and the compensator half of the jump integral
                    mart[i] += noise.sigma[i] * x[i] * db[i];
                    mart[4 + i] -= x[i] * comp[i] * h;
                }
                for (int i = 0; i < 4; ++i) x[i] += d[i] * h + g[i] * db[i];
                for (int i = 0; i < 4; ++i) {
                    if (x[i] < 0.0) {
                        if (config.positivity == PositivityPolicy::Reject)
                            throw NegativityError(b, i);
                        x[i] = 0.0;
                        ++traj.clamp_count;
                    }
                }
                ++traj.step_count;
            }
            if (jump_here) {
                const auto& atom = jumps.atoms[events[next_event].atom];
                traj.jump_events.push_back({b, events[next_event].atom, x});
                for (int i = 0; i < 4; ++i) {
                    mart[4 + i] += x[i] * atom.xi[i];
                    x[i] *= 1.0 + atom.xi[i];
                }
                ++next_event;
            }
            a = b;
        }
        bool last = (k + 1 == n);
        if (last || (k + 1) % static_cast<std::size_t>(config.record_stride) == 0) {
            traj.times.push_back(t1);
            traj.states.push_back(x);
        }
        while (next_cp < cps.size() && t1 >= cps[next_cp] - 1e-12) {
            MartingaleSample s;
            s.t = t1;
            for (int i = 0; i < 8; ++i) s.m_over_t[i] = mart[i] / t1;
            traj.diagnostics.push_back(s);
            ++next_cp;
        }
    }
    traj.brownian_digest = digest;
    return traj;
}

AuxTrajectory simulate_aux(double recruitment, double death, double sigma,
                           const JumpMeasure& jumps, int xi_component,
                           const SimConfig& config, double init,
                           std::uint64_t path_index, bool brownian_b3) {
    jumps.check();
    config.check();
    if (!(init > 0.0))
        throw std::invalid_argument("simulate_aux: init must be > 0");

    auto events = generate_jumps(jumps, config, path_index);
    std::size_t next_event = 0;
    RngStream stream(config.seed, path_index,
                     brownian_b3 ? StreamRole::B3 : StreamRole::B1);
    double comp =
        jumps.integrate(xi_component, [](double x) { return x; });

    AuxTrajectory traj;
    std::size_t n = grid_steps(config);
    traj.times.reserve(n / config.record_stride + 2);
    traj.values.reserve(n / config.record_stride + 2);
    traj.times.push_back(0.0);
    traj.values.push_back(init);

    double x = init;
    std::uint64_t digest = 0xcbf29ce484222325ULL;
    for (std::size_t k = 0; k < n; ++k) {
        double t0 = static_cast<double>(k) * config.dt;
        double t1 = std::min(static_cast<double>(k + 1) * config.dt, config.t_end);
        double a = t0;
        while (a < t1) {
            bool jump_here =
                next_event < events.size() && events[next_event].t <= t1;
            double b = jump_here ? events[next_event].t : t1;
            double h = b - a;
            if (h > 0.0) {
                double db = stream.gaussian() * std::sqrt(h);
                digest = fnv1a_accumulate(digest, db);
                x += (recruitment - death * x - comp * x) * h + sigma * x * db;
                if (x < 0.0) {
                    if (config.positivity == PositivityPolicy::Reject)
                        throw NegativityError(b, 0);
                    x = 0.0;
                    ++traj.clamp_count;
                }
                ++traj.step_count;
            }
            if (jump_here) {
                x *= 1.0 + jumps.atoms[events[next_event].atom].xi[xi_component];
                traj.jump_times.push_back(b);
                ++next_event;
            }
            a = b;
        }
        bool last = (k + 1 == n);
        if (last || (k + 1) % static_cast<std::size_t>(config.record_stride) == 0) {
            traj.times.push_back(t1);
            traj.values.push_back(x);
        }
    }
    traj.brownian_digest = digest;
    return traj;
}

CoupledResult simulate_coupled(const ModelParams& params,
                               const NoiseParams& noise,
                               const JumpMeasure& jumps,
                               const SimConfig& config, const State& init,
                               std::uint64_t path_index) {
    // Stream roles make coupling a pure stream-sharing configuration: the
    // aux processes consume the same (B1, B3) and jump streams as the main
    // system and split steps at the same event times, so increments align.
    CoupledResult result;
    result.main = simulate(params, noise, jumps, config, init, path_index);
    result.psi = simulate_aux(params.lambda_h, params.mu_h, noise.sigma[0],
                              jumps, 0, config, init.s, path_index, false);
    result.psi_hat = simulate_aux(params.lambda_m, params.mu_m, noise.sigma[2],
                                  jumps, 2, config, init.s_m, path_index, true);
    return result;
}

State simulate_given_increments(
    const ModelParams& params, const NoiseParams& noise,
    const SimConfig& config, const State& init,
    const std::vector<std::array<double, 4>>& increments) {
    JumpMeasure no_jumps;
    State x = init;
    for (const auto& db : increments) {
        auto d = drift(x, params, no_jumps, config.saturated);
        auto g = diffusion(x, noise);
        for (int i = 0; i < 4; ++i) x[i] += d[i] * config.dt + g[i] * db[i];
        for (int i = 0; i < 4; ++i)
            if (x[i] < 0.0) x[i] = 0.0;
    }
    return x;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,S,I,S_m,I_m\n";
    os.precision(12);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const State& s = traj.states[k];
        os << traj.times[k] << ',' << s.s << ',' << s.i << ',' << s.s_m << ','
           << s.i_m << '\n';
    }
}

void write_jump_events_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,atom,S_pre,I_pre,S_m_pre,I_m_pre\n";
    os.precision(12);
    for (const auto& ev : traj.jump_events) {
        os << ev.t << ',' << ev.atom << ',' << ev.pre.s << ',' << ev.pre.i
           << ',' << ev.pre.s_m << ',' << ev.pre.i_m << '\n';
    }
}

}  // namespace levyepi
