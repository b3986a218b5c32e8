#include "levyepi/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <thread>

#include "levyepi/thresholds.hpp"

namespace levyepi {

DistSummary summarize(std::vector<double> values) {
    DistSummary s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    auto quantile = [&](double q) {
        double idx = q * static_cast<double>(values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(idx);
        std::size_t hi = std::min(lo + 1, values.size() - 1);
        double frac = idx - static_cast<double>(lo);
        return values[lo] * (1.0 - frac) + values[hi] * frac;
    };
    s.median = quantile(0.5);
    s.q10 = quantile(0.1);
    s.q90 = quantile(0.9);
    s.min = values.front();
    s.max = values.back();
    return s;
}

double time_average(std::span<const double> times,
                    std::span<const double> values, int power) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("time_average: need >= 2 recorded points");
    double total = times.back() - times.front();
    if (!(total > 0.0))
        throw std::invalid_argument("time_average: zero-length horizon");
    auto f = [power](double x) { return power == 2 ? x * x : x; };
    double acc = 0.0;
    for (std::size_t k = 1; k < times.size(); ++k)
        acc += 0.5 * (f(values[k - 1]) + f(values[k])) * (times[k] - times[k - 1]);
    return acc / total;
}

double time_average(const AuxTrajectory& traj, int power) {
    return time_average(traj.times, traj.values, power);
}

double time_average(const Trajectory& traj, int component, int power) {
    std::vector<double> vals(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k)
        vals[k] = component < 0 ? traj.states[k].i + traj.states[k].i_m
                                : traj.states[k][component];
    return time_average(traj.times, vals, power);
}

std::optional<double> extinction_rate(const Trajectory& traj,
                                      const ModelParams& params,
                                      const NoiseParams& noise,
                                      const JumpMeasure& jumps) {
    (void)noise;
    (void)jumps;
    double lambda1 = params.b * params.beta_m * params.lambda_m /
                     (params.mu_m * params.mu_m * (params.mu_h + params.rho()));
    double lambda2 = std::sqrt(deterministic_r0(params)) / params.mu_m;

    if (traj.times.size() < 2)
        throw std::invalid_argument("extinction_rate: empty trajectory");
    double t_start = traj.times.back() / 2.0;  // trailing half of the horizon
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        if (traj.times[k] < t_start) continue;
        double w = lambda1 * traj.states[k].i + lambda2 * traj.states[k].i_m;
        if (!(w > 0.0)) continue;  // clamp floor reached; log undefined
        double x = traj.times[k], y = std::log(w);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::nullopt;
    double dn = static_cast<double>(n);
    double denom = dn * sxx - sx * sx;
    if (denom == 0.0) return std::nullopt;
    return (dn * sxy - sx * sy) / denom;
}

PersistenceCheck persistence_check(std::span<const double> path_time_averages,
                                   double bound) {
    PersistenceCheck pc;
    if (path_time_averages.empty()) return pc;
    std::size_t positive = 0, above = 0;
    double sum = 0.0;
    for (double v : path_time_averages) {
        if (v > 0.0) ++positive;
        if (v > bound) ++above;
        sum += v;
    }
    double n = static_cast<double>(path_time_averages.size());
    pc.fraction_positive = static_cast<double>(positive) / n;
    pc.fraction_above_bound = static_cast<double>(above) / n;
    pc.mean_time_avg = sum / n;
    return pc;
}

std::array<double, 8> slln_terminal_residuals(const Trajectory& traj) {
    std::array<double, 8> out{};
    if (traj.diagnostics.empty()) return out;
    const auto& last = traj.diagnostics.back();
    for (int i = 0; i < 8; ++i) out[i] = std::abs(last.m_over_t[i]);
    return out;
}

namespace {

int worker_count() {
    if (const char* env = std::getenv("LEVYEPI_WORKERS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

EnsembleSummary ensemble_run(const Scenario& scenario, int n_paths,
                             std::uint64_t base_seed, const SimConfig& config) {
    if (n_paths < 1)
        throw std::invalid_argument("ensemble_run: n_paths must be >= 1");
    scenario.check();

    SimConfig cfg = config;
    cfg.seed = base_seed;

    std::vector<PathMetrics> metrics(static_cast<std::size_t>(n_paths));
    std::vector<std::array<double, 4>> aux(static_cast<std::size_t>(n_paths));

    auto run_path = [&](std::size_t path) {
        PathMetrics& m = metrics[path];
        try {
            Trajectory traj = simulate(scenario.model, scenario.noise,
                                       scenario.jumps, cfg, scenario.init, path);
            m.terminal_i = traj.states.back().i;
            m.terminal_im = traj.states.back().i_m;
            m.time_avg_infection = time_average(traj, -1, 1);
            m.lyapunov_rate =
                extinction_rate(traj, scenario.model, scenario.noise,
                                scenario.jumps);
            m.clamp_count = traj.clamp_count;
            m.step_count = traj.step_count;
            auto res = slln_terminal_residuals(traj);
            m.slln_max_residual = *std::max_element(res.begin(), res.end());

            AuxTrajectory psi = simulate_aux(
                scenario.model.lambda_h, scenario.model.mu_h,
                scenario.noise.sigma[0], scenario.jumps, 0, cfg,
                scenario.init.s > 0 ? scenario.init.s : 1.0, path, false);
            AuxTrajectory psi_hat = simulate_aux(
                scenario.model.lambda_m, scenario.model.mu_m,
                scenario.noise.sigma[2], scenario.jumps, 2, cfg,
                scenario.init.s_m > 0 ? scenario.init.s_m : 1.0, path, true);
            aux[path] = {time_average(psi, 1), time_average(psi, 2),
                         time_average(psi_hat, 1), time_average(psi_hat, 2)};
        } catch (const std::exception&) {
            m.failed = true;
        }
    };

    int workers = std::min(worker_count(), n_paths);
    if (workers <= 1) {
        for (std::size_t p = 0; p < metrics.size(); ++p) run_path(p);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t p = next.fetch_add(1); p < metrics.size();
                     p = next.fetch_add(1))
                    run_path(p);
            });
        for (auto& th : pool) th.join();
    }

    // Aggregation walks paths in index order, so the summary does not depend
    // on scheduling.
    EnsembleSummary sum;
    sum.n_paths = n_paths;
    std::vector<double> terminal, rates;
    double avg_sum = 0.0, avg_sq = 0.0;
    double psi1 = 0, psi2 = 0, psih1 = 0, psih2 = 0;
    std::size_t clamped = 0, steps = 0;
    std::size_t ok = 0;
    for (std::size_t p = 0; p < metrics.size(); ++p) {
        const PathMetrics& m = metrics[p];
        if (m.failed) {
            ++sum.failed_paths;
            continue;
        }
        ++ok;
        terminal.push_back(m.terminal_i + m.terminal_im);
        avg_sum += m.time_avg_infection;
        avg_sq += m.time_avg_infection * m.time_avg_infection;
        if (m.lyapunov_rate)
            rates.push_back(*m.lyapunov_rate);
        else
            ++sum.lyapunov_excluded;
        psi1 += aux[p][0];
        psi2 += aux[p][1];
        psih1 += aux[p][2];
        psih2 += aux[p][3];
        clamped += m.clamp_count;
        steps += m.step_count;
        sum.slln_max_residual =
            std::max(sum.slln_max_residual, m.slln_max_residual);
    }
    sum.per_path = std::move(metrics);
    if (ok == 0) return sum;
    double dn = static_cast<double>(ok);
    sum.terminal_infection = summarize(std::move(terminal));
    sum.mean_time_avg_infection = avg_sum / dn;
    if (ok > 1) {
        double var =
            (avg_sq - avg_sum * avg_sum / dn) / (dn - 1.0);
        sum.se_time_avg_infection = std::sqrt(std::max(0.0, var) / dn);
    }
    if (!rates.empty()) {
        double racc = 0.0;
        for (double r : rates) racc += r;
        sum.lyapunov_rate = racc / static_cast<double>(rates.size());
    }
    sum.aux_avg_psi = psi1 / dn;
    sum.aux_avg_psi2 = psi2 / dn;
    sum.aux_avg_psi_hat = psih1 / dn;
    sum.aux_avg_psi_hat2 = psih2 / dn;
    sum.clamp_rate = steps > 0 ? static_cast<double>(clamped) /
                                     static_cast<double>(steps)
                               : 0.0;
    return sum;
}

std::string EnsembleSummary::to_json(int indent) const {
    std::ostringstream os;
    os.precision(17);
    std::string pad(indent > 0 ? indent : 0, ' ');
    const char* nl = indent > 0 ? "\n" : "";
    os << "{" << nl;
    auto num = [&](const char* name, double v, bool last = false) {
        os << pad << "\"" << name << "\": " << v << (last ? "" : ",") << nl;
    };
    num("n_paths", n_paths);
    num("failed_paths", failed_paths);
    os << pad << "\"terminal_infection\": {\"mean\": " << terminal_infection.mean
       << ", \"median\": " << terminal_infection.median
       << ", \"q10\": " << terminal_infection.q10
       << ", \"q90\": " << terminal_infection.q90
       << ", \"min\": " << terminal_infection.min
       << ", \"max\": " << terminal_infection.max << "}," << nl;
    num("mean_time_avg_infection", mean_time_avg_infection);
    num("se_time_avg_infection", se_time_avg_infection);
    num("lyapunov_rate", lyapunov_rate);
    num("lyapunov_excluded", lyapunov_excluded);
    os << pad << "\"aux_avgs\": {\"psi\": " << aux_avg_psi
       << ", \"psi2\": " << aux_avg_psi2 << ", \"psi_hat\": " << aux_avg_psi_hat
       << ", \"psi_hat2\": " << aux_avg_psi_hat2 << "}," << nl;
    num("slln_residuals", slln_max_residual);
    num("clamp_rate", clamp_rate, true);
    os << "}";
    return os.str();
}

void EnsembleSummary::write_per_path_csv(std::ostream& os) const {
    os << "path,terminal_I,terminal_Im,time_avg_infection,lyapunov_rate,"
          "clamped\n";
    os.precision(12);
    for (std::size_t p = 0; p < per_path.size(); ++p) {
        const PathMetrics& m = per_path[p];
        os << p << ',' << m.terminal_i << ',' << m.terminal_im << ','
           << m.time_avg_infection << ',';
        if (m.lyapunov_rate)
            os << *m.lyapunov_rate;
        else
            os << "nan";
        os << ',' << m.clamp_count << '\n';
    }
}

}  // namespace levyepi
