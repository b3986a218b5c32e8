#include "levyepi/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace levyepi {

void ModelParams::check() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw std::invalid_argument(std::string("ModelParams: ") + name +
                                        " must be > 0");
    };
    positive(lambda_h, "lambda_h");
    positive(b, "b");
    positive(beta, "beta");
    positive(mu_h, "mu_h");
    positive(rho1, "rho1");
    if (!(rho0 >= 0.0))
        throw std::invalid_argument("ModelParams: rho0 must be >= 0");
    positive(lambda_m, "lambda_m");
    positive(beta_m, "beta_m");
    positive(mu_m, "mu_m");
    if (!(a >= 0.0)) throw std::invalid_argument("ModelParams: a must be >= 0");
}

void NoiseParams::check() const {
    for (double s : sigma)
        if (!(s >= 0.0))
            throw std::invalid_argument("NoiseParams: sigma components must be >= 0");
}

double JumpMeasure::total_mass() const {
    double acc = 0.0;
    for (const auto& atom : atoms) acc += atom.mass;
    return acc;
}

void JumpMeasure::check() const {
    for (const auto& atom : atoms) {
        if (!(atom.mass > 0.0))
            throw std::invalid_argument("JumpMeasure: atom mass must be > 0");
        for (double x : atom.xi)
            if (!(x > -1.0))
                throw std::invalid_argument(
                    "JumpMeasure: jump intensity violates A2 (xi must be > -1)");
    }
}

namespace {

// (1+x)^p - p*x - 1 for p > 2, x > -1.
double theta_of(double x, double p) {
    return std::exp(p * std::log1p(x)) - p * x - 1.0;
}

}  // namespace

AssumptionReport validate(const ModelParams& params, const NoiseParams& noise,
                          const JumpMeasure& jumps, double p) {
    params.check();
    noise.check();
    jumps.check();
    if (!(p > 2.0)) throw std::invalid_argument("validate: p must be > 2");

    AssumptionReport rep;
    rep.p = p;
    for (int i = 0; i < 4; ++i) {
        rep.m1 = std::max(rep.m1, jumps.integrate(i, [](double x) { return x * x; }));
        rep.m2 = std::max(rep.m2, jumps.integrate(i, [](double x) {
                              return x - std::log1p(x);
                          }));
        rep.m3 = std::max(rep.m3, jumps.integrate(i, [](double x) {
                              double g = (1.0 + x) * (1.0 + x) - 1.0;
                              return g * g;
                          }));
        rep.m4 = std::max(rep.m4, jumps.integrate(i, [](double x) {
                              double l = std::log1p(x);
                              return l * l;
                          }));
        rep.sigma_max = std::max(rep.sigma_max, noise.sigma[i] * noise.sigma[i]);
    }

    rep.xi_max = 0.0;
    rep.xi_min = 0.0;
    rep.varrho_p = 0.0;
    bool first = true;
    for (const auto& atom : jumps.atoms) {
        double lo = *std::min_element(atom.xi.begin(), atom.xi.end());
        double hi = *std::max_element(atom.xi.begin(), atom.xi.end());
        rep.varrho_p += atom.mass * std::max(theta_of(hi, p), theta_of(lo, p));
        if (first || hi > rep.xi_max) rep.xi_max = hi;
        if (first || lo < rep.xi_min) rep.xi_min = lo;
        first = false;
    }
    rep.theta_tilde = theta_of(rep.xi_max, p);
    rep.theta_under = theta_of(rep.xi_min, p);
    rep.theta_p = std::max(rep.theta_tilde, rep.theta_under);

    rep.delta_p = std::min(params.mu_h, params.mu_m) -
                  (p - 1.0) / 2.0 * rep.sigma_max - rep.varrho_p / p;

    rep.a1 = std::isfinite(rep.m1);
    rep.a2 = std::isfinite(rep.m2);  // xi > -1 already enforced above
    rep.a3 = rep.delta_p > 0.0;
    rep.a4 = std::isfinite(rep.m3);
    rep.a5 = std::isfinite(rep.m4);
    return rep;
}

std::array<double, 4> drift(const State& state, const ModelParams& params,
                            const JumpMeasure& jumps, bool saturated) {
    double incidence_h = params.b * params.beta * state.s * state.i_m;
    if (saturated) incidence_h /= 1.0 + params.a * state.i_m;
    double incidence_m = params.b * params.beta_m * state.s_m * state.i;

    std::array<double, 4> d{
        params.lambda_h - incidence_h - params.mu_h * state.s,
        incidence_h - (params.mu_h + params.rho()) * state.i,
        params.lambda_m - incidence_m - params.mu_m * state.s_m,
        incidence_m - params.mu_m * state.i_m,
    };
    // Compensator of the jump integral: between events the compensated
    // measure contributes -x_i * int(xi_i) dnu to the effective drift.
    for (int i = 0; i < 4; ++i) {
        double c = jumps.integrate(i, [](double x) { return x; });
        d[i] -= state[i] * c;
    }
    return d;
}

std::array<double, 4> diffusion(const State& state, const NoiseParams& noise) {
    return {noise.sigma[0] * state.s, noise.sigma[1] * state.i,
            noise.sigma[2] * state.s_m, noise.sigma[3] * state.i_m};
}

double deterministic_r0(const ModelParams& params) {
    return params.b * params.b * params.beta * params.lambda_h * params.beta_m *
           params.lambda_m /
           (params.mu_h * (params.mu_h + params.rho()) * params.mu_m * params.mu_m);
}

std::optional<State> endemic_equilibrium(const ModelParams& params) {
    double r0 = deterministic_r0(params);
    if (!(r0 > 1.0)) return std::nullopt;

    double mu = params.mu_h, muh = params.mu_m;
    double rho = params.rho();
    double bb = params.b * params.beta;
    double bbh = params.b * params.beta_m;

    double im = mu * muh * (mu + rho) * (r0 - 1.0) /
                (muh * (mu + rho) * (params.a * mu + bb) +
                 params.b * params.b * params.beta * params.beta_m * params.lambda_h);
    double i = muh * muh * im / (bbh * (params.lambda_m - muh * im));
    double sm = params.lambda_m / muh - im;
    double s = params.lambda_h * (1.0 + params.a * im) /
               (mu * (1.0 + params.a * im) + bb * im);
    return State{s, i, sm, im};
}

}  // namespace levyepi
