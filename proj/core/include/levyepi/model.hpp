#ifndef LEVYEPI_MODEL_HPP
#define LEVYEPI_MODEL_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace levyepi {

// Deterministic rates of the dengue SIR-SI model. Units: 1/day, populations
// in millions of individuals.
struct ModelParams {
    double lambda_h;  // recruitment rate of susceptible humans
    double b;         // mosquito biting rate (bites/mosquito/day)
    double beta;      // mosquito -> human transmission probability
    double a;         // saturation (inhibition) coefficient, >= 0
    double mu_h;      // human natural death rate
    double rho0;      // disease-induced human death rate
    double rho1;      // combined recovery + treatment rate
    double lambda_m;  // mosquito recruitment rate
    double beta_m;    // human -> mosquito transmission probability
    double mu_m;      // mosquito natural death rate

    double rho() const { return rho0 + rho1; }
    // Throws std::invalid_argument if any positivity constraint fails.
    void check() const;
};

struct NoiseParams {
    std::array<double, 4> sigma{};  // Brownian intensities, one per compartment

    void check() const;
};

// One atom of the finite jump measure: weight and the four multiplicative
// jump intensities applied at an event with this mark.
struct JumpAtom {
    double mass;                // nu-weight, > 0
    std::array<double, 4> xi;   // each must exceed -1
};

struct JumpMeasure {
    std::vector<JumpAtom> atoms;

    double total_mass() const;
    // Integral of f(xi_component) against nu, i.e. sum of mass*f per atom.
    template <class F>
    double integrate(int component, F&& f) const {
        double acc = 0.0;
        for (const auto& atom : atoms) acc += atom.mass * f(atom.xi[component]);
        return acc;
    }
    void check() const;
};

struct State {
    double s;    // susceptible humans
    double i;    // infected humans
    double s_m;  // susceptible mosquitoes
    double i_m;  // infected mosquitoes

    double& operator[](int k) { return (&s)[k]; }
    double operator[](int k) const { return (&s)[k]; }
    bool nonnegative() const { return s >= 0 && i >= 0 && s_m >= 0 && i_m >= 0; }
};

// Scalars behind assumptions A1-A5 and the per-assumption verdicts.
// theta_* values are evaluated at the extreme jump intensities across all
// atoms; varrho_p integrates the atomwise maximum against nu.
struct AssumptionReport {
    double p = 0.0;
    double m1 = 0.0;  // max_i integral of xi_i^2
    double m2 = 0.0;  // max_i integral of xi_i - ln(1+xi_i)
    double m3 = 0.0;  // max_i integral of ((1+xi_i)^2 - 1)^2
    double m4 = 0.0;  // max_i integral of ln(1+xi_i)^2
    double sigma_max = 0.0;
    double xi_max = 0.0;
    double xi_min = 0.0;
    double theta_tilde = 0.0;
    double theta_under = 0.0;
    double theta_p = 0.0;
    double varrho_p = 0.0;
    double delta_p = 0.0;
    bool a1 = false, a2 = false, a3 = false, a4 = false, a5 = false;

    bool all() const { return a1 && a2 && a3 && a4 && a5; }
};

// Evaluates every closed-form scalar behind A1-A5. Rejects p <= 2 and any
// jump intensity <= -1 (downstream logs are undefined there).
AssumptionReport validate(const ModelParams& params, const NoiseParams& noise,
                          const JumpMeasure& jumps, double p);

// Deterministic drift plus the jump-compensator correction -x_i * int(xi_i)dnu.
// With saturated=true the human incidence is b*beta*S*Im/(1+a*Im).
std::array<double, 4> drift(const State& state, const ModelParams& params,
                            const JumpMeasure& jumps, bool saturated);

std::array<double, 4> diffusion(const State& state, const NoiseParams& noise);

double deterministic_r0(const ModelParams& params);

// Endemic equilibrium of the deterministic system; nullopt when R0 <= 1.
std::optional<State> endemic_equilibrium(const ModelParams& params);

}  // namespace levyepi

#endif
