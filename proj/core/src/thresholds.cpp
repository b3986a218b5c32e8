#include "levyepi/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace levyepi {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::ExtinctionCertified: return "ExtinctionCertified";
        case Verdict::PersistenceCertified: return "PersistenceCertified";
        default: return "Indeterminate";
    }
}

std::pair<double, double> upsilons(const ModelParams& params,
                                   const NoiseParams& noise,
                                   const JumpMeasure& jumps) {
    auto sq = [](double x) { return x * x; };
    double j1 = jumps.integrate(0, [](double x) { return x * x; });
    double j3 = jumps.integrate(2, [](double x) { return x * x; });
    double upsilon = 2.0 * params.mu_h - sq(noise.sigma[0]) - j1;
    double upsilon_hat = 2.0 * params.mu_m - sq(noise.sigma[2]) - j3;
    return {upsilon, upsilon_hat};
}

std::array<double, 3> frak_constants(const ModelParams& params,
                                     const NoiseParams& noise,
                                     const JumpMeasure& jumps) {
    double frak_b = 0.0;
    for (const auto& atom : jumps.atoms) {
        double lo = std::min(atom.xi[1], atom.xi[3]);
        double hi = std::max(atom.xi[1], atom.xi[3]);
        double under = lo > 0.0 ? lo - std::log1p(lo) : 0.0;
        double over = hi <= 0.0 ? hi - std::log1p(hi) : 0.0;
        frak_b += atom.mass * (under + over);
    }

    double s2 = noise.sigma[1] * noise.sigma[1];
    double s4 = noise.sigma[3] * noise.sigma[3];
    double frak_c = (s2 + s4) > 0.0 ? s2 * s4 / (2.0 * (s2 + s4)) : 0.0;

    double sqrt_r0 = std::sqrt(deterministic_r0(params));
    double hi_rate = std::max(params.mu_h + params.rho(), params.mu_m);
    double lo_rate = std::min(params.mu_h + params.rho(), params.mu_m);
    double frak_d = hi_rate * std::max(0.0, sqrt_r0 - 1.0) -
                    lo_rate * std::max(0.0, 1.0 - sqrt_r0);
    return {frak_b, frak_c, frak_d};
}

double kappa(const ModelParams& params, const NoiseParams& noise,
             const JumpMeasure& jumps) {
    auto [upsilon, upsilon_hat] = upsilons(params, noise, jumps);
    if (!(upsilon > 0.0) || !(upsilon_hat > 0.0))
        throw UndefinedThreshold(
            "kappa undefined: Upsilon and Upsilon_hat must be positive");
    auto [frak_b, frak_c, frak_d] = frak_constants(params, noise, jumps);
    double sqrt_r0 = std::sqrt(deterministic_r0(params));
    double rad_h = std::sqrt(2.0 * params.mu_h / upsilon - 1.0);
    double rad_m = std::sqrt(2.0 * params.mu_m / upsilon_hat - 1.0);
    return frak_d - frak_c - frak_b + params.mu_m * sqrt_r0 / 2.0 * rad_h +
           (params.mu_h + params.rho()) * sqrt_r0 / 2.0 * rad_m;
}

namespace {

// Absolute-value threshold K from the comparison remark.
double kappa_coarse_value(const ModelParams& params, const NoiseParams& noise,
                          const JumpMeasure& jumps) {
    auto [upsilon, upsilon_hat] = upsilons(params, noise, jumps);
    auto [frak_b, frak_c, frak_d] = frak_constants(params, noise, jumps);
    double r0 = deterministic_r0(params);
    return frak_d - frak_c - frak_b +
           params.mu_m * std::sqrt(r0 * (2.0 * params.mu_h / upsilon - 1.0)) +
           (params.mu_h + params.rho()) *
               std::sqrt(r0 * (2.0 * params.mu_m / upsilon_hat - 1.0));
}

}  // namespace

std::array<double, 4> m_values(const ModelParams& params,
                               const NoiseParams& noise,
                               const JumpMeasure& jumps) {
    auto jump_term = [&](int i) {
        return jumps.integrate(i, [](double x) { return x - std::log1p(x); });
    };
    auto half_sq = [&](int i) { return noise.sigma[i] * noise.sigma[i] / 2.0; };
    return {
        params.mu_h + half_sq(0) + jump_term(0),
        params.mu_h + params.rho() + half_sq(1) + jump_term(1),
        params.mu_m + half_sq(2) + jump_term(2),
        params.mu_m + half_sq(3) + jump_term(3),
    };
}

double r0_tilde(const ModelParams& params, const NoiseParams& noise,
                const JumpMeasure& jumps) {
    auto m = m_values(params, noise, jumps);
    return params.b * params.b * params.beta * params.beta_m * params.lambda_h *
           params.lambda_m / (m[0] * m[1] * m[2] * m[3]);
}

PersistenceWeights persistence_weights_and_bound(const ModelParams& params,
                                                 const NoiseParams& noise,
                                                 const JumpMeasure& jumps) {
    auto m = m_values(params, noise, jumps);
    double num = params.b * params.b * params.beta * params.beta_m *
                 params.lambda_h * params.lambda_m;
    PersistenceWeights w{};
    w.theta1 = num / (m[0] * m[0] * m[2] * m[3]);
    w.theta3 = num / (m[0] * m[2] * m[2] * m[3]);
    w.theta4 = num / (m[0] * m[2] * m[3] * m[3]);
    double rt = num / (m[0] * m[1] * m[2] * m[3]);
    w.bound = m[1] * (rt - 1.0) /
              (params.b * std::max(w.theta1 * params.beta,
                                   w.theta3 * params.beta_m));
    return w;
}

ThresholdReport classify(const ModelParams& params, const NoiseParams& noise,
                         const JumpMeasure& jumps, double p) {
    ThresholdReport rep;
    rep.assumptions = validate(params, noise, jumps, p);
    rep.r0 = deterministic_r0(params);
    std::tie(rep.upsilon, rep.upsilon_hat) = upsilons(params, noise, jumps);
    auto fr = frak_constants(params, noise, jumps);
    rep.frak_b = fr[0];
    rep.frak_c = fr[1];
    rep.frak_d = fr[2];
    rep.kappa = kappa(params, noise, jumps);  // propagates UndefinedThreshold
    rep.kappa_coarse = kappa_coarse_value(params, noise, jumps);
    rep.m_values = m_values(params, noise, jumps);
    rep.r0_tilde = r0_tilde(params, noise, jumps);
    auto w = persistence_weights_and_bound(params, noise, jumps);
    rep.theta1 = w.theta1;
    rep.theta3 = w.theta3;
    rep.theta4 = w.theta4;
    rep.persistence_bound = w.bound;
    rep.lambda1 = params.b * params.beta_m * params.lambda_m /
                  (params.mu_m * params.mu_m * (params.mu_h + params.rho()));
    rep.lambda2 = std::sqrt(rep.r0) / params.mu_m;

    bool extinct = rep.kappa < 0.0 && rep.assumptions.all();
    bool persist = rep.r0_tilde > 1.0 && rep.assumptions.all();
    if (extinct && persist) {
        // Both certificates at once: the theory never rules this out, so it
        // is surfaced as an inconsistency rather than silently picking one.
        rep.consistency_warning = true;
        rep.verdict = Verdict::Indeterminate;
    } else if (extinct) {
        rep.verdict = Verdict::ExtinctionCertified;
    } else if (persist) {
        rep.verdict = Verdict::PersistenceCertified;
    } else {
        rep.verdict = Verdict::Indeterminate;
    }
    return rep;
}

std::string ThresholdReport::to_json(int indent) const {
    std::ostringstream os;
    os.precision(17);
    std::string pad(indent > 0 ? indent : 0, ' ');
    const char* nl = indent > 0 ? "\n" : "";
    os << "{" << nl;
    auto field = [&](const char* name, double v, bool last = false) {
        os << pad << "\"" << name << "\": " << v << (last ? "" : ",") << nl;
    };
    field("r0", r0);
    field("upsilon", upsilon);
    field("upsilon_hat", upsilon_hat);
    field("frak_b", frak_b);
    field("frak_c", frak_c);
    field("frak_d", frak_d);
    field("kappa", kappa);
    field("kappa_coarse", kappa_coarse);
    os << pad << "\"m_values\": [" << m_values[0] << ", " << m_values[1] << ", "
       << m_values[2] << ", " << m_values[3] << "]," << nl;
    field("r0_tilde", r0_tilde);
    field("theta1", theta1);
    field("theta3", theta3);
    field("theta4", theta4);
    field("persistence_bound", persistence_bound);
    field("lambda1", lambda1);
    field("lambda2", lambda2);
    os << pad << "\"consistency_warning\": "
       << (consistency_warning ? "true" : "false") << "," << nl;
    os << pad << "\"verdict\": \"" << to_string(verdict) << "\"" << nl;
    os << "}";
    return os.str();
}

}  // namespace levyepi
