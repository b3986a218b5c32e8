#ifndef LEVYEPI_THRESHOLDS_HPP
#define LEVYEPI_THRESHOLDS_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <utility>

#include "levyepi/model.hpp"

namespace levyepi {

enum class Verdict { ExtinctionCertified, PersistenceCertified, Indeterminate };

const char* to_string(Verdict v);

// Thrown by kappa() when Upsilon or Upsilon_hat is nonpositive and the
// extinction threshold is undefined.
struct UndefinedThreshold : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PersistenceWeights {
    double theta1, theta3, theta4;
    double bound;  // lower bound on the long-run time average of I + Im
};

struct ThresholdReport {
    double r0 = 0.0;
    double upsilon = 0.0, upsilon_hat = 0.0;
    double frak_b = 0.0, frak_c = 0.0, frak_d = 0.0;
    double kappa = 0.0;
    double kappa_coarse = 0.0;  // absolute-value variant K, for comparison
    std::array<double, 4> m_values{};
    double r0_tilde = 0.0;
    double theta1 = 0.0, theta3 = 0.0, theta4 = 0.0;
    double persistence_bound = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0;  // extinction weights
    Verdict verdict = Verdict::Indeterminate;
    bool consistency_warning = false;  // kappa < 0 and r0_tilde > 1 together
    AssumptionReport assumptions;

    // Flat JSON object, one key per field; verdict as string.
    std::string to_json(int indent = 2) const;
};

// Upsilon = 2*mu - sigma1^2 - int(xi1^2)dnu and the mosquito analogue.
std::pair<double, double> upsilons(const ModelParams& params,
                                   const NoiseParams& noise,
                                   const JumpMeasure& jumps);

// (B, C, D): jump penalty, Cauchy-Schwarz diffusion penalty, ramp-split
// drift term. C is defined as 0 when sigma2 = sigma4 = 0.
std::array<double, 3> frak_constants(const ModelParams& params,
                                     const NoiseParams& noise,
                                     const JumpMeasure& jumps);

double kappa(const ModelParams& params, const NoiseParams& noise,
             const JumpMeasure& jumps);

std::array<double, 4> m_values(const ModelParams& params,
                               const NoiseParams& noise,
                               const JumpMeasure& jumps);

double r0_tilde(const ModelParams& params, const NoiseParams& noise,
                const JumpMeasure& jumps);

PersistenceWeights persistence_weights_and_bound(const ModelParams& params,
                                                 const NoiseParams& noise,
                                                 const JumpMeasure& jumps);

// Full report with verdict. Requires all of A1-A5 for either certificate.
ThresholdReport classify(const ModelParams& params, const NoiseParams& noise,
                         const JumpMeasure& jumps, double p);

}  // namespace levyepi

#endif
