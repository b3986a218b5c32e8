#ifndef LEVYEPI_VERIFY_HPP
#define LEVYEPI_VERIFY_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "levyepi/scenario.hpp"

namespace levyepi {

// One verification check. A check with discrepancy=true records a known
// mismatch between the formula value and a published reference; it is
// informational and does not fail the report.
struct CheckResult {
    std::string name;
    bool passed = false;
    bool discrepancy = false;
    double computed = 0.0;
    std::optional<double> reference;
    double tolerance = 0.0;
    std::string note;
};

struct VerifyReport {
    std::string target;
    std::vector<CheckResult> checks;

    bool all_passed() const;
    void print(std::ostream& os) const;
    std::string to_json(int indent = 2) const;
};

// Closed-form quantities against the published reference tables for the
// matching preset. Quantities whose printed value is not reproducible from
// its own formula are logged as discrepancies.
VerifyReport verify_tables(const Scenario& scenario);

// Monte Carlo time averages of the auxiliary processes against their
// closed-form limits (5% for first moments, 10% for second moments).
VerifyReport verify_lemma2(const Scenario& scenario, int n_paths = 100,
                           double t_end = 500.0);

// Pathwise domination S <= psi, S_m <= psi_hat under coupled noise, with a
// -1e-9 discretization slack.
VerifyReport verify_comparison(const Scenario& scenario, int n_paths = 100,
                               double t_end = 100.0);

// Martingale decay diagnostics: per-term |M(T)/T| < 0.05 on >= 95% of
// paths, and per-term median |M(t)/t| non-increasing from T/4 to T.
VerifyReport verify_slln(const Scenario& scenario, int n_paths = 100,
                         double t_end = 500.0);

}  // namespace levyepi

#endif
