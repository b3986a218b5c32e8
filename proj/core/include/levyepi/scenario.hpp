#ifndef LEVYEPI_SCENARIO_HPP
#define LEVYEPI_SCENARIO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "levyepi/engine.hpp"
#include "levyepi/model.hpp"

namespace levyepi {

struct ScenarioParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A fully specified simulation setup: model rates, noise, jump measure,
// moment exponent, initial state and integrator configuration.
struct Scenario {
    std::string name;
    ModelParams model{};
    NoiseParams noise{};
    JumpMeasure jumps{};
    double p = 2.5;
    State init{};
    SimConfig sim{};

    void check() const;
};

// Built-in presets mirroring the two published parameter columns.
std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

// Flat key-value text format with dotted section prefixes
// (model.lambda_h, noise.sigma2, jumps.atom.0.xi1, sim.dt, init.s, ...).
Scenario parse_scenario(std::istream& is, const std::string& origin = "<stream>");
Scenario load_scenario_file(const std::string& path);
// Resolves either a preset name or a file path.
Scenario load_scenario(const std::string& preset_or_path);
void write_scenario(std::ostream& os, const Scenario& scenario);

}  // namespace levyepi

#endif
