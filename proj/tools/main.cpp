// levyepi: thresholds, trajectories, ensembles and verification reports for
// the jump-diffusion SIR-SI dengue model.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "levyepi/engine.hpp"
#include "levyepi/estimators.hpp"
#include "levyepi/scenario.hpp"
#include "levyepi/svg.hpp"
#include "levyepi/thresholds.hpp"
#include "levyepi/verify.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitSoftware = 70;

struct CommonOpts {
    std::string preset;
    std::string scenario_file;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    std::optional<double> t_end;
    std::string out;
    std::string svg;
    int paths = 100;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_paths) {
    auto* p = cmd->add_option("--preset", o.preset, "Built-in preset name");
    auto* f = cmd->add_option("--scenario", o.scenario_file,
                              "Scenario file (flat key = value)");
    p->excludes(f);
    cmd->add_option("--seed", o.seed, "Base RNG seed (u64)");
    cmd->add_option("--dt", o.dt, "Integrator step override (days)");
    cmd->add_option("--t-end", o.t_end, "Horizon override (days)");
    cmd->add_option("--out", o.out, "Output file (default stdout)");
    cmd->add_option("--svg", o.svg, "Also render a 4-panel SVG plot here");
    if (with_paths)
        cmd->add_option("--paths", o.paths, "Number of Monte Carlo paths")
            ->check(CLI::PositiveNumber);
}

levyepi::Scenario resolve(const CommonOpts& o) {
    if (o.preset.empty() && o.scenario_file.empty())
        throw CLI::ValidationError("one of --preset or --scenario is required");
    levyepi::Scenario sc = o.preset.empty()
                               ? levyepi::load_scenario_file(o.scenario_file)
                               : levyepi::preset(o.preset);
    if (o.seed) sc.sim.seed = *o.seed;
    if (o.dt) sc.sim.dt = *o.dt;
    if (o.t_end) sc.sim.t_end = *o.t_end;
    sc.check();
    if (sc.sim.dt * sc.jumps.total_mass() >= 1.0)
        std::cerr << "warning: dt * total jump intensity >= 1; the step "
                     "resolves less than one jump on average\n";
    return sc;
}

// Every output file carries the scenario that produced it, commented out for
// CSV and as a nested object for JSON, so results replay from the artifact.
std::string scenario_comment(const levyepi::Scenario& sc) {
    std::ostringstream raw;
    levyepi::write_scenario(raw, sc);
    std::istringstream lines(raw.str());
    std::ostringstream out;
    out << "# scenario\n";
    for (std::string line; std::getline(lines, line);) out << "# " << line << "\n";
    return out.str();
}

std::string scenario_json(const levyepi::Scenario& sc) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"name\": \"" << sc.name << "\"";
    auto num = [&](const char* k, double v) { os << ", \"" << k << "\": " << v; };
    num("model.lambda_h", sc.model.lambda_h);
    num("model.b", sc.model.b);
    num("model.beta", sc.model.beta);
    num("model.a", sc.model.a);
    num("model.mu_h", sc.model.mu_h);
    num("model.rho0", sc.model.rho0);
    num("model.rho1", sc.model.rho1);
    num("model.lambda_m", sc.model.lambda_m);
    num("model.beta_m", sc.model.beta_m);
    num("model.mu_m", sc.model.mu_m);
    for (int i = 0; i < 4; ++i)
        num(("noise.sigma" + std::to_string(i + 1)).c_str(), sc.noise.sigma[i]);
    for (std::size_t k = 0; k < sc.jumps.atoms.size(); ++k) {
        std::string pre = "jumps.atom." + std::to_string(k) + ".";
        num((pre + "mass").c_str(), sc.jumps.atoms[k].mass);
        for (int i = 0; i < 4; ++i)
            num((pre + "xi" + std::to_string(i + 1)).c_str(),
                sc.jumps.atoms[k].xi[i]);
    }
    num("p", sc.p);
    num("init.s", sc.init.s);
    num("init.i", sc.init.i);
    num("init.s_m", sc.init.s_m);
    num("init.i_m", sc.init.i_m);
    num("sim.dt", sc.sim.dt);
    num("sim.t_end", sc.sim.t_end);
    os << ", \"sim.seed\": " << sc.sim.seed;
    os << ", \"sim.record_stride\": " << sc.sim.record_stride;
    os << ", \"sim.positivity_policy\": \""
       << (sc.sim.positivity == levyepi::PositivityPolicy::Reject ? "reject"
                                                                  : "clamp")
       << "\"";
    os << ", \"sim.saturated\": " << (sc.sim.saturated ? "true" : "false");
    os << "}";
    return os.str();
}

// Splices a "scenario" member into a JSON object produced elsewhere.
std::string with_scenario(const std::string& json, const levyepi::Scenario& sc) {
    auto brace = json.rfind('}');
    if (brace == std::string::npos) return json;
    std::string head = json.substr(0, brace);
    while (!head.empty() && (head.back() == '\n' || head.back() == ' '))
        head.pop_back();
    return head + ",\n  \"scenario\": " + scenario_json(sc) + "\n}";
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed: " + path);
}

int cmd_thresholds(const CommonOpts& o) {
    levyepi::Scenario sc = resolve(o);
    levyepi::ThresholdReport tr =
        levyepi::classify(sc.model, sc.noise, sc.jumps, sc.p);
    emit(o.out, with_scenario(tr.to_json(), sc));
    if (tr.consistency_warning)
        std::cerr << "warning: extinction and persistence certificates both "
                     "hold; reporting Indeterminate\n";
    switch (tr.verdict) {
        case levyepi::Verdict::ExtinctionCertified: return 0;
        case levyepi::Verdict::PersistenceCertified: return 1;
        case levyepi::Verdict::Indeterminate: return 2;
    }
    return kExitSoftware;
}

int cmd_simulate(const CommonOpts& o) {
    levyepi::Scenario sc = resolve(o);
    levyepi::Trajectory traj =
        levyepi::simulate(sc.model, sc.noise, sc.jumps, sc.sim, sc.init);
    std::ostringstream csv;
    csv << scenario_comment(sc);
    levyepi::write_trajectory_csv(csv, traj);
    emit(o.out, csv.str());
    if (!o.svg.empty()) {
        std::ofstream svg(o.svg);
        if (!svg) throw std::runtime_error("cannot open svg file: " + o.svg);
        levyepi::write_trajectory_svg(svg, traj);
    }
    return 0;
}

int cmd_ensemble(const CommonOpts& o) {
    levyepi::Scenario sc = resolve(o);
    levyepi::EnsembleSummary sum =
        levyepi::ensemble_run(sc, o.paths, sc.sim.seed, sc.sim);

    std::ostringstream os;
    os.precision(17);
    os << "{\n  \"metadata\": {\"dt\": " << sc.sim.dt
       << ", \"t_end\": " << sc.sim.t_end << ", \"n_paths\": " << o.paths
       << ", \"seed\": " << sc.sim.seed << ", \"version\": \"" << kVersion
       << "\", \"scenario\": " << scenario_json(sc) << "},\n  \"summary\": "
       << sum.to_json() << "\n}";
    emit(o.out, os.str());

    std::ostringstream csv;
    csv << scenario_comment(sc);
    sum.write_per_path_csv(csv);
    if (o.out.empty()) {
        std::cout << '\n' << csv.str();
    } else {
        emit(o.out + ".paths.csv", csv.str());
        std::cerr << "per-path metrics: " << o.out << ".paths.csv\n";
    }
    return 0;
}

int cmd_verify(const CommonOpts& o, const std::string& target) {
    levyepi::Scenario sc = resolve(o);
    levyepi::VerifyReport rep;
    if (target == "tables")
        rep = levyepi::verify_tables(sc);
    else if (target == "lemma2")
        rep = levyepi::verify_lemma2(sc, o.paths, o.t_end.value_or(500.0));
    else if (target == "comparison")
        rep = levyepi::verify_comparison(sc, o.paths, o.t_end.value_or(100.0));
    else if (target == "slln")
        rep = levyepi::verify_slln(sc, o.paths, o.t_end.value_or(500.0));
    rep.print(std::cout);
    if (!o.out.empty()) emit(o.out, with_scenario(rep.to_json(), sc));
    return rep.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stochastic dengue SIR-SI model with white noise and jumps"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    CommonOpts ot, os_, oe, ov;
    std::string target;

    auto* thresholds = app.add_subcommand(
        "thresholds", "Closed-form thresholds, certificates and verdict");
    add_common(thresholds, ot, false);

    auto* simulate =
        app.add_subcommand("simulate", "One trajectory as CSV (optional SVG)");
    add_common(simulate, os_, false);

    auto* ensemble = app.add_subcommand(
        "ensemble", "Monte Carlo ensemble summary JSON and per-path CSV");
    add_common(ensemble, oe, true);

    auto* verify = app.add_subcommand(
        "verify", "Check closed forms and sampled behavior against references");
    add_common(verify, ov, true);
    verify
        ->add_option("--target", target,
                     "One of: lemma2, comparison, slln, tables")
        ->required()
        ->check(CLI::IsMember({"lemma2", "comparison", "slln", "tables"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (thresholds->parsed()) return cmd_thresholds(ot);
        if (simulate->parsed()) return cmd_simulate(os_);
        if (ensemble->parsed()) return cmd_ensemble(oe);
        if (verify->parsed()) return cmd_verify(ov, target);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const levyepi::ScenarioParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSoftware;
    }
    return kExitUsage;
}
