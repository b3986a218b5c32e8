#include "levyepi/scenario.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace levyepi {

void Scenario::check() const {
    if (name.empty())
        throw std::invalid_argument("Scenario: name must be nonempty");
    model.check();
    noise.check();
    jumps.check();
    sim.check();
    if (!(p > 2.0)) throw std::invalid_argument("Scenario: p must be > 2");
    if (!init.nonnegative())
        throw std::invalid_argument("Scenario: init must be componentwise >= 0");
}

namespace {

Scenario table1_base() {
    Scenario sc;
    sc.model.lambda_h = 0.5;
    sc.model.b = 3.0;
    sc.model.beta = 0.15;
    sc.model.a = 0.0;
    sc.model.mu_h = 0.8;
    sc.model.rho0 = 0.8;
    sc.model.rho1 = 0.02;
    sc.model.lambda_m = 0.6;
    sc.model.beta_m = 0.55;
    sc.model.mu_m = 0.9;
    sc.noise.sigma = {0.269, 0.25, 0.25, 0.13};
    sc.jumps.atoms = {{1.0, {-0.75, 0.8, -0.9, 0.85}}};
    sc.p = 2.5;
    sc.init = {0.2, 0.1, 0.3, 0.4};
    sc.sim.dt = 1e-3;
    sc.sim.seed = 1;
    return sc;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"table1-extinction", "table1-persistence"};
}

Scenario preset(const std::string& name) {
    if (name == "table1-extinction") {
        Scenario sc = table1_base();
        sc.name = name;
        sc.sim.t_end = 200.0;
        return sc;
    }
    if (name == "table1-persistence") {
        Scenario sc = table1_base();
        sc.name = name;
        sc.model.lambda_h = 0.85;
        sc.model.b = 7.0;
        sc.model.beta = 0.65;
        sc.model.rho1 = 0.25;
        sc.model.mu_m = 0.88;
        sc.noise.sigma[2] = 0.245;
        sc.noise.sigma[3] = 0.14;
        sc.jumps.atoms[0].xi[1] = 0.78;
        sc.sim.t_end = 500.0;
        return sc;
    }
    throw ScenarioParseError("unknown preset: " + name);
}

namespace {

struct KeyValue {
    std::string value;
    int line;
};

double to_double(const std::string& key, const KeyValue& kv) {
    try {
        std::size_t pos = 0;
        double v = std::stod(kv.value, &pos);
        if (pos != kv.value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ScenarioParseError("line " + std::to_string(kv.line) +
                                 ": key '" + key + "': not a number: '" +
                                 kv.value + "'");
    }
}

}  // namespace

Scenario parse_scenario(std::istream& is, const std::string& origin) {
    std::map<std::string, KeyValue> kvs;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioParseError(origin + ": line " + std::to_string(lineno) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string()
                                          : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ScenarioParseError(origin + ": line " + std::to_string(lineno) +
                                     ": empty key");
        kvs[key] = {value, lineno};
    }

    Scenario sc;
    auto take = [&](const std::string& key) -> const KeyValue* {
        auto it = kvs.find(key);
        if (it == kvs.end()) return nullptr;
        return &it->second;
    };
    auto require_num = [&](const std::string& key) {
        const KeyValue* kv = take(key);
        if (!kv)
            throw ScenarioParseError(origin + ": missing required key '" + key +
                                     "'");
        return to_double(key, *kv);
    };
    auto optional_num = [&](const std::string& key, double fallback) {
        const KeyValue* kv = take(key);
        return kv ? to_double(key, *kv) : fallback;
    };

    const KeyValue* name = take("name");
    sc.name = name ? name->value : "scenario";

    sc.model.lambda_h = require_num("model.lambda_h");
    sc.model.b = require_num("model.b");
    sc.model.beta = require_num("model.beta");
    sc.model.a = optional_num("model.a", 0.0);
    sc.model.mu_h = require_num("model.mu_h");
    sc.model.rho0 = require_num("model.rho0");
    sc.model.rho1 = require_num("model.rho1");
    sc.model.lambda_m = require_num("model.lambda_m");
    sc.model.beta_m = require_num("model.beta_m");
    sc.model.mu_m = require_num("model.mu_m");
    for (int i = 0; i < 4; ++i)
        sc.noise.sigma[i] =
            optional_num("noise.sigma" + std::to_string(i + 1), 0.0);

    for (int atom = 0;; ++atom) {
        std::string prefix = "jumps.atom." + std::to_string(atom) + ".";
        const KeyValue* mass = take(prefix + "mass");
        if (!mass) break;
        JumpAtom ja;
        ja.mass = to_double(prefix + "mass", *mass);
        for (int i = 0; i < 4; ++i)
            ja.xi[i] = require_num(prefix + "xi" + std::to_string(i + 1));
        sc.jumps.atoms.push_back(ja);
    }

    sc.p = optional_num("p", 2.5);
    sc.init.s = require_num("init.s");
    sc.init.i = require_num("init.i");
    sc.init.s_m = require_num("init.s_m");
    sc.init.i_m = require_num("init.i_m");

    sc.sim.dt = optional_num("sim.dt", 1e-3);
    sc.sim.t_end = optional_num("sim.t_end", 200.0);
    if (const KeyValue* seed = take("sim.seed")) {
        try {
            sc.sim.seed = std::stoull(seed->value);
        } catch (const std::exception&) {
            throw ScenarioParseError(origin + ": line " +
                                     std::to_string(seed->line) +
                                     ": sim.seed must be an unsigned integer");
        }
    }
    sc.sim.record_stride =
        static_cast<int>(optional_num("sim.record_stride", 1.0));
    sc.sim.saturated = optional_num("sim.saturated", 0.0) != 0.0;
    if (const KeyValue* pol = take("sim.positivity_policy")) {
        if (pol->value == "clamp")
            sc.sim.positivity = PositivityPolicy::ClampToZero;
        else if (pol->value == "reject")
            sc.sim.positivity = PositivityPolicy::Reject;
        else
            throw ScenarioParseError(origin + ": line " +
                                     std::to_string(pol->line) +
                                     ": sim.positivity_policy must be "
                                     "'clamp' or 'reject'");
    }

    try {
        sc.check();
    } catch (const std::invalid_argument& e) {
        throw ScenarioParseError(origin + ": invalid scenario: " +
                                 std::string(e.what()));
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ScenarioParseError("cannot open scenario file: " + path);
    return parse_scenario(is, path);
}

Scenario load_scenario(const std::string& preset_or_path) {
    for (const auto& n : preset_names())
        if (n == preset_or_path) return preset(n);
    return load_scenario_file(preset_or_path);
}

void write_scenario(std::ostream& os, const Scenario& sc) {
    os.precision(17);
    os << "name = " << sc.name << "\n";
    os << "model.lambda_h = " << sc.model.lambda_h << "\n";
    os << "model.b = " << sc.model.b << "\n";
    os << "model.beta = " << sc.model.beta << "\n";
    os << "model.a = " << sc.model.a << "\n";
    os << "model.mu_h = " << sc.model.mu_h << "\n";
    os << "model.rho0 = " << sc.model.rho0 << "\n";
    os << "model.rho1 = " << sc.model.rho1 << "\n";
    os << "model.lambda_m = " << sc.model.lambda_m << "\n";
    os << "model.beta_m = " << sc.model.beta_m << "\n";
    os << "model.mu_m = " << sc.model.mu_m << "\n";
    for (int i = 0; i < 4; ++i)
        os << "noise.sigma" << i + 1 << " = " << sc.noise.sigma[i] << "\n";
    for (std::size_t k = 0; k < sc.jumps.atoms.size(); ++k) {
        const auto& atom = sc.jumps.atoms[k];
        os << "jumps.atom." << k << ".mass = " << atom.mass << "\n";
        for (int i = 0; i < 4; ++i)
            os << "jumps.atom." << k << ".xi" << i + 1 << " = " << atom.xi[i]
               << "\n";
    }
    os << "p = " << sc.p << "\n";
    os << "init.s = " << sc.init.s << "\n";
    os << "init.i = " << sc.init.i << "\n";
    os << "init.s_m = " << sc.init.s_m << "\n";
    os << "init.i_m = " << sc.init.i_m << "\n";
    os << "sim.dt = " << sc.sim.dt << "\n";
    os << "sim.t_end = " << sc.sim.t_end << "\n";
    os << "sim.seed = " << sc.sim.seed << "\n";
    os << "sim.record_stride = " << sc.sim.record_stride << "\n";
    os << "sim.positivity_policy = "
       << (sc.sim.positivity == PositivityPolicy::Reject ? "reject" : "clamp")
       << "\n";
    os << "sim.saturated = " << (sc.sim.saturated ? 1 : 0) << "\n";
}

}  // namespace levyepi
