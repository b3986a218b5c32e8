#include <sstream>

#include <doctest.h>

#include "levyepi/scenario.hpp"

using namespace levyepi;

TEST_CASE("presets carry the published parameter columns") {
    Scenario e = preset("table1-extinction");
    CHECK(e.model.lambda_h == 0.5);
    CHECK(e.model.b == 3.0);
    CHECK(e.model.beta == 0.15);
    CHECK(e.model.mu_h == 0.8);
    CHECK(e.model.rho0 == 0.8);
    CHECK(e.model.rho1 == 0.02);
    CHECK(e.model.lambda_m == 0.6);
    CHECK(e.model.beta_m == 0.55);
    CHECK(e.model.mu_m == 0.9);
    CHECK(e.noise.sigma == std::array<double, 4>{0.269, 0.25, 0.25, 0.13});
    REQUIRE(e.jumps.atoms.size() == 1);
    CHECK(e.jumps.atoms[0].mass == 1.0);
    CHECK(e.jumps.atoms[0].xi == std::array<double, 4>{-0.75, 0.8, -0.9, 0.85});
    CHECK(e.init.s == 0.2);
    CHECK(e.init.i == 0.1);
    CHECK(e.init.s_m == 0.3);
    CHECK(e.init.i_m == 0.4);
    CHECK(e.sim.t_end == 200.0);

    Scenario p = preset("table1-persistence");
    CHECK(p.model.lambda_h == 0.85);
    CHECK(p.model.b == 7.0);
    CHECK(p.model.beta == 0.65);
    CHECK(p.model.rho1 == 0.25);
    CHECK(p.model.mu_m == 0.88);
    CHECK(p.noise.sigma[2] == 0.245);
    CHECK(p.noise.sigma[3] == 0.14);
    CHECK(p.jumps.atoms[0].xi[1] == 0.78);
    CHECK(p.sim.t_end == 500.0);

    CHECK_THROWS_AS(preset("table1-unknown"), ScenarioParseError);
    CHECK_THROWS_AS(load_scenario("no-such-preset-or-file"),
                    ScenarioParseError);
}

TEST_CASE("scenario round-trips through the text format") {
    Scenario sc = preset("table1-persistence");
    sc.sim.seed = 123456789012345ULL;
    sc.sim.record_stride = 7;
    sc.sim.positivity = PositivityPolicy::Reject;
    sc.p = 3.25;
    std::ostringstream os;
    write_scenario(os, sc);
    std::istringstream is(os.str());
    Scenario back = parse_scenario(is, "round-trip");

    CHECK(back.name == sc.name);
    CHECK(back.model.lambda_h == sc.model.lambda_h);
    CHECK(back.model.b == sc.model.b);
    CHECK(back.model.beta == sc.model.beta);
    CHECK(back.model.a == sc.model.a);
    CHECK(back.model.mu_h == sc.model.mu_h);
    CHECK(back.model.rho0 == sc.model.rho0);
    CHECK(back.model.rho1 == sc.model.rho1);
    CHECK(back.model.lambda_m == sc.model.lambda_m);
    CHECK(back.model.beta_m == sc.model.beta_m);
    CHECK(back.model.mu_m == sc.model.mu_m);
    CHECK(back.noise.sigma == sc.noise.sigma);
    REQUIRE(back.jumps.atoms.size() == sc.jumps.atoms.size());
    CHECK(back.jumps.atoms[0].mass == sc.jumps.atoms[0].mass);
    CHECK(back.jumps.atoms[0].xi == sc.jumps.atoms[0].xi);
    CHECK(back.p == sc.p);
    CHECK(back.init.s == sc.init.s);
    CHECK(back.init.i == sc.init.i);
    CHECK(back.init.s_m == sc.init.s_m);
    CHECK(back.init.i_m == sc.init.i_m);
    CHECK(back.sim.dt == sc.sim.dt);
    CHECK(back.sim.t_end == sc.sim.t_end);
    CHECK(back.sim.seed == sc.sim.seed);
    CHECK(back.sim.record_stride == sc.sim.record_stride);
    CHECK(back.sim.positivity == sc.sim.positivity);
    CHECK(back.sim.saturated == sc.sim.saturated);
}

TEST_CASE("jump intensity below -1 is rejected with a clear message") {
    Scenario sc = preset("table1-extinction");
    sc.jumps.atoms[0].xi[1] = -1.2;
    std::ostringstream os;
    write_scenario(os, sc);
    std::istringstream is(os.str());
    try {
        parse_scenario(is, "bad-xi");
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("xi") != std::string::npos);
        CHECK(msg.find("-1") != std::string::npos);
    }
}

TEST_CASE("parse diagnostics name the key and line") {
    std::istringstream missing("model.lambda_h = 0.5\n");
    try {
        parse_scenario(missing, "partial");
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& e) {
        CHECK(std::string(e.what()).find("model.b") != std::string::npos);
    }

    Scenario sc = preset("table1-extinction");
    std::ostringstream os;
    write_scenario(os, sc);
    std::string text = os.str() + "model.mu_h = fast\n";
    std::istringstream bad(text);
    try {
        parse_scenario(bad, "bad-number");
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& e) {
        std::string msg = e.what();
        CHECK(msg.find("model.mu_h") != std::string::npos);
        CHECK(msg.find("line") != std::string::npos);
    }

    std::istringstream malformed("model.lambda_h 0.5\n");
    CHECK_THROWS_AS(parse_scenario(malformed, "no-equals"), ScenarioParseError);
}

TEST_CASE("comments and blank lines are ignored") {
    Scenario sc = preset("table1-extinction");
    std::ostringstream os;
    os << "# leading comment\n\n";
    write_scenario(os, sc);
    os << "  # trailing comment\n";
    std::istringstream is(os.str());
    Scenario back = parse_scenario(is, "commented");
    CHECK(back.model.b == sc.model.b);
}

TEST_CASE("load_scenario resolves presets before paths") {
    Scenario sc = load_scenario("table1-extinction");
    CHECK(sc.name == "table1-extinction");
}
