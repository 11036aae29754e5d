#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "casimir/experiments.hpp"

using namespace casimir;

TEST_CASE("empty cavity run matches the closed form") {
    QuadratureConfig cfg;
    ScenarioRow row = run_empty_cavity(1.0, 8, cfg);
    CHECK(row.scenario == "empty");
    CHECK(row.N == 8);
    CHECK(row.rel_err <= 1e-6);
    CHECK(row.pressure_analytic == doctest::Approx(-0.041123351671205656).epsilon(1e-15));
    CHECK(row.nodes > 0);
    CHECK(row.runtime_ms == 0.0);
}

TEST_CASE("compression run matches the effective-length pressure") {
    QuadratureConfig cfg;
    auto prof = CompressionProfile::linear(0.4, 0.6, 1.0, 3.0);
    ScenarioRow row = run_cslice(1.0, prof, "linear:1,3", 16, cfg);
    CHECK(row.scenario == "cslice");
    CHECK(row.profile == "linear:1,3");
    const double dprime = 1.0 - 0.2 + 0.1 * std::log(3.0);
    CHECK(row.pressure_analytic ==
          doctest::Approx(pressure_ideal(dprime)).epsilon(1e-14));
    CHECK(row.rel_err <= 1e-6);
}

TEST_CASE("generic profile diverges with refinement, constant one does not") {
    QuadratureConfig cfg;
    auto ramp = CompressionProfile::linear(0.0, 1.0, 1.0, 2.0);
    auto rows = run_divergence(1.0, ramp, {8, 16, 32}, cfg);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].rel_change_vs_prev == 0.0);
    CHECK(std::abs(rows[1].sigma_xx) > std::abs(rows[0].sigma_xx));
    CHECK(std::abs(rows[2].sigma_xx) > std::abs(rows[1].sigma_xx));
    CHECK(rows[1].rel_change_vs_prev > 1e-3);
    CHECK(rows[0].gap_local == doctest::Approx(1.0 / 8.0));

    auto flat = CompressionProfile::constant(0.0, 1.0, 1.5);
    auto ctl = run_divergence(1.0, flat, {8, 16, 32}, cfg);
    CHECK(ctl[1].rel_change_vs_prev <= 1e-8);
    CHECK(ctl[2].rel_change_vs_prev <= 1e-8);
}

TEST_CASE("scenario CSV format") {
    ScenarioRow row;
    row.scenario = "cslice";
    row.d = 1.0;
    row.profile = "linear:1,3";
    row.N = 16;
    row.pressure_numeric = -0.123456789012345678;
    row.pressure_analytic = -0.123456789012345678;
    row.rel_err = 0.0;
    row.nodes = 42;
    std::ostringstream os;
    write_scenario_csv(os, {row});
    std::istringstream is(os.str());
    std::string header, line;
    std::getline(is, header);
    CHECK(header ==
          "scenario,d,profile,N,pressure_numeric,pressure_analytic,rel_err,nodes,"
          "runtime_ms");
    std::getline(is, line);
    // profile field is quoted because it may contain commas
    CHECK(line.find("\"linear:1,3\"") != std::string::npos);
    // 17 significant digits round-trip
    CHECK(line.find("-0.12345678901234568") != std::string::npos);
}

TEST_CASE("convergence CSV format") {
    ConvergenceRow row{32, -1.5, 0.03125, 0.25};
    std::ostringstream os;
    write_convergence_csv(os, {row});
    CHECK(os.str() ==
          "N,sigma_xx,gap_local,rel_change_vs_prev\n32,-1.5,0.03125,0.25\n");
}

TEST_CASE("double formatting round-trips") {
    for (double v : {0.1, -0.041123351671205656, 1e-300, 12345.678901234567}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("observation point must be interior") {
    QuadratureConfig cfg;
    auto flat = CompressionProfile::constant(0.0, 1.0, 1.5);
    CHECK_THROWS_AS(run_divergence(1.0, flat, {8}, cfg, 1.5), std::invalid_argument);
}
