#include "casimir/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <CLI11.hpp>

#include "casimir/experiments.hpp"
#include "casimir/materials.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/stress.hpp"

namespace casimir {

namespace {

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("CASIMIR_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
    }
#endif
}

std::pair<double, double> parse_interval(const std::string& s) {
    std::istringstream in(s);
    double a = 0.0, b = 0.0;
    char comma = 0;
    if (!(in >> a >> comma >> b) || comma != ',' || !(in >> std::ws).eof())
        throw CLI::ValidationError("--interval", "expected \"a,b\"");
    if (!(a < b))
        throw CLI::ValidationError("--interval", "interval start exceeds end");
    return {a, b};
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

int run_resolved(const RunConfig& cfg) {
    QuadratureConfig qcfg;
    qcfg.rel_tol = cfg.rel_tol;
    qcfg.abs_tol = cfg.abs_tol;
    qcfg.parallel = !cfg.no_parallel;
    qcfg.validate();

    const std::string out_path = cfg.out.empty() ? cfg.scenario + ".csv" : cfg.out;
    std::ostringstream body;

    if (cfg.scenario == "divergence") {
        const std::string prof_str =
            cfg.profile.empty() ? "linear:1,2" : cfg.profile;
        double a = 0.0, b = cfg.d;
        if (!cfg.interval.empty()) std::tie(a, b) = parse_interval(cfg.interval);
        if (!(b - a == cfg.d) || a != 0.0)
            throw std::invalid_argument(
                "divergence scenario requires the profile to span the whole cavity");
        CompressionProfile prof = parse_profile(prof_str, a, b);
        std::vector<int> Ns =
            cfg.N_list.empty() ? std::vector<int>{8, 16, 32, 64, 128} : cfg.N_list;
        const auto t0 = std::chrono::steady_clock::now();
        auto rows = run_divergence(cfg.d, prof, Ns, qcfg);
        const double ms = elapsed_ms(t0);
        write_convergence_csv(body, rows);
        for (const auto& r : rows)
            std::printf("divergence N=%d sigma_xx=%.6e rel_change=%.6e\n", r.N,
                        r.sigma_xx, r.rel_change_vs_prev);
        std::printf("divergence d=%g profile=%s rows=%zu runtime_ms=%.1f\n", cfg.d,
                    prof_str.c_str(), rows.size(), ms);
    } else if (cfg.scenario == "empty" || cfg.scenario == "cslice") {
        std::vector<int> Ns = cfg.N_list.empty() ? std::vector<int>{64} : cfg.N_list;
        std::vector<ScenarioRow> rows;
        const auto t0 = std::chrono::steady_clock::now();
        for (int N : Ns) {
            if (cfg.scenario == "empty") {
                rows.push_back(run_empty_cavity(cfg.d, N, qcfg));
            } else {
                const std::string prof_str =
                    cfg.profile.empty() ? "const:0.5" : cfg.profile;
                auto [a, b] = cfg.interval.empty()
                                  ? std::pair<double, double>{0.4, 0.6}
                                  : parse_interval(cfg.interval);
                CompressionProfile prof = parse_profile(prof_str, a, b);
                rows.push_back(run_cslice(cfg.d, prof, prof_str, N, qcfg));
            }
        }
        const double ms = elapsed_ms(t0);
        write_scenario_csv(body, rows);
        for (const auto& r : rows)
            std::printf(
                "%s d=%g N=%d pressure=%.6e analytic=%.6e rel_err=%.3e nodes=%ld\n",
                r.scenario.c_str(), r.d, r.N, r.pressure_numeric, r.pressure_analytic,
                r.rel_err, r.nodes);
        std::printf("%s rows=%zu runtime_ms=%.1f\n", cfg.scenario.c_str(), rows.size(),
                    ms);
    } else {
        throw CLI::ValidationError("--scenario",
                                   "must be one of empty, cslice, divergence");
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << body.str();
    std::printf("wrote %s\n", out_path.c_str());
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    apply_thread_env();

    RunConfig cfg;
    CLI::App app{"Casimir pressure in stratified planar cavities"};
    app.add_option("--scenario", cfg.scenario, "empty | cslice | divergence")
        ->check(CLI::IsMember({"empty", "cslice", "divergence"}))
        ->capture_default_str();
    app.add_option("--d", cfg.d, "cavity width")->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--profile", cfg.profile,
                   "const:<v> | linear:<va>,<vb> | table:<path>");
    app.add_option("--interval", cfg.interval, "profile support as \"a,b\"");
    app.add_option("--N", cfg.N_list, "slice counts")->delimiter(',');
    app.add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--out", cfg.out, "output CSV path (default <scenario>.csv)");
    app.add_flag("--no-parallel", cfg.no_parallel, "disable OpenMP");
    app.set_config("--config", "", "read key=value defaults from a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        return run_resolved(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace casimir
