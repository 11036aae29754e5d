#ifndef CASIMIR_EXPERIMENTS_HPP
#define CASIMIR_EXPERIMENTS_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "casimir/materials.hpp"
#include "casimir/stress.hpp"

namespace casimir {

/// One cavity computation compared against its closed-form pressure.
/// runtime_ms is written as 0 in output files so repeated runs are
/// byte-identical; measured timings go to the console summary only.
struct ScenarioRow {
    std::string scenario;
    double d = 0.0;
    std::string profile;   // the profile string as given on the command line
    int N = 0;
    double pressure_numeric = 0.0;
    double pressure_analytic = 0.0;
    double rel_err = 0.0;
    long nodes = 0;
    double runtime_ms = 0.0;
};

/// One refinement step of the cutoff-dependence study.
struct ConvergenceRow {
    int N = 0;
    double sigma_xx = 0.0;
    double gap_local = 0.0;
    double rel_change_vs_prev = 0.0;   // 0 for the first row
};

/// Vacuum cavity between ideal mirrors, sliced into N vacuum layers.
/// The result must not depend on N; the reference is -pi^2/(240 d^4).
ScenarioRow run_empty_cavity(double d, int N, const QuadratureConfig& cfg);

/// Compression profile between ideal mirrors, discretized into N slices
/// with per-slice harmonic-mean values so the discretized optical path is
/// exact. Reference: -pi^2/(240 d'^4) with d' the effective length.
/// profile_label is echoed into the report's profile column.
ScenarioRow run_cslice(double d, const CompressionProfile& profile,
                       const std::string& profile_label, int N,
                       const QuadratureConfig& cfg);

/// Local stress inside a generic isotropic eps(z) profile at observation
/// point z_obs (default: cavity midpoint), for each slice count in Ns.
/// The local cutoff w_max scales with the slice count, so a genuinely
/// cutoff-dependent stress shows up as |sigma_xx| growing without bound.
std::vector<ConvergenceRow> run_divergence(double d, const CompressionProfile& eps_profile,
                                           const std::vector<int>& Ns,
                                           const QuadratureConfig& cfg,
                                           std::optional<double> z_obs = std::nullopt);

/// CSV with header scenario,d,profile,N,pressure_numeric,pressure_analytic,
/// rel_err,nodes,runtime_ms; floats with 17 significant digits.
void write_scenario_csv(std::ostream& os, const std::vector<ScenarioRow>& rows);

/// CSV with header N,sigma_xx,gap_local,rel_change_vs_prev.
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows);

/// Shortest round-trip formatting of a double (17 significant digits).
std::string format_double(double v);

}  // namespace casimir

#endif
