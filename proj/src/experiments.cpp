#include "casimir/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace casimir {

namespace {

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

ScenarioRow run_empty_cavity(double d, int N, const QuadratureConfig& cfg) {
    Stack stack = discretize(std::nullopt, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), d, N);
    StressResult sr = pressure_on_mirror(stack, Side::Left, cfg);
    ScenarioRow row;
    row.scenario = "empty";
    row.d = d;
    row.profile = "";
    row.N = N;
    row.pressure_numeric = sr.pressure();
    row.pressure_analytic = pressure_ideal(d);
    row.rel_err = std::abs(row.pressure_numeric - row.pressure_analytic) /
                  std::abs(row.pressure_analytic);
    row.nodes = sr.node_count;
    return row;
}

ScenarioRow run_cslice(double d, const CompressionProfile& profile,
                       const std::string& profile_label, int N,
                       const QuadratureConfig& cfg) {
    Stack stack = discretize(profile, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), d, N,
                             SliceRule::HarmonicMean);
    StressResult sr = pressure_on_mirror(stack, Side::Left, cfg);
    ScenarioRow row;
    row.scenario = "cslice";
    row.d = d;
    row.profile = profile_label;
    row.N = N;
    row.pressure_numeric = sr.pressure();
    row.pressure_analytic = pressure_cslice_analytic(d, profile);
    row.rel_err = std::abs(row.pressure_numeric - row.pressure_analytic) /
                  std::abs(row.pressure_analytic);
    row.nodes = sr.node_count;
    return row;
}

std::vector<ConvergenceRow> run_divergence(double d, const CompressionProfile& eps_profile,
                                           const std::vector<int>& Ns,
                                           const QuadratureConfig& cfg,
                                           std::optional<double> z_obs) {
    const double z = z_obs.value_or(0.5 * d);
    if (!(z > 0.0 && z < d))
        throw std::invalid_argument("observation point must lie inside (0, d)");
    std::vector<ConvergenceRow> rows;
    double prev = 0.0;
    for (int N : Ns) {
        Stack stack = discretize_isotropic(eps_profile, BoundarySpec::ideal_mirror(),
                                           BoundarySpec::ideal_mirror(), d, N);
        // Slice containing z: edges are cumulative thicknesses.
        int index = 0;
        double edge = 0.0;
        for (int j = 0; j < stack.layer_count(); ++j) {
            edge += stack.layers[j].thickness;
            if (z < edge || j == stack.layer_count() - 1) {
                index = j;
                break;
            }
        }
        StressResult sr = stress_at_point(stack, index, cfg);
        ConvergenceRow row;
        row.N = N;
        row.sigma_xx = sr.sigma_xx;
        row.gap_local = sr.gap_local;
        row.rel_change_vs_prev =
            rows.empty() ? 0.0 : std::abs(sr.sigma_xx - prev) / std::abs(prev);
        prev = sr.sigma_xx;
        rows.push_back(row);
    }
    return rows;
}

void write_scenario_csv(std::ostream& os, const std::vector<ScenarioRow>& rows) {
    os << "scenario,d,profile,N,pressure_numeric,pressure_analytic,rel_err,nodes,"
          "runtime_ms\n";
    for (const auto& r : rows) {
        os << r.scenario << ',' << format_double(r.d) << ',' << csv_quote(r.profile)
           << ',' << r.N << ',' << format_double(r.pressure_numeric) << ','
           << format_double(r.pressure_analytic) << ',' << format_double(r.rel_err)
           << ',' << r.nodes << ',' << format_double(r.runtime_ms) << '\n';
    }
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRow>& rows) {
    os << "N,sigma_xx,gap_local,rel_change_vs_prev\n";
    for (const auto& r : rows) {
        os << r.N << ',' << format_double(r.sigma_xx) << ','
           << format_double(r.gap_local) << ','
           << format_double(r.rel_change_vs_prev) << '\n';
    }
}

}  // namespace casimir
