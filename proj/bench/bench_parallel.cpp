// Compares the OpenMP spectral-point evaluation against the serial path on
// the same cavity and verifies the two produce bit-identical results.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "casimir/materials.hpp"
#include "casimir/stress.hpp"

using namespace casimir;

namespace {

double time_ms(const Stack& s, const QuadratureConfig& cfg, StressResult* out) {
    const auto t0 = std::chrono::steady_clock::now();
    *out = pressure_on_mirror(s, Side::Left, cfg);
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace

int main() {
    auto prof = CompressionProfile::linear(0.3, 0.7, 1.0, 3.0);
    Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 128,
                         SliceRule::HarmonicMean);
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;

    StressResult warm;
    time_ms(s, cfg, &warm);  // touch caches before timing

    cfg.parallel = false;
    StressResult serial;
    const double ms_serial = time_ms(s, cfg, &serial);

    cfg.parallel = true;
    StressResult parallel;
    const double ms_parallel = time_ms(s, cfg, &parallel);

#ifdef _OPENMP
    std::printf("threads         : %d\n", omp_get_max_threads());
#endif
    std::printf("slices          : %d\n", s.layer_count());
    std::printf("spectral points : %ld\n", serial.node_count);
    std::printf("serial          : %8.1f ms\n", ms_serial);
    std::printf("parallel        : %8.1f ms\n", ms_parallel);
    std::printf("speedup         : %8.2fx\n", ms_serial / ms_parallel);

    if (serial.sigma_xx != parallel.sigma_xx ||
        serial.node_count != parallel.node_count) {
        std::printf("MISMATCH: serial and parallel results differ\n");
        return 1;
    }
    std::printf("results bit-identical: sigma_xx = %.17g\n", serial.sigma_xx);
    return 0;
}
