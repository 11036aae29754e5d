#ifndef CASIMIR_STRESS_HPP
#define CASIMIR_STRESS_HPP

#include <Eigen/Dense>
#include <string>

#include "casimir/materials.hpp"
#include "casimir/transfer.hpp"

namespace casimir {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    long max_nodes = 4'000'000;
    /// Truncation scale: the spectral integral stops at w = factor / gap.
    double w_cutoff_factor = 40.0;
    /// OpenMP over spectral points; results are bit-identical either way.
    bool parallel = true;

    void validate() const;
};

/// hbar = c = 1 throughout: sigma_xx in units 1/L^4 for lengths in L.
/// Sign convention: sigma_xx > 0 inside the cavity means attraction,
/// pressure on the mirrors P = -sigma_xx < 0.
struct StressResult {
    double sigma_xx = 0.0;
    double est_error = 0.0;
    long node_count = 0;
    int slice_index = -1;
    double gap_local = 0.0;
    std::string stack_digest;

    double pressure() const { return -sigma_xx; }
};

/// w * Tr[X (I - X)^-1] with X = RL * RR * e^(-2*gap*w). Throws if the
/// spectral radius of X reaches 1.
double stress_integrand(const ReflectionMatrix& rl, const ReflectionMatrix& rr,
                        double w, double gap);

/// Scalar two-polarization sum, valid for diagonal reflection matrices:
/// w * sum_q x_q / (1 - x_q).
double stress_integrand_scalar(const ReflectionMatrix& rl, const ReflectionMatrix& rr,
                               double w, double gap);

/// Reflection matrices seen from inside slice `index`: RL at its left
/// edge, RR at its right edge, both in the slice's own mode basis.
struct LocalReflections {
    Eigen::Matrix2d left, right;
};
LocalReflections local_reflections(const Stack& stack, int index,
                                   const SpectralPoint& sp);

/// Regularized stress in slice `index` by quadrature over the imaginary
/// frequency axis and the in-plane wavevector (reduced to a radial
/// integral by symmetry). The slice must be isotropic or a C-slice so its
/// axial constant is polarization-degenerate; the gap in the exponent is
/// the slice's own width.
StressResult stress_at_point(const Stack& stack, int index, const QuadratureConfig& cfg);

enum class Side { Left, Right };

/// Stress evaluated in the vacuum slice adjacent to the chosen mirror;
/// read the force off StressResult::pressure().
StressResult pressure_on_mirror(const Stack& stack, Side side, const QuadratureConfig& cfg);

/// -pi^2 / (240 d^4): ideal-mirror vacuum cavity.
double pressure_ideal(double d);

/// pressure_ideal(effective_length(d, profile)).
double pressure_cslice_analytic(double d, const CompressionProfile& profile);

/// Single-integral route (1/(2 pi^2)) * Int w^3 Tr[X(I-X)^-1] dw for
/// constant reflection matrices; benchmark cross-check for the 2D path.
double stress_constant_reflection(const Eigen::Matrix2d& rl, const Eigen::Matrix2d& rr,
                                  double gap, const QuadratureConfig& cfg);

}  // namespace casimir

#endif
