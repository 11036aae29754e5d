#ifndef CASIMIR_TRANSFER_HPP
#define CASIMIR_TRANSFER_HPP

#include <Eigen/Dense>
#include <utility>

#include "casimir/materials.hpp"
#include "casimir/wavesolver.hpp"

namespace casimir {

/// 4x4 map between mode expansion coefficients, carried with a separated
/// log scale so long products of real exponentials neither overflow nor
/// underflow. Reflection ratios are invariant under the common scale.
struct TransferMatrix {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    double log_scale = 0.0;
    int span_begin = 0, span_end = 0;   // slice index range covered

    void normalize();
    TransferMatrix& compose_left(const TransferMatrix& factor);  // this = factor * this
};

/// 2x2 polarization-mixing reflection coefficients, real on the imaginary
/// axis. Convention: r_pq = reflected p-amplitude / incident q-amplitude.
struct ReflectionMatrix {
    double ss = 0.0, sp = 0.0, ps = 0.0, pp = 0.0;

    Eigen::Matrix2d mat() const {
        Eigen::Matrix2d r;
        r << ss, sp, ps, pp;
        return r;
    }
    static ReflectionMatrix from(const Eigen::Matrix2d& r) {
        return {r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
    }
    double max_abs() const;
};

/// Boundary-condition matrix D_right^-1 * D_left.
TransferMatrix interface_matrix(const MaterialSpec& left, const MaterialSpec& right,
                                const SpectralPoint& sp);

/// Diagonal phase matrix diag(e^-qs*t, e^+qs*t, e^-qp*t, e^+qp*t). Throws
/// rather than saturating when an exponent magnitude exceeds 700.
TransferMatrix propagation_matrix(const MaterialSpec& material, double thickness,
                                  const SpectralPoint& sp);

/// Ordered product of per-slice factors mapping the coefficient vector at
/// the left edge of slice `first` to the left edge of slice `last`
/// (last == layer_count() means the right boundary edge, still in the last
/// slice's basis). Plain matrix products of these compose associatively.
TransferMatrix stack_transfer(const Stack& stack, int first, int last,
                              const SpectralPoint& sp);

/// Reflection coefficients of a transfer matrix under the condition that
/// no wave comes in from the right.
ReflectionMatrix reflection_matrix(const TransferMatrix& t);

/// Mobius maps of a 2x2 reflection matrix through a 4x4 transfer matrix,
/// in the (s+, s-, p+, p-) column convention.
/// Known reflection r0 behind the left end, propagated to the right end:
Eigen::Matrix2d reflect_through_left(const TransferMatrix& t, const Eigen::Matrix2d& r0);
/// Known reflection r_end beyond the right end, seen from the left end:
Eigen::Matrix2d reflect_from_right(const TransferMatrix& t, const Eigen::Matrix2d& r_end);

/// Corrected isotropic Fresnel amplitudes on the imaginary axis, looking
/// from medium `in` into medium `out`; w = sqrt(eps*mu*kappa^2 + kpar^2).
std::pair<double, double> fresnel_isotropic(double eps_in, double mu_in,
                                            double eps_out, double mu_out,
                                            const SpectralPoint& sp);

/// Single-film Airy reflection of a three-medium isotropic system,
/// (r12 + r23 e^-2q2*t) / (1 + r12 r23 e^-2q2*t) per polarization.
std::pair<double, double> airy_reflection(double eps1, double eps2, double eps3,
                                          double mu1, double mu2, double mu3,
                                          double thickness, const SpectralPoint& sp);

}  // namespace casimir

#endif
