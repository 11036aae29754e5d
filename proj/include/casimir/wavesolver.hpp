#ifndef CASIMIR_WAVESOLVER_HPP
#define CASIMIR_WAVESOLVER_HPP

#include <Eigen/Dense>
#include <array>
#include <utility>
#include <vector>

#include "casimir/materials.hpp"

namespace casimir {

/// One point on the imaginary-frequency/in-plane-wavevector grid. The
/// plane of incidence is rotated to xz, so k_y = 0 and k_x = kpar.
/// All spectral quantities below are evaluated after omega = i*c*kappa,
/// which makes every field quantity real once the z-components of e and h
/// are stored multiplied by i.
struct SpectralPoint {
    double kappa;   // imaginary-frequency magnitude, > 0
    double kpar;    // |k_parallel|, >= 0

    void validate() const;
};

/// Wave-equation matrix of a homogeneous diagonal slab on the imaginary
/// axis, for a rightward mode with axial decay constant q (k_z = i*q).
/// Acts on (E_x, E_y, i*E_z); all entries real, det = 0 on dispersion.
Eigen::Matrix3d wave_matrix(const MaterialSpec& material, const SpectralPoint& sp,
                            double q);

/// Rightward-decaying axial constants with multiplicities. Diagonal media
/// with the xz incidence plane factor into s and p branches:
///   q_s^2 = eps_y*mu_x*kappa^2 + (mu_x/mu_z)*kpar^2
///   q_p^2 = eps_x*mu_y*kappa^2 + (eps_x/eps_z)*kpar^2
/// Degenerate branches are reported once with multiplicity 2.
std::vector<std::pair<double, int>> axial_constants(const MaterialSpec& material,
                                                    const SpectralPoint& sp);

/// Just the two branch values (q_s, q_p).
std::pair<double, double> axial_pair(const MaterialSpec& material,
                                     const SpectralPoint& sp);

struct Mode {
    Eigen::Vector3d e;   // (e_x, e_y, i*e_z), unit Euclidean norm
    Eigen::Vector3d h;   // (h_x, h_y, i*h_z), from h = (1/omega) mu^-1 (k x e)
    double q;            // axial decay constant, > 0
    bool rightward;
};

/// Four eigenmodes in fixed order: rightward s, leftward s, rightward p,
/// leftward p.
struct ModeBasis {
    std::array<Mode, 4> modes;
};

ModeBasis mode_basis(const MaterialSpec& material, const SpectralPoint& sp);

/// 4x4 matrix of tangential components, rows (e.y, h.x, h.y, e.x), columns
/// in the basis order above. Throws if ill-conditioned.
struct DynamicalMatrix {
    Eigen::Matrix4d d;
    double condition;
};

DynamicalMatrix dynamical_matrix(const ModeBasis& basis);

}  // namespace casimir

#endif
