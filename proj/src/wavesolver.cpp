#include "casimir/wavesolver.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace casimir {

void SpectralPoint::validate() const {
    if (!(std::isfinite(kappa) && kappa > 0.0))
        throw std::invalid_argument("spectral point: kappa must be > 0");
    if (!(std::isfinite(kpar) && kpar >= 0.0))
        throw std::invalid_argument("spectral point: kpar must be >= 0");
}

Eigen::Matrix3d wave_matrix(const MaterialSpec& material, const SpectralPoint& sp,
                            double q) {
    material.validate();
    sp.validate();
    const double kx = sp.kpar, k2 = sp.kappa * sp.kappa;
    Eigen::Matrix3d w = Eigen::Matrix3d::Zero();
    w(0, 0) = q * q / material.mu_y - k2 * material.eps_x;
    w(0, 2) = q * kx / material.mu_y;
    w(1, 1) = q * q / material.mu_x - k2 * material.eps_y - kx * kx / material.mu_z;
    w(2, 0) = q * kx / material.mu_y;
    w(2, 2) = k2 * material.eps_z + kx * kx / material.mu_y;
    return w;
}

std::pair<double, double> axial_pair(const MaterialSpec& m, const SpectralPoint& sp) {
    m.validate();
    sp.validate();
    const double k2 = sp.kappa * sp.kappa, kp2 = sp.kpar * sp.kpar;
    const double qs2 = m.eps_y * m.mu_x * k2 + (m.mu_x / m.mu_z) * kp2;
    const double qp2 = m.eps_x * m.mu_y * k2 + (m.eps_x / m.eps_z) * kp2;
    if (!(qs2 > 0.0 && qp2 > 0.0)) {
        std::ostringstream msg;
        msg << "axial constants undefined at kappa=" << sp.kappa << " kpar=" << sp.kpar;
        throw std::runtime_error(msg.str());
    }
    return {std::sqrt(qs2), std::sqrt(qp2)};
}

std::vector<std::pair<double, int>> axial_constants(const MaterialSpec& m,
                                                    const SpectralPoint& sp) {
    auto [qs, qp] = axial_pair(m, sp);
    if (std::abs(qs - qp) <= 1e-12 * std::max(qs, qp)) return {{qs, 2}};
    return {{qs, 1}, {qp, 1}};
}

namespace {

/// h = (1/omega) mu^-1 (k x e) with omega = i*kappa, k = (kx, 0, i*s*q),
/// in the stored-real convention (z-components carry a factor i).
Eigen::Vector3d magnetic_mode(const Eigen::Vector3d& e, double q, int s,
                              const MaterialSpec& m, const SpectralPoint& sp) {
    const double kx = sp.kpar, kap = sp.kappa;
    Eigen::Vector3d h;
    h(0) = -s * q * e(1) / (kap * m.mu_x);
    h(1) = (s * q * e(0) + kx * e(2)) / (kap * m.mu_y);
    h(2) = kx * e(1) / (kap * m.mu_z);
    return h;
}

}  // namespace

ModeBasis mode_basis(const MaterialSpec& m, const SpectralPoint& sp) {
    auto [qs, qp] = axial_pair(m, sp);

    // p-polarization null vector of the (E_x, iE_z) block: (B, -s*c) with
    // B > 0 for all admissible inputs, so the normal-incidence limit is
    // regular and tends to the x-polarized vacuum mode.
    const double big = sp.kappa * sp.kappa * m.eps_z + sp.kpar * sp.kpar / m.mu_y;
    const double c = qp * sp.kpar / m.mu_y;
    const double norm = std::hypot(big, c);

    ModeBasis basis;
    const Eigen::Vector3d es(0.0, 1.0, 0.0);
    basis.modes[0] = {es, magnetic_mode(es, qs, +1, m, sp), qs, true};
    basis.modes[1] = {es, magnetic_mode(es, qs, -1, m, sp), qs, false};
    const Eigen::Vector3d ep_r(big / norm, 0.0, -c / norm);
    const Eigen::Vector3d ep_l(big / norm, 0.0, +c / norm);
    basis.modes[2] = {ep_r, magnetic_mode(ep_r, qp, +1, m, sp), qp, true};
    basis.modes[3] = {ep_l, magnetic_mode(ep_l, qp, -1, m, sp), qp, false};
    return basis;
}

DynamicalMatrix dynamical_matrix(const ModeBasis& basis) {
    Eigen::Matrix4d d;
    for (int j = 0; j < 4; ++j) {
        const Mode& mode = basis.modes[j];
        d(0, j) = mode.e(1);
        d(1, j) = mode.h(0);
        d(2, j) = mode.h(1);
        d(3, j) = mode.e(0);
    }
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(d);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(3);
    if (!(smin > 0.0) || smax / smin > 1e12) {
        std::ostringstream msg;
        msg << "dynamical matrix ill-conditioned (cond="
            << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity())
            << ")";
        throw std::runtime_error(msg.str());
    }
    return {d, smax / smin};
}

}  // namespace casimir
