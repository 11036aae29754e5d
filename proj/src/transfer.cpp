#include "casimir/transfer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace casimir {

namespace {

Eigen::Matrix2d plus_plus(const Eigen::Matrix4d& t) {
    Eigen::Matrix2d b;
    b << t(0, 0), t(0, 2), t(2, 0), t(2, 2);
    return b;
}
Eigen::Matrix2d plus_minus(const Eigen::Matrix4d& t) {
    Eigen::Matrix2d b;
    b << t(0, 1), t(0, 3), t(2, 1), t(2, 3);
    return b;
}
Eigen::Matrix2d minus_plus(const Eigen::Matrix4d& t) {
    Eigen::Matrix2d b;
    b << t(1, 0), t(1, 2), t(3, 0), t(3, 2);
    return b;
}
Eigen::Matrix2d minus_minus(const Eigen::Matrix4d& t) {
    Eigen::Matrix2d b;
    b << t(1, 1), t(1, 3), t(3, 1), t(3, 3);
    return b;
}

Eigen::Matrix2d solve2(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b,
                       const char* what) {
    const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    const double scale = a.cwiseAbs().maxCoeff();
    if (!(std::abs(det) > 1e-280) || std::abs(det) < 1e-14 * scale * scale) {
        std::ostringstream msg;
        msg << what << ": singular 2x2 system (det=" << det << ")";
        throw std::runtime_error(msg.str());
    }
    Eigen::Matrix2d inv;
    inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
    return (inv / det) * b;
}

}  // namespace

void TransferMatrix::normalize() {
    const double s = m.cwiseAbs().maxCoeff();
    if (s > 0.0 && (s > 1e100 || s < 1e-100)) {
        m /= s;
        log_scale += std::log(s);
    }
}

TransferMatrix& TransferMatrix::compose_left(const TransferMatrix& factor) {
    m = factor.m * m;
    log_scale += factor.log_scale;
    span_end = factor.span_end;
    normalize();
    return *this;
}

double ReflectionMatrix::max_abs() const {
    return std::max({std::abs(ss), std::abs(sp), std::abs(ps), std::abs(pp)});
}

TransferMatrix interface_matrix(const MaterialSpec& left, const MaterialSpec& right,
                                const SpectralPoint& sp) {
    const DynamicalMatrix dl = dynamical_matrix(mode_basis(left, sp));
    const DynamicalMatrix dr = dynamical_matrix(mode_basis(right, sp));
    TransferMatrix t;
    t.m = dr.d.partialPivLu().solve(dl.d);
    return t;
}

TransferMatrix propagation_matrix(const MaterialSpec& material, double thickness,
                                  const SpectralPoint& sp) {
    if (!(thickness >= 0.0))
        throw std::invalid_argument("propagation thickness must be >= 0");
    auto [qs, qp] = axial_pair(material, sp);
    if (std::abs(qs * thickness) > 700.0 || std::abs(qp * thickness) > 700.0) {
        std::ostringstream msg;
        msg << "propagation exponent overflow: q*t = " << std::max(qs, qp) * thickness;
        throw std::runtime_error(msg.str());
    }
    TransferMatrix t;
    t.m = Eigen::Vector4d(std::exp(-qs * thickness), std::exp(qs * thickness),
                          std::exp(-qp * thickness), std::exp(qp * thickness))
              .asDiagonal();
    return t;
}

TransferMatrix stack_transfer(const Stack& stack, int first, int last,
                              const SpectralPoint& sp) {
    const int n = stack.layer_count();
    if (!(0 <= first && first < last && last <= n))
        throw std::invalid_argument("stack_transfer: bad slice range");
    TransferMatrix t;
    t.span_begin = first;
    t.span_end = last;
    for (int j = first + 1; j <= last; ++j) {
        t.compose_left(propagation_matrix(stack.layers[j - 1].material,
                                          stack.layers[j - 1].thickness, sp));
        if (j < n)
            t.compose_left(
                interface_matrix(stack.layers[j - 1].material, stack.layers[j].material, sp));
    }
    return t;
}

ReflectionMatrix reflection_matrix(const TransferMatrix& t) {
    const Eigen::Matrix2d r =
        -solve2(minus_minus(t.m), minus_plus(t.m), "reflection_matrix");
    return ReflectionMatrix::from(r);
}

Eigen::Matrix2d reflect_through_left(const TransferMatrix& t, const Eigen::Matrix2d& r0) {
    const Eigen::Matrix2d num = plus_plus(t.m) * r0 + plus_minus(t.m);
    const Eigen::Matrix2d den = minus_plus(t.m) * r0 + minus_minus(t.m);
    // num * den^-1 via transposed solve
    return solve2(den.transpose(), num.transpose(), "reflect_through_left").transpose();
}

Eigen::Matrix2d reflect_from_right(const TransferMatrix& t, const Eigen::Matrix2d& r_end) {
    const Eigen::Matrix2d den = minus_minus(t.m) - r_end * plus_minus(t.m);
    const Eigen::Matrix2d num = r_end * plus_plus(t.m) - minus_plus(t.m);
    return solve2(den, num, "reflect_from_right");
}

std::pair<double, double> fresnel_isotropic(double eps_in, double mu_in,
                                            double eps_out, double mu_out,
                                            const SpectralPoint& sp) {
    for (double v : {eps_in, mu_in, eps_out, mu_out})
        if (!(std::isfinite(v) && v > 0.0))
            throw std::invalid_argument("fresnel_isotropic: parameters must be > 0");
    sp.validate();
    const double k2 = sp.kappa * sp.kappa, kp2 = sp.kpar * sp.kpar;
    const double w_in = std::sqrt(eps_in * mu_in * k2 + kp2);
    const double w_out = std::sqrt(eps_out * mu_out * k2 + kp2);
    const double rs = (mu_out * w_in - mu_in * w_out) / (mu_out * w_in + mu_in * w_out);
    const double rp = -(eps_out * w_in - eps_in * w_out) / (eps_out * w_in + eps_in * w_out);
    return {rs, rp};
}

std::pair<double, double> airy_reflection(double eps1, double eps2, double eps3,
                                          double mu1, double mu2, double mu3,
                                          double thickness, const SpectralPoint& sp) {
    if (!(thickness >= 0.0))
        throw std::invalid_argument("airy_reflection: thickness must be >= 0");
    const auto [rs12, rp12] = fresnel_isotropic(eps1, mu1, eps2, mu2, sp);
    const auto [rs23, rp23] = fresnel_isotropic(eps2, mu2, eps3, mu3, sp);
    const double q2 = std::sqrt(eps2 * mu2 * sp.kappa * sp.kappa + sp.kpar * sp.kpar);
    const double ph = std::exp(-2.0 * q2 * thickness);
    auto combine = [&](double r12, double r23) {
        return (r12 + r23 * ph) / (1.0 + r12 * r23 * ph);
    };
    return {combine(rs12, rs23), combine(rp12, rp23)};
}

}  // namespace casimir
