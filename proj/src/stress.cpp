#include "casimir/stress.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "casimir/quadrature.hpp"
#include "casimir/wavesolver.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

/// Tr[X (I - X)^-1] for a 2x2 matrix, via the Cayley-Hamilton identity
/// (tr X - 2 det X) / (1 - tr X + det X). Throws if the spectral radius
/// of X reaches 1 (unphysical gain).
double trace_ratio(const Eigen::Matrix2d& x) {
    const double tr = x.trace();
    const double det = x.determinant();
    const double disc = tr * tr - 4.0 * det;
    const double radius =
        disc >= 0.0 ? 0.5 * (std::abs(tr) + std::sqrt(disc)) : std::sqrt(det);
    if (!(radius < 1.0)) {
        std::ostringstream msg;
        msg << "round-trip spectral radius " << radius << " >= 1";
        throw std::runtime_error(msg.str());
    }
    return (tr - 2.0 * det) / (1.0 - tr + det);
}

/// Tangential wave data of one slice: axial constants plus the three
/// numbers that fill the dynamical matrix's two 2x2 blocks.
struct SliceWave {
    double qs, qp;   // axial decay constants
    double hs;       // s-block h.x magnitude, qs/(kappa mu_x)
    double hp, ex;   // p-block h.y and e.x of the rightward mode
};

SliceWave slice_wave(const MaterialSpec& m, const SpectralPoint& sp) {
    auto [qs, qp] = axial_pair(m, sp);
    const double big = sp.kappa * sp.kappa * m.eps_z + sp.kpar * sp.kpar / m.mu_y;
    const double c = qp * sp.kpar / m.mu_y;
    const double norm = std::hypot(big, c);
    const double ex = big / norm, ezt = -c / norm;
    SliceWave w;
    w.qs = qs;
    w.qp = qp;
    w.hs = qs / (sp.kappa * m.mu_x);
    w.hp = (qp * ex + sp.kpar * ezt) / (sp.kappa * m.mu_y);
    w.ex = ex;
    return w;
}

/// Per-polarization 2x2 transfer chain with separated log scale.
struct Chain2 {
    Eigen::Matrix2d s = Eigen::Matrix2d::Identity();
    Eigen::Matrix2d p = Eigen::Matrix2d::Identity();

    void normalize() {
        for (Eigen::Matrix2d* b : {&s, &p}) {
            const double sc = b->cwiseAbs().maxCoeff();
            if (sc > 1e100 || (sc > 0.0 && sc < 1e-100)) *b /= sc;
        }
    }

    /// Interface from -> to: closed form of D_to^-1 D_from per block.
    void apply_interface(const SliceWave& from, const SliceWave& to) {
        Eigen::Matrix2d ms, mp;
        ms << to.hs + from.hs, to.hs - from.hs, to.hs - from.hs, to.hs + from.hs;
        ms /= 2.0 * to.hs;
        const double a = to.ex * from.hp, b = to.hp * from.ex;
        mp << a + b, b - a, b - a, a + b;
        mp /= 2.0 * to.hp * to.ex;
        s = ms * s;
        p = mp * p;
        normalize();
    }

    void apply_propagation(const SliceWave& w, double t) {
        const Eigen::Vector2d ds(std::exp(-w.qs * t), std::exp(w.qs * t));
        const Eigen::Vector2d dp(std::exp(-w.qp * t), std::exp(w.qp * t));
        s = ds.asDiagonal() * s;
        p = dp.asDiagonal() * p;
        normalize();
    }
};

double mobius_left(const Eigen::Matrix2d& t, double r0) {
    return (t(0, 0) * r0 + t(0, 1)) / (t(1, 0) * r0 + t(1, 1));
}

double mobius_right(const Eigen::Matrix2d& t, double r_end) {
    return (r_end * t(0, 0) - t(1, 0)) / (t(1, 1) - r_end * t(0, 1));
}

std::vector<SliceWave> stack_waves(const Stack& stack, const SpectralPoint& sp) {
    std::vector<SliceWave> ws;
    ws.reserve(stack.layers.size());
    for (const auto& l : stack.layers) ws.push_back(slice_wave(l.material, sp));
    return ws;
}

}  // namespace

void QuadratureConfig::validate() const {
    require(rel_tol > 0.0 && abs_tol > 0.0, "quadrature tolerances must be > 0");
    require(max_nodes >= 16, "max_nodes must be >= 16");
    require(w_cutoff_factor > 0.0, "w_cutoff_factor must be > 0");
}

double stress_integrand(const ReflectionMatrix& rl, const ReflectionMatrix& rr,
                        double w, double gap) {
    require(w > 0.0 && gap > 0.0, "stress_integrand: w and gap must be > 0");
    const Eigen::Matrix2d x = rl.mat() * rr.mat() * std::exp(-2.0 * gap * w);
    return w * trace_ratio(x);
}

double stress_integrand_scalar(const ReflectionMatrix& rl, const ReflectionMatrix& rr,
                               double w, double gap) {
    require(w > 0.0 && gap > 0.0, "stress_integrand: w and gap must be > 0");
    const double e = std::exp(-2.0 * gap * w);
    const double xs = rl.ss * rr.ss * e, xp = rl.pp * rr.pp * e;
    if (!(std::abs(xs) < 1.0 && std::abs(xp) < 1.0))
        throw std::runtime_error("round-trip amplitude >= 1");
    return w * (xs / (1.0 - xs) + xp / (1.0 - xp));
}

LocalReflections local_reflections(const Stack& stack, int index,
                                   const SpectralPoint& sp) {
    const int n = stack.layer_count();
    require(0 <= index && index < n, "local_reflections: slice index out of range");
    const auto waves = stack_waves(stack, sp);

    // Looking left from the left edge of slice `index`.
    double r0s = 0.0, r0p = 0.0;
    switch (stack.left.kind) {
        case BoundarySpec::Kind::IdealMirror:
            r0s = r0p = -1.0;
            break;
        case BoundarySpec::Kind::Vacuum:
        case BoundarySpec::Kind::HalfSpace: {
            const MaterialSpec hs = stack.left.kind == BoundarySpec::Kind::Vacuum
                                        ? MaterialSpec::vacuum()
                                        : stack.left.material;
            Chain2 m0;
            m0.apply_interface(slice_wave(hs, sp), waves[0]);
            // No incoming wave from -infinity: r = T_pm / T_mm.
            r0s = m0.s(0, 1) / m0.s(1, 1);
            r0p = m0.p(0, 1) / m0.p(1, 1);
            break;
        }
    }
    Chain2 tl;
    for (int j = 0; j < index; ++j) {
        tl.apply_propagation(waves[j], stack.layers[j].thickness);
        tl.apply_interface(waves[j], waves[j + 1]);
    }
    const double rls = mobius_left(tl.s, r0s);
    const double rlp = mobius_left(tl.p, r0p);

    // Looking right from the right edge of slice `index`.
    Chain2 tr;
    for (int j = index + 1; j < n; ++j) {
        tr.apply_interface(waves[j - 1], waves[j]);
        tr.apply_propagation(waves[j], stack.layers[j].thickness);
    }
    double res = 0.0, rep = 0.0;
    switch (stack.right.kind) {
        case BoundarySpec::Kind::IdealMirror:
            res = rep = -1.0;
            break;
        case BoundarySpec::Kind::Vacuum:
        case BoundarySpec::Kind::HalfSpace: {
            const MaterialSpec hs = stack.right.kind == BoundarySpec::Kind::Vacuum
                                        ? MaterialSpec::vacuum()
                                        : stack.right.material;
            Chain2 mb;
            mb.apply_interface(waves[n - 1], slice_wave(hs, sp));
            res = mobius_right(mb.s, 0.0);
            rep = mobius_right(mb.p, 0.0);
            break;
        }
    }
    const double rrs = mobius_right(tr.s, res);
    const double rrp = mobius_right(tr.p, rep);

    LocalReflections out;
    out.left = Eigen::Vector2d(rls, rlp).asDiagonal();
    out.right = Eigen::Vector2d(rrs, rrp).asDiagonal();
    return out;
}

StressResult stress_at_point(const Stack& stack, int index, const QuadratureConfig& cfg) {
    cfg.validate();
    const int n = stack.layer_count();
    require(0 <= index && index < n, "stress_at_point: slice index out of range");
    const MaterialSpec& local = stack.layers[index].material;
    require(local.is_isotropic() || local.is_cslice(),
            "stress_at_point: evaluation slice must be isotropic or a C-slice");
    const double gap = stack.layers[index].thickness;

    // Integrand at one spectral point: local axial constant as the w of
    // the stress formula, the slice's own width as the gap.
    auto point_value = [&](double kappa, double kpar) {
        const SpectralPoint sp{kappa, kpar};
        const auto refl = local_reflections(stack, index, sp);
        const auto [qs, qp] = axial_pair(local, sp);
        const double w_loc = qs;   // degenerate by precondition
        const Eigen::Matrix2d x = refl.left * refl.right * std::exp(-2.0 * gap * w_loc);
        return w_loc * trace_ratio(x);
    };

    // Polar reduction: kappa = w cos(theta), kpar = w sin(theta);
    // sigma = (1/(2 pi^2)) Int dw w^2 Int dtheta sin(theta) f.
    std::vector<long> inner_evals_log;
    auto inner_integral = [&](double w, long* evals_out) {
        auto f = [&](double theta) {
            return std::sin(theta) * point_value(w * std::cos(theta), w * std::sin(theta));
        };
        QuadResult r = integrate_gk(std::function<double(double)>(f), 0.0, 0.5 * kPi,
                                    0.1 * cfg.rel_tol, cfg.abs_tol, cfg.max_nodes);
        *evals_out = r.evals;
        return r.value;
    };

    long total_evals = 0;
    BatchFn outer_batch = [&](const std::vector<double>& pts, std::vector<double>& vals) {
        const int np = static_cast<int>(pts.size());
        std::vector<long> counts(np, 0);
        std::vector<std::exception_ptr> errors(np);
#pragma omp parallel for schedule(dynamic) if (cfg.parallel)
        for (int i = 0; i < np; ++i) {
            try {
                vals[i] = pts[i] * pts[i] * inner_integral(pts[i], &counts[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
        for (int i = 0; i < np; ++i)
            if (errors[i]) std::rethrow_exception(errors[i]);
        for (long c : counts) total_evals += c;
    };

    const double wmax = cfg.w_cutoff_factor / gap;
    std::vector<double> seeds;
    for (double s = 1.0 / stack.width; s < wmax; s *= 2.0) seeds.push_back(s);

    QuadResult outer;
    try {
        outer = integrate_gk(outer_batch, 0.0, wmax, cfg.rel_tol, cfg.abs_tol,
                             cfg.max_nodes, seeds);
    } catch (const QuadratureError& e) {
        std::ostringstream msg;
        msg << "stress quadrature did not converge within " << cfg.max_nodes
            << " nodes (partial sigma_xx = " << e.partial().value / (2.0 * kPi * kPi)
            << ")";
        throw QuadratureError(msg.str(),
                              {e.partial().value / (2.0 * kPi * kPi),
                               e.partial().error / (2.0 * kPi * kPi), total_evals});
    }

    StressResult res;
    res.sigma_xx = outer.value / (2.0 * kPi * kPi);
    res.est_error = outer.error / (2.0 * kPi * kPi);
    res.node_count = total_evals;
    res.slice_index = index;
    res.gap_local = gap;
    res.stack_digest = stack_digest(stack);
    return res;
}

StressResult pressure_on_mirror(const Stack& stack, Side side, const QuadratureConfig& cfg) {
    const int index = side == Side::Left ? 0 : stack.layer_count() - 1;
    require(stack.layers[index].material.is_vacuum(),
            "pressure_on_mirror: slice adjacent to the mirror must be vacuum");
    return stress_at_point(stack, index, cfg);
}

double pressure_ideal(double d) {
    require(d > 0.0, "pressure_ideal: d must be > 0");
    return -kPi * kPi / (240.0 * d * d * d * d);
}

double pressure_cslice_analytic(double d, const CompressionProfile& profile) {
    return pressure_ideal(effective_length(d, profile));
}

double stress_constant_reflection(const Eigen::Matrix2d& rl, const Eigen::Matrix2d& rr,
                                  double gap, const QuadratureConfig& cfg) {
    cfg.validate();
    require(gap > 0.0, "stress_constant_reflection: gap must be > 0");
    auto f = [&](double w) {
        const Eigen::Matrix2d x = rl * rr * std::exp(-2.0 * gap * w);
        return w * w * w * trace_ratio(x);
    };
    const double wmax = cfg.w_cutoff_factor / gap;
    std::vector<double> seeds;
    for (double s = 1.0 / gap; s < wmax; s *= 2.0) seeds.push_back(s);
    QuadResult r = integrate_gk(std::function<double(double)>(f), 0.0, wmax,
                                cfg.rel_tol, cfg.abs_tol, cfg.max_nodes, seeds);
    return r.value / (2.0 * kPi * kPi);
}

}  // namespace casimir
