#include "casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace casimir {

namespace {

// Gauss-Kronrod 7-15 abscissae (positive half) and weights.
constexpr int kNodes = 15;
constexpr double kX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
    double a, b;
    double integral = 0.0;
    double err = 0.0;
};

void segment_points(const Segment& s, std::vector<double>& pts) {
    const double c = 0.5 * (s.a + s.b), h = 0.5 * (s.b - s.a);
    for (int i = 0; i < 7; ++i) {
        pts.push_back(c - h * kX[i]);
        pts.push_back(c + h * kX[i]);
    }
    pts.push_back(c);
}

void segment_rule(Segment& s, const double* v) {
    // v holds 15 values in the order produced by segment_points.
    const double h = 0.5 * (s.b - s.a);
    double gk = kWK[7] * v[14];
    double g = kWG[3] * v[14];
    for (int i = 0; i < 7; ++i) {
        gk += kWK[i] * (v[2 * i] + v[2 * i + 1]);
        if (i % 2 == 1) g += kWG[i / 2] * (v[2 * i] + v[2 * i + 1]);
    }
    s.integral = gk * h;
    s.err = std::abs((gk - g) * h);
}

}  // namespace

QuadResult integrate_gk(const BatchFn& f, double a, double b,
                        double rel_tol, double abs_tol, long max_evals,
                        const std::vector<double>& seeds) {
    if (!(b > a)) throw std::invalid_argument("integrate_gk: requires b > a");
    if (!(rel_tol > 0.0 && abs_tol > 0.0))
        throw std::invalid_argument("integrate_gk: tolerances must be > 0");

    std::vector<double> edges{a};
    for (double s : seeds)
        if (s > a && s < b) edges.push_back(s);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        segs.push_back({edges[i], edges[i + 1]});

    long evals = 0;
    std::vector<double> pts, vals;
    auto evaluate = [&](std::vector<Segment*> pending) {
        pts.clear();
        for (Segment* s : pending) segment_points(*s, pts);
        vals.resize(pts.size());
        f(pts, vals);
        evals += static_cast<long>(pts.size());
        for (std::size_t i = 0; i < pending.size(); ++i)
            segment_rule(*pending[i], vals.data() + i * kNodes);
    };

    {
        std::vector<Segment*> all;
        for (auto& s : segs) all.push_back(&s);
        evaluate(all);
    }

    auto totals = [&] {
        QuadResult r;
        for (const auto& s : segs) {
            r.value += s.integral;
            r.error += s.err;
        }
        r.evals = evals;
        return r;
    };

    for (;;) {
        QuadResult t = totals();
        if (t.error <= std::max(abs_tol, rel_tol * std::abs(t.value))) return t;
        if (evals + 2 * kNodes > max_evals)
            throw QuadratureError("integrate_gk: node budget exhausted", t);

        // Bisect the segment with the largest error (ties: leftmost).
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].err > segs[worst].err) worst = i;
        const Segment old = segs[worst];
        const double mid = 0.5 * (old.a + old.b);
        if (!(mid > old.a && mid < old.b))
            throw QuadratureError("integrate_gk: interval too small to bisect", t);
        segs[worst] = {old.a, mid};
        segs.insert(segs.begin() + worst + 1, {mid, old.b});
        evaluate({&segs[worst], &segs[worst + 1]});
    }
}

QuadResult integrate_gk(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, double abs_tol, long max_evals,
                        const std::vector<double>& seeds) {
    BatchFn batch = [&](const std::vector<double>& pts, std::vector<double>& out) {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
    };
    return integrate_gk(batch, a, b, rel_tol, abs_tol, max_evals, seeds);
}

}  // namespace casimir
