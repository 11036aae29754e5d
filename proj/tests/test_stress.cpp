#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "casimir/quadrature.hpp"
#include "casimir/stress.hpp"
#include "casimir/transfer.hpp"

using namespace casimir;

namespace {

Stack mirror_cavity(std::vector<Layer> layers) {
    return Stack(BoundarySpec::ideal_mirror(), BoundarySpec::ideal_mirror(),
                 std::move(layers));
}

}  // namespace

TEST_CASE("matrix and scalar integrands agree for diagonal reflections") {
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> ur(-0.95, 0.95), uw(0.1, 5.0);
    for (int i = 0; i < 500; ++i) {
        ReflectionMatrix rl{ur(rng), 0.0, 0.0, ur(rng)};
        ReflectionMatrix rr{ur(rng), 0.0, 0.0, ur(rng)};
        const double w = uw(rng), gap = uw(rng);
        const double a = stress_integrand(rl, rr, w, gap);
        const double b = stress_integrand_scalar(rl, rr, w, gap);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("round-trip gain of one or more is rejected") {
    ReflectionMatrix unit{1.0, 0.0, 0.0, 1.0};
    CHECK_THROWS_AS(stress_integrand(unit, unit, 1e-9, 1e-9), std::runtime_error);
    CHECK_THROWS_AS(stress_integrand_scalar(unit, unit, 1e-9, 1e-9),
                    std::runtime_error);
    CHECK_THROWS_AS(stress_integrand(unit, unit, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("ideal mirrors reproduce the closed-form vacuum pressure") {
    QuadratureConfig cfg;
    for (double d : {0.5, 1.0, 2.0}) {
        Stack s = mirror_cavity({{d, MaterialSpec::vacuum()}});
        StressResult sr = pressure_on_mirror(s, Side::Left, cfg);
        CHECK(sr.pressure() ==
              doctest::Approx(pressure_ideal(d)).epsilon(1e-6));
        CHECK(sr.gap_local == doctest::Approx(d));
        CHECK(sr.slice_index == 0);
        CHECK(sr.node_count > 0);
    }
}

TEST_CASE("vacuum pressure is independent of how the vacuum is sliced") {
    QuadratureConfig cfg;
    Stack one = mirror_cavity({{1.0, MaterialSpec::vacuum()}});
    Stack many = discretize(std::nullopt, BoundarySpec::ideal_mirror(),
                            BoundarySpec::ideal_mirror(), 1.0, 16);
    const double p1 = pressure_on_mirror(one, Side::Left, cfg).pressure();
    const double p2 = pressure_on_mirror(many, Side::Left, cfg).pressure();
    CHECK(p1 == doctest::Approx(p2).epsilon(1e-9));
    // and of which mirror is asked
    const double p3 = pressure_on_mirror(many, Side::Right, cfg).pressure();
    CHECK(p2 == doctest::Approx(p3).epsilon(1e-12));
}

TEST_CASE("constant-reflection single integral cross-checks the 2D path") {
    QuadratureConfig cfg;
    const Eigen::Matrix2d mirror = -Eigen::Matrix2d::Identity();
    const double sigma = stress_constant_reflection(mirror, mirror, 1.0, cfg);
    CHECK(sigma == doctest::Approx(std::numbers::pi * std::numbers::pi / 240.0)
                       .epsilon(1e-8));
}

TEST_CASE("local reflections: open side is dark, half-space side is Fresnel") {
    Stack s(BoundarySpec::open_vacuum(),
            BoundarySpec::half_space(MaterialSpec::isotropic(4.0)),
            {{1.0, MaterialSpec::vacuum()}});
    SpectralPoint sp{0.9, 0.4};
    LocalReflections lr = local_reflections(s, 0, sp);
    CHECK(lr.left.cwiseAbs().maxCoeff() <= 1e-14);
    auto [rs, rp] = fresnel_isotropic(1.0, 1.0, 4.0, 1.0, sp);
    CHECK(lr.right(0, 0) == doctest::Approx(rs).epsilon(1e-12));
    CHECK(lr.right(1, 1) == doctest::Approx(rp).epsilon(1e-12));
}

TEST_CASE("local reflections through a film match the Airy formula") {
    std::mt19937 rng(808);
    std::uniform_real_distribution<double> ue(0.3, 5.0), uk(0.05, 2.5), ut(0.05, 0.8);
    for (int i = 0; i < 100; ++i) {
        const double e2 = ue(rng), e3 = ue(rng), th = ut(rng);
        Stack s(BoundarySpec::open_vacuum(),
                BoundarySpec::half_space(MaterialSpec::isotropic(e3)),
                {{0.5, MaterialSpec::vacuum()}, {th, MaterialSpec::isotropic(e2)}});
        SpectralPoint sp{uk(rng), uk(rng)};
        LocalReflections lr = local_reflections(s, 0, sp);
        auto [as, ap] = airy_reflection(1.0, e2, e3, 1.0, 1.0, 1.0, th, sp);
        CHECK(lr.right(0, 0) == doctest::Approx(as).epsilon(1e-10));
        CHECK(lr.right(1, 1) == doctest::Approx(ap).epsilon(1e-10));
    }
}

TEST_CASE("c-slice cavities: interior slicing never changes the pressure") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    auto prof = CompressionProfile::constant(0.4, 0.6, 0.5);
    double p4 = 0.0, p32 = 0.0;
    {
        Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), 1.0, 4,
                             SliceRule::HarmonicMean);
        p4 = pressure_on_mirror(s, Side::Left, cfg).pressure();
    }
    {
        Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), 1.0, 32,
                             SliceRule::HarmonicMean);
        p32 = pressure_on_mirror(s, Side::Left, cfg).pressure();
    }
    CHECK(std::abs(p4 - p32) <= 1e-10 * std::abs(p4));
    CHECK(p4 == doctest::Approx(pressure_cslice_analytic(1.0, prof)).epsilon(1e-7));
}

TEST_CASE("parallel and serial evaluation are bit-identical") {
    auto prof = CompressionProfile::linear(0.4, 0.6, 1.0, 3.0);
    Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 16,
                         SliceRule::HarmonicMean);
    QuadratureConfig par, ser;
    ser.parallel = false;
    StressResult a = pressure_on_mirror(s, Side::Left, par);
    StressResult b = pressure_on_mirror(s, Side::Left, ser);
    CHECK(a.sigma_xx == b.sigma_xx);   // exact equality
    CHECK(a.node_count == b.node_count);
    CHECK(a.stack_digest == b.stack_digest);
}

TEST_CASE("tiny node budgets fail loudly with a partial result") {
    Stack s = mirror_cavity({{1.0, MaterialSpec::vacuum()}});
    QuadratureConfig cfg;
    cfg.max_nodes = 16;
    cfg.rel_tol = 1e-13;
    CHECK_THROWS_AS(pressure_on_mirror(s, Side::Left, cfg), QuadratureError);
}

TEST_CASE("evaluation slice must be polarization-degenerate") {
    Stack s = mirror_cavity({{1.0, MaterialSpec{2.0, 3.0, 1.5, 1.0, 1.0, 1.0}}});
    QuadratureConfig cfg;
    CHECK_THROWS_AS(stress_at_point(s, 0, cfg), std::invalid_argument);
    CHECK_THROWS_AS(stress_at_point(s, 5, cfg), std::invalid_argument);
}

TEST_CASE("configuration validation") {
    QuadratureConfig cfg;
    cfg.rel_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = QuadratureConfig{};
    cfg.max_nodes = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    CHECK_THROWS_AS(pressure_ideal(0.0), std::invalid_argument);
}
