#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "casimir/materials.hpp"

using namespace casimir;

TEST_CASE("c-slice material tensors") {
    const MaterialSpec m = cslice_material(2.0);
    CHECK(m.eps_x == doctest::Approx(0.5));
    CHECK(m.eps_y == doctest::Approx(0.5));
    CHECK(m.eps_z == doctest::Approx(2.0));
    CHECK(m.mu_x == doctest::Approx(0.5));
    CHECK(m.mu_y == doctest::Approx(0.5));
    CHECK(m.mu_z == doctest::Approx(2.0));
    CHECK(m.is_cslice());
    CHECK_FALSE(m.is_vacuum());
    CHECK(cslice_material(1.0).is_vacuum());
    CHECK(MaterialSpec::isotropic(2.5).is_isotropic());
    CHECK_FALSE(MaterialSpec::isotropic(2.5).is_cslice());
}

TEST_CASE("material validation rejects non-positive components") {
    MaterialSpec m;
    m.eps_z = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = MaterialSpec{};
    m.mu_x = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    CHECK_THROWS_AS(cslice_material(0.0), std::invalid_argument);
    CHECK_THROWS_AS(cslice_material(-2.0), std::invalid_argument);
}

TEST_CASE("virtual width closed forms") {
    // constant m: Delta / m
    auto pc = CompressionProfile::constant(0.4, 0.6, 0.5);
    CHECK(virtual_width(pc) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(compression_factor(pc) == doctest::Approx(0.5).epsilon(1e-14));

    // linear 1 -> 3 over width 0.2: (0.2/2) * ln 3
    auto pl = CompressionProfile::linear(0.4, 0.6, 1.0, 3.0);
    CHECK(virtual_width(pl) == doctest::Approx(0.1 * std::log(3.0)).epsilon(1e-14));

    // harmonic mean lies between the endpoint values
    const double cs = compression_factor(pl);
    CHECK(cs > 1.0);
    CHECK(cs < 3.0);
}

TEST_CASE("table profile integrates its linear interpolant exactly") {
    // Sampled linear ramp must reproduce the closed form regardless of grid.
    std::vector<double> z, v;
    for (int i = 0; i <= 7; ++i) {
        const double t = i / 7.0;
        z.push_back(0.4 + 0.2 * t);
        v.push_back(1.0 + 2.0 * t);
    }
    auto pt = CompressionProfile::table(z, v);
    CHECK(virtual_width(pt) == doctest::Approx(0.1 * std::log(3.0)).epsilon(1e-13));
    CHECK(pt(0.4) == doctest::Approx(1.0));
    CHECK(pt(0.6) == doctest::Approx(3.0));
}

TEST_CASE("effective length") {
    auto pc = CompressionProfile::constant(0.4, 0.6, 0.5);
    CHECK(effective_length(1.0, pc) == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(effective_length(1.0, std::optional<CompressionProfile>{}) == 1.0);
    // compression (m > 1) shortens the effective cavity
    auto pb = CompressionProfile::constant(0.4, 0.6, 2.0);
    CHECK(effective_length(1.0, pb) == doctest::Approx(0.9).epsilon(1e-14));
    // profile support must lie inside the cavity
    auto pout = CompressionProfile::constant(0.8, 1.2, 2.0);
    CHECK_THROWS_AS(effective_length(1.0, pout), std::invalid_argument);
}

TEST_CASE("discretize tiles the cavity exactly") {
    auto prof = CompressionProfile::constant(0.4, 0.6, 0.5);
    for (int N : {4, 7, 64, 1000, 100000}) {
        Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), 1.0, N);
        double sum = 0.0;
        for (const auto& l : s.layers) sum += l.thickness;
        CHECK(std::abs(sum - 1.0) <= 1e-12);
        CHECK(s.layer_count() >= N);
        // profile endpoints are slice edges
        double edge = 0.0;
        bool hit_a = false, hit_b = false;
        for (const auto& l : s.layers) {
            edge += l.thickness;
            if (std::abs(edge - 0.4) < 1e-12) hit_a = true;
            if (std::abs(edge - 0.6) < 1e-12) hit_b = true;
        }
        CHECK(hit_a);
        CHECK(hit_b);
        // slices inside the support are c-slices, outside vacuum
        edge = 0.0;
        for (const auto& l : s.layers) {
            const double mid = edge + 0.5 * l.thickness;
            edge += l.thickness;
            if (mid > 0.4 && mid < 0.6)
                CHECK(l.material.is_cslice());
            else
                CHECK(l.material.is_vacuum());
        }
    }
}

TEST_CASE("no profile gives an all-vacuum stack") {
    Stack s = discretize(std::nullopt, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 2.0, 8);
    CHECK(s.layer_count() == 8);
    for (const auto& l : s.layers) CHECK(l.material.is_vacuum());
    CHECK(s.width == doctest::Approx(2.0));
}

TEST_CASE("harmonic-mean slicing preserves the optical path at any N") {
    auto prof = CompressionProfile::linear(0.4, 0.6, 1.0, 3.0);
    const double exact = virtual_width(prof);
    for (int N : {4, 16, 64, 256}) {
        Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), 1.0, N,
                             SliceRule::HarmonicMean);
        double vw = 0.0, edge = 0.0;
        for (const auto& l : s.layers) {
            const double mid = edge + 0.5 * l.thickness;
            edge += l.thickness;
            if (mid > 0.4 && mid < 0.6) vw += l.thickness / l.material.eps_z;
        }
        CHECK(vw == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("midpoint slicing converges to the optical path as N grows") {
    auto prof = CompressionProfile::linear(0.4, 0.6, 1.0, 3.0);
    const double exact = virtual_width(prof);
    double prev_err = 1.0;
    for (int N : {16, 64, 256}) {
        Stack s = discretize(prof, BoundarySpec::ideal_mirror(),
                             BoundarySpec::ideal_mirror(), 1.0, N);
        double vw = 0.0, edge = 0.0;
        for (const auto& l : s.layers) {
            const double mid = edge + 0.5 * l.thickness;
            edge += l.thickness;
            if (mid > 0.4 && mid < 0.6) vw += l.thickness / l.material.eps_z;
        }
        const double err = std::abs(vw - exact);
        CHECK(err < prev_err);
        prev_err = err;
    }
    CHECK(prev_err < 1e-5);
}

TEST_CASE("profile mini-language") {
    auto pc = parse_profile("const:0.5", 0.4, 0.6);
    CHECK(pc(0.5) == doctest::Approx(0.5));
    CHECK(pc.a == doctest::Approx(0.4));
    CHECK(pc.b == doctest::Approx(0.6));

    auto pl = parse_profile("linear:1,3", 0.0, 1.0);
    CHECK(pl(0.0) == doctest::Approx(1.0));
    CHECK(pl(1.0) == doctest::Approx(3.0));
    CHECK(pl(0.5) == doctest::Approx(2.0));

    const char* path = "test_profile_table.txt";
    {
        std::ofstream f(path);
        f << "# z  m\n0.4 1.0\n0.5 2.0\n0.6 3.0\n";
    }
    auto pt = parse_profile(std::string("table:") + path, 0.0, 0.0);
    CHECK(pt.a == doctest::Approx(0.4));
    CHECK(pt.b == doctest::Approx(0.6));
    CHECK(pt(0.45) == doctest::Approx(1.5));
    std::remove(path);

    CHECK_THROWS_AS(parse_profile("nope:1", 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("const", 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("linear:1", 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(parse_profile("table:/no/such/file", 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("stack digest distinguishes geometry and material changes") {
    auto prof = CompressionProfile::constant(0.4, 0.6, 0.5);
    Stack a = discretize(prof, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 16);
    Stack b = discretize(prof, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 16);
    CHECK(stack_digest(a) == stack_digest(b));

    Stack c = discretize(prof, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 17);
    CHECK(stack_digest(a) != stack_digest(c));

    auto prof2 = CompressionProfile::constant(0.4, 0.6, 0.51);
    Stack d = discretize(prof2, BoundarySpec::ideal_mirror(),
                         BoundarySpec::ideal_mirror(), 1.0, 16);
    CHECK(stack_digest(a) != stack_digest(d));
}
