#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "vdwmix/field_stats.hpp"
#include "vdwmix/grid.hpp"

using namespace vdwmix;
using testutil::case1_params;
using testutil::case2_params;

TEST_CASE("grid construction") {
    const Grid1D gn = make_grid(4, BoundaryKind::Neumann);
    CHECK(gn.h == doctest::Approx(0.25));
    REQUIRE(gn.points() == 4);
    CHECK(gn.nodes[0] == doctest::Approx(0.125));
    CHECK(gn.nodes[3] == doctest::Approx(0.875));

    const Grid1D gd = make_grid(4, BoundaryKind::Dirichlet);
    REQUIRE(gd.points() == 5);
    CHECK(gd.nodes[0] == 0.0);
    CHECK(gd.nodes[4] == 1.0);

    CHECK_THROWS_AS(make_grid(1, BoundaryKind::Neumann), std::invalid_argument);
}

TEST_CASE("quadrature weights sum to the domain length") {
    for (auto kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
        const Grid1D g = make_grid(17, kind);
        const auto w = quadrature_weights(g);
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("endpoint calibration") {
    SUBCASE("hard-sphere closed form: ctot/(1 - ctot) = 1") {
        MixtureParams p;
        p.n = 2;
        p.a = {1e-300, 1e-300, 1e-300, 1e-300};
        p.b = {1.0, 1.0};
        const State s = calibrate_endpoint(p, {{0.3, 0.7}}, 1.0);
        CHECK(s.c[0] + s.c[1] == doctest::Approx(0.5).epsilon(1e-11));
    }
    SUBCASE("small-attraction mixture, equal fractions, p = 1") {
        const State s = calibrate_endpoint(case1_params(), {{0.5, 0.5}}, 1.0);
        CHECK(s.c[0] + s.c[1] == doctest::Approx(0.5715485529287775).epsilon(1e-10));
        CHECK(pressure(case1_params(), s) == doctest::Approx(1.0).epsilon(1e-11));
    }
    SUBCASE("calibration is monotone in the target pressure") {
        const MixtureParams p = case1_params();
        double prev = 0.0;
        for (double target : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const State s = calibrate_endpoint(p, {{0.4, 0.6}}, target);
            const double ctot = s.c[0] + s.c[1];
            CHECK(ctot > prev);
            prev = ctot;
        }
    }
    SUBCASE("vanishing target pressure forces vanishing density") {
        const State s = calibrate_endpoint(case1_params(), {{0.5, 0.5}}, 1e-8);
        CHECK(s.c[0] + s.c[1] < 1e-7);
    }
    SUBCASE("invalid fractions are rejected") {
        CHECK_THROWS_AS(calibrate_endpoint(case1_params(), {{0.5, 0.4}}, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(calibrate_endpoint(case1_params(), {{1.2, -0.2}}, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("initial profile") {
    const MixtureParams p = case1_params();

    SUBCASE("coinciding endpoints give a constant field") {
        ProfileRecipe r;
        r.z_A = {0.4, 0.6};
        r.z_B = {0.4, 0.6};
        r.exponents = {3.0, 3.0};
        r.p_target = 1.0;
        const Field f = initial_profile(p, r, make_grid(16, BoundaryKind::Neumann));
        for (int j = 1; j < f.points(); ++j) {
            CHECK(f.column(j)[0] == doctest::Approx(f.column(0)[0]).epsilon(1e-14));
            CHECK(f.column(j)[1] == doctest::Approx(f.column(0)[1]).epsilon(1e-14));
        }
    }
    SUBCASE("default recipe hits the target pressure at both endpoints") {
        const ProfileRecipe r = default_recipe(2);
        const Field f = initial_profile(p, r, make_grid(201, BoundaryKind::Dirichlet));
        CHECK(pressure(p, f.column(0)) == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(pressure(p, f.column(f.points() - 1)) == doctest::Approx(1.0).epsilon(1e-11));
    }
    SUBCASE("every column is admissible for both shipped parameter sets") {
        for (const auto& params : {case1_params(), case2_params()}) {
            for (auto kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
                const Field f = initial_profile(params, default_recipe(2), make_grid(201, kind));
                for (int j = 0; j < f.points(); ++j) CHECK(admissible(params, f.column(j)));
            }
        }
    }
    SUBCASE("profiles that exit the admissible set are reported") {
        ProfileRecipe r;
        r.z_A = {0.05, 0.95};
        r.z_B = {0.95, 0.05};
        r.exponents = {0.1, 10.0};
        r.p_target = 30.0;
        CHECK_THROWS_AS(initial_profile(p, r, make_grid(64, BoundaryKind::Dirichlet)),
                        std::runtime_error);
    }
}

TEST_CASE("ghost values") {
    const MixtureParams p = case1_params();

    SUBCASE("Neumann ghosts copy the boundary-adjacent interior data") {
        const Field f = testutil::polynomial_field_neumann(8);
        const auto pn = field_pressures(p, f);
        const GhostValues g = ghost_values(f, pn);
        CHECK(g.c_left[0] == f.column(0)[0]);
        CHECK(g.c_right[1] == f.column(7)[1]);
        CHECK(g.p_left == pn[0]);
        CHECK(g.p_right == pn[7]);
        // zero boundary Darcy velocity
        CHECK(-(pn[0] - g.p_left) / f.grid.h == 0.0);
    }
    SUBCASE("Dirichlet ghosts return the fixed endpoint data") {
        const Field f = testutil::polynomial_field_dirichlet(8);
        const auto pn = field_pressures(p, f);
        const GhostValues g = ghost_values(f, pn);
        CHECK(g.c_left[0] == f.column(0)[0]);
        CHECK(g.c_right[0] == f.column(8)[0]);
    }
    SUBCASE("a constant field has constant ghosts") {
        const Field f = testutil::constant_field(make_grid(8, BoundaryKind::Neumann), {{0.2, 0.3}});
        const auto pn = field_pressures(p, f);
        const GhostValues g = ghost_values(f, pn);
        CHECK(g.c_left[0] == 0.2);
        CHECK(g.c_right[1] == 0.3);
        CHECK(g.p_left == g.p_right);
    }
}

TEST_CASE("sampling a constant profile is constant on both grid kinds") {
    const MixtureParams p = case1_params();
    ProfileRecipe r;
    r.z_A = {0.5, 0.5};
    r.z_B = {0.5, 0.5};
    r.exponents = {10.0, 0.1};
    r.p_target = 0.8;
    for (auto kind : {BoundaryKind::Neumann, BoundaryKind::Dirichlet}) {
        const Field f = initial_profile(p, r, make_grid(12, kind));
        for (int j = 1; j < f.points(); ++j)
            CHECK(testutil::inf_diff(f.column(j), f.column(0)) < 1e-13);
    }
}
