#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vdwmix/inversion.hpp"
#include "vdwmix/rng.hpp"
#include "vdwmix/verify.hpp"

using namespace vdwmix;
using testutil::case1_params;

TEST_CASE("round trip through the chemical potential map") {
    const MixtureParams p = case1_params();
    const InversionSettings settings{};
    Rng rng(3);
    double worst = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const State s = sample_admissible_state(p, rng, 0.02, 0.95, 0.02);
        const auto mu = chemical_potentials(p, s);
        const State back = phi_inverse(p, mu, s, settings);
        worst = std::max(worst, testutil::inf_diff(back.c, s.c));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("round trip from the default guess rather than the solution") {
    const MixtureParams p = case1_params();
    const InversionSettings settings{};
    Rng rng(5);
    for (int k = 0; k < 200; ++k) {
        const State s = sample_admissible_state(p, rng, 0.05, 0.9, 0.05);
        const auto mu = chemical_potentials(p, s);
        const State back = phi_inverse(p, mu, default_inversion_guess(p), settings);
        CHECK(testutil::inf_diff(back.c, s.c) <= 1e-9);
    }
}

TEST_CASE("equilibrium state of the small-attraction mixture") {
    const MixtureParams p = case1_params();
    const State eq = equilibrium_state(p, InversionSettings{});

    // pinned by an independent root-finding oracle
    CHECK(eq.c[0] == doctest::Approx(0.22247680391464841).epsilon(1e-9));
    CHECK(eq.c[1] == doctest::Approx(0.36429336355390413).epsilon(1e-9));

    const auto mu = chemical_potentials(p, eq);
    CHECK(std::abs(mu[0]) <= 1e-10);
    CHECK(std::abs(mu[1]) <= 1e-10);

    // en(c^Gamma) = -p(c^Gamma)
    CHECK(free_energy(p, eq) == doctest::Approx(-pressure(p, eq)).epsilon(1e-12));
}

TEST_CASE("equilibrium result does not depend on the iteration budget once converged") {
    const MixtureParams p = case1_params();
    InversionSettings a{};
    a.max_iters = 100;
    InversionSettings b{};
    b.max_iters = 25;
    const State sa = equilibrium_state(p, a);
    const State sb = equilibrium_state(p, b);
    CHECK(sa.c[0] == sb.c[0]);
    CHECK(sa.c[1] == sb.c[1]);
}

TEST_CASE("iterates stay admissible and failures are reported") {
    const MixtureParams p = case1_params();
    const InversionSettings settings{};

    SUBCASE("inadmissible guess is rejected") {
        std::vector<double> mu(2, 0.0);
        CHECK_THROWS_AS(phi_inverse(p, mu, State{{0.9, 0.5}}, settings), std::domain_error);
    }
    SUBCASE("near-vacuum target converges or reports an inversion error") {
        std::vector<double> mu{-1e6, 0.0};
        try {
            const State s = phi_inverse(p, mu, default_inversion_guess(p), settings);
            CHECK(admissible(p, s.c));
        } catch (const InversionError& e) {
            CHECK(e.best_residual() > 0.0);
        }
    }
    SUBCASE("a reachable low-density target works") {
        std::vector<double> mu{-12.0, -4.0};
        const State s = phi_inverse(p, mu, default_inversion_guess(p), settings);
        CHECK(admissible(p, s.c));
        const auto back = chemical_potentials(p, s);
        CHECK(std::abs(back[0] - mu[0]) <= 1e-10);
        CHECK(std::abs(back[1] - mu[1]) <= 1e-10);
    }
}
