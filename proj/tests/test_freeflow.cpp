// Free-flow fluxes, penalty, local solves, and the named edge cases.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldgflow/coupling.hpp"
#include "ldgflow/freeflow.hpp"
#include "ldgflow/mms.hpp"

#include <cmath>
#include <random>

using namespace ldgflow;

TEST_CASE("lambda penalty values and lower bound") {
    CHECK(flux::lambda_interior(0.0, 0.0) == doctest::Approx(1.0));
    CHECK(flux::lambda_inflow(0.75) == doctest::Approx(2.0)); // 0.75 + sqrt(1.5625)
    CHECK(flux::lambda_lower_bound(0.75) == doctest::Approx(1.98744).epsilon(1e-5));
    CHECK(flux::lambda_inflow(0.75) >= flux::lambda_lower_bound(0.75));

    std::mt19937_64 rng(4321);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    for (int it = 0; it < 1000000; ++it) {
        const double a = d(rng);
        const double b = d(rng);
        const double m = 0.5 * (std::abs(a) + std::abs(b));
        CHECK(flux::lambda_interior(a, b) >= flux::lambda_lower_bound(m));
        CHECK(flux::lambda_inflow(a) >= flux::lambda_lower_bound(a));
    }
}

TEST_CASE("R_H flux table") {
    // equal traces reduce to the single-valued flux
    CHECK(flux::r_h_interior(0.4, 0.4, 1.0) == doctest::Approx(0.4));
    // average of distinct traces
    CHECK(flux::r_h_interior(1.0, 3.0, 1.0) == doctest::Approx(2.0));
    // outflow uses the datum regardless of the interior trace
    CHECK(flux::r_h_outflow(0.3, 1.0) == doctest::Approx(0.3));
    CHECK(flux::r_h_inflow(0.7, -1.0) == doctest::Approx(-0.7));
}

TEST_CASE("R_U flux table edge cases") {
    const double g = 1.0;
    // continuous traces: penalty vanishes, single-valued physical flux
    const double lam = flux::lambda_interior(0.8, 0.8);
    CHECK(flux::r_u_interior_lateral(0.8, 0.8, 5.0, 5.0, lam, 1.0, g) ==
          doctest::Approx(0.8 * 0.8 + 5.0));
    // inflow with matching data: penalty vanishes
    const double li = flux::lambda_inflow(0.5);
    CHECK(flux::r_u_inflow(0.5, 0.5, 5.0, li, 1.0, g) == doctest::Approx(0.25 + 5.0));
    // bottom face with zero exchange flux: only the elevation term remains
    CHECK(flux::r_u_bottom(0.7, 5.0, 0.0, 0.25, g) == doctest::Approx(5.0 * 0.25));
}

TEST_CASE("S_U flux table edge cases") {
    // interior central value, single-valued for continuous Q
    CHECK(flux::s_u_interior(0.3, -0.1, 0.3, -0.1, 0.6, 0.8) ==
          doctest::Approx(0.3 * 0.6 - 0.1 * 0.8));
    CHECK(flux::s_u_one_sided(0.3, -0.1, 1.0, 0.0) == doctest::Approx(0.3));
    // bottom friction closure: C_f u
    FrictionSpec lin{FrictionSpec::Law::linear, 0.01};
    CHECK(interface_friction(2.0, lin) == doctest::Approx(0.02));
}

TEST_CASE("flux conservativity under orientation swap") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int it = 0; it < 20000; ++it) {
        const double um = d(rng), up = d(rng), xm = d(rng), xp = d(rng);
        const double g = 1.0;
        { // interior lateral: swap traces and flip the normal
            const double lam = flux::lambda_interior(um, up);
            const double a = flux::r_u_interior_lateral(um, up, xm, xp, lam, 1.0, g);
            const double b = flux::r_u_interior_lateral(up, um, xp, xm, lam, -1.0, g);
            CHECK(a == doctest::Approx(-b).epsilon(1e-13));
            CHECK(flux::r_h_interior(um, up, 1.0) ==
                  doctest::Approx(-flux::r_h_interior(up, um, -1.0)).epsilon(1e-13));
        }
        { // interior horizontal: the upwind value stays the below-element trace
            const double wb = d(rng), xi = d(rng);
            const double nx = 0.1, nz = std::sqrt(1.0 - 0.01);
            const double a = flux::r_u_horizontal(um, up, um, wb, xi, nx, nz, g);
            const double b = flux::r_u_horizontal(up, um, um, wb, xi, -nx, -nz, g);
            CHECK(a == doctest::Approx(-b).epsilon(1e-13));
        }
        { // diffusive central flux
            const double qa = d(rng), qb = d(rng), qc = d(rng), qd2 = d(rng);
            const double a = flux::s_u_interior(qa, qb, qc, qd2, 0.6, 0.8);
            const double b = flux::s_u_interior(qc, qd2, qa, qb, -0.6, -0.8);
            CHECK(a == doctest::Approx(-b).epsilon(1e-13));
        }
    }
}
