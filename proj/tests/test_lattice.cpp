#include "doctest.h"

#include <cmath>

#include "gexpect/analytic.hpp"
#include "gexpect/lattice.hpp"

using namespace gexpect;

namespace {

ModelSpec heat_model(double lo, double hi, const char* phi,
                     ExpectationMode mode = ExpectationMode::Super) {
    return ModelSpec::heat(UncertaintyBox::one(lo, hi), FieldExpr::parse(phi), mode);
}

} // namespace

TEST_CASE("single step on the three-node parabola row") {
    const double h = 0.5;
    GridSpec grid = GridSpec::make1d(-h, h, 3, 0.001, 1);
    std::vector<double> row{h * h, 0.0, h * h};
    const double dt = grid.dt();

    SUBCASE("degenerate band [1,1]") {
        ModelSpec m = heat_model(1.0, 1.0, "x*x");
        auto r = step_expectation(row, m, grid, 0);
        // center: u + dt * (1/2 * sigma^2 * second difference) = 0 + dt * 1
        CHECK(r.values[1] == doctest::Approx(dt).epsilon(1e-14));
    }
    SUBCASE("band [1,4] mode inf picks lo on positive curvature") {
        ModelSpec m = heat_model(1.0, 4.0, "x*x", ExpectationMode::Super);
        auto r = step_expectation(row, m, grid, 0);
        CHECK(r.values[1] == doctest::Approx(dt).epsilon(1e-14));
        CHECK(r.vertices[1] == BandEnd::Lo);
    }
    SUBCASE("band [1,4] mode sup picks hi") {
        ModelSpec m = heat_model(1.0, 4.0, "x*x", ExpectationMode::Sub);
        auto r = step_expectation(row, m, grid, 0);
        CHECK(r.values[1] == doctest::Approx(4.0 * dt).epsilon(1e-14));
        CHECK(r.vertices[1] == BandEnd::Hi);
    }
}

TEST_CASE("linear payoff is a fixed point of the recursion") {
    GridSpec grid = GridSpec::make1d(-2.0, 2.0, 41, 0.02, 10);
    ModelSpec m = heat_model(1.0, 4.0, "x");
    auto r = conditional_expectation(m, grid);
    for (std::size_t n = 0; n < r.surface.rows.size(); ++n)
        for (std::size_t i = 0; i < grid.nx[0]; ++i)
            CHECK(r.surface.at(n, i) == doctest::Approx(grid.node(i)).epsilon(1e-13));
}

TEST_CASE("quadratic payoff matches the Gaussian oracle at the center") {
    const double T = 0.25;
    GridSpec grid = GridSpec::make1d(-5.0, 5.0, 201, T, 1);
    ModelSpec m = heat_model(1.0, 4.0, "x*x", ExpectationMode::Super);
    grid.nt = static_cast<std::size_t>(std::ceil(T / (0.9 * max_stable_dt(m, grid))));
    auto inf_run = conditional_expectation(m, grid);
    CHECK(inf_run.surface.value_at0(0.0) == doctest::Approx(1.0 * T).epsilon(0.02));

    ModelSpec ms = heat_model(1.0, 4.0, "x*x", ExpectationMode::Sub);
    auto sup_run = conditional_expectation(ms, grid);
    CHECK(sup_run.surface.value_at0(0.0) == doctest::Approx(4.0 * T).epsilon(0.02));
}

TEST_CASE("CFL violation is a hard error") {
    GridSpec grid = GridSpec::make1d(-1.0, 1.0, 101, 1.0, 5);
    ModelSpec m = heat_model(1.0, 4.0, "x*x");
    CHECK_THROWS_AS(conditional_expectation(m, grid), CflError);
}

TEST_CASE("driver running term accumulates") {
    // g = 1 adds exactly T to every node (no y dependence).
    GridSpec grid = GridSpec::make1d(-2.0, 2.0, 41, 0.02, 10);
    ModelSpec m = heat_model(1.0, 1.0, "0");
    m.driver_g = FieldExpr::parse("1");
    auto r = conditional_expectation(m, grid);
    CHECK(r.surface.value_at0(0.0) == doctest::Approx(0.02).epsilon(1e-13));
}

TEST_CASE("f-driver enters through the quadratic variation weight") {
    // f = 1, band [lo, hi], payoff 0, mode inf: value = lo * T (adversary
    // minimizes the d<B> clock).
    GridSpec grid = GridSpec::make1d(-2.0, 2.0, 41, 0.01, 20);
    ModelSpec m = heat_model(2.0, 3.0, "0", ExpectationMode::Super);
    m.driver_f = {FieldExpr::parse("1")};
    auto r = conditional_expectation(m, grid);
    CHECK(r.surface.value_at0(0.0) == doctest::Approx(2.0 * 0.01).epsilon(1e-12));
    ModelSpec ms = heat_model(2.0, 3.0, "0", ExpectationMode::Sub);
    ms.driver_f = {FieldExpr::parse("1")};
    auto rs = conditional_expectation(ms, grid);
    CHECK(rs.surface.value_at0(0.0) == doctest::Approx(3.0 * 0.01).epsilon(1e-12));
}

TEST_CASE("deterministic: identical runs produce identical bits") {
    GridSpec grid = GridSpec::make1d(-2.0, 2.0, 81, 0.05, 100);
    ModelSpec m = heat_model(1.0, 4.0, "max(x,0)");
    auto a = conditional_expectation(m, grid);
    auto b = conditional_expectation(m, grid);
    for (std::size_t n = 0; n < a.surface.rows.size(); ++n)
        CHECK(a.surface.rows[n] == b.surface.rows[n]);
}

TEST_CASE("quadvar functional: monotone and parabola cases") {
    Interval band{1.0, 4.0};
    const double t = 0.5;
    SUBCASE("identity, sup picks the top rate exactly") {
        double v = quadvar_functional(FieldExpr::parse("x"), t, band, OptMode::Sup, 48);
        CHECK(v == doctest::Approx(band.hi * t).epsilon(1e-12));
        double w = quadvar_functional(FieldExpr::parse("x"), t, band, OptMode::Inf, 48);
        CHECK(w == doctest::Approx(band.lo * t).epsilon(1e-9));
    }
    SUBCASE("interior parabola vertex is attainable") {
        // phi(v) = -(v - c)^2 with c = t*(lo+hi)/2 inside the reachable range
        double c = t * (band.lo + band.hi) / 2.0;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "-(x-%.17g)*(x-%.17g)", c, c);
        double v = quadvar_functional(FieldExpr::parse(buf), t, band, OptMode::Sup, 64);
        CHECK(v == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(std::abs(v) < 1e-4);
    }
    SUBCASE("piecewise payoff with endpoint optimum matches the dense scan") {
        FieldExpr phi = FieldExpr::parse("abs(x-0.2)");
        double v = quadvar_functional(phi, t, band, OptMode::Sup, 64);
        double best = 0.0;
        for (int k = 0; k <= 10000; ++k) {
            double a = band.lo + (band.hi - band.lo) * k / 10000.0;
            best = std::max(best, phi(a * t));
        }
        CHECK(v == doctest::Approx(best).epsilon(1e-6));
    }
}
