#include "doctest.h"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "gexpect/montecarlo.hpp"
#include "gexpect/pde.hpp"

using namespace gexpect;

TEST_CASE("mc: constant policy realizes its variance budget exactly") {
    Interval band{0.25, 1.0};
    McDynamics dyn; // arithmetic, x0 = 0
    auto pol = PolicySpec::constant(band, 0.25);
    auto batch = sample_paths(dyn, band, pol, 20000, 16, 1.0, 42);
    for (double qv : batch.qv_final)
        CHECK(qv == 0.25); // dt and alpha^2*dt are exact binary fractions

    double mean = 0.0, var = 0.0;
    for (double x : batch.x_final)
        mean += x;
    mean /= static_cast<double>(batch.n_paths);
    for (double x : batch.x_final)
        var += (x - mean) * (x - mean);
    var /= static_cast<double>(batch.n_paths - 1);
    double se = 0.5 / std::sqrt(20000.0);
    CHECK(std::abs(mean) <= 4.0 * se);       // martingale mean
    CHECK(var == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("mc: batches are seed-deterministic") {
    Interval band{0.25, 1.0};
    McDynamics dyn;
    auto pol = PolicySpec::random_bang_bang(band, 7);
    auto a = sample_paths(dyn, band, pol, 100, 8, 1.0, 42);
    auto b = sample_paths(dyn, band, pol, 100, 8, 1.0, 42);
    auto c = sample_paths(dyn, band, pol, 100, 8, 1.0, 43);
    CHECK(a.x_final == b.x_final);
    CHECK(a.qv_final == b.qv_final);
    CHECK(a.x_final != c.x_final);
}

TEST_CASE("mc: bang-bang controls sit at the band ends and drive <B> exactly") {
    Interval band{0.25, 1.0};
    McDynamics dyn;
    auto pol = PolicySpec::random_bang_bang(band, 3);
    auto batch = sample_paths(dyn, band, pol, 50, 16, 1.0, 9, true);
    bool saw_lo = false, saw_hi = false;
    for (std::size_t p = 0; p < batch.n_paths; ++p)
        for (std::size_t n = 0; n < batch.n_steps; ++n) {
            double a = batch.alpha_traj[p * batch.n_steps + n];
            CHECK((a == band.lo || a == band.hi));
            saw_lo = saw_lo || a == band.lo;
            saw_hi = saw_hi || a == band.hi;
            double dq = batch.qv_traj[p * (batch.n_steps + 1) + n + 1] -
                        batch.qv_traj[p * (batch.n_steps + 1) + n];
            CHECK(dq == doctest::Approx(a * batch.dt).epsilon(1e-14));
        }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("mc: quadratic-variation report is clean and catches corruption") {
    Interval band{0.25, 1.0};
    McDynamics dyn;
    auto pol = PolicySpec::random_bang_bang(band, 11);
    auto batch = sample_paths(dyn, band, pol, 200, 32, 1.0, 5, true);
    auto rep = quad_var_report(batch);
    CHECK(rep.violations == 0);
    CHECK(rep.windows_checked > 0);
    CHECK(rep.min_ratio >= band.lo - 1e-12);
    CHECK(rep.max_ratio <= band.hi + 1e-12);
    CHECK(rep.per_path.size() == batch.n_paths);
    for (const auto& pp : rep.per_path) {
        CHECK(pp.violations == 0);
        CHECK(pp.min_ratio >= band.lo - 1e-12);
        CHECK(pp.max_ratio <= band.hi + 1e-12);
    }

    // Weighted variant with a time profile.
    auto wrep = quad_var_report(batch, FieldExpr::parse("1 + t"));
    CHECK(wrep.weighted_checked);
    CHECK(wrep.weighted_violations == 0);

    // Tampered quadratic variation must be flagged.
    PathBatch bad = batch;
    bad.qv_traj[3] += 10.0 * band.hi * bad.dt;
    CHECK(quad_var_report(bad).violations > 0);

    PathBatch no_traj = sample_paths(dyn, band, pol, 10, 8, 1.0, 5);
    CHECK_THROWS_AS(quad_var_report(no_traj), std::invalid_argument);
}

TEST_CASE("mc: lognormal dynamics reprice Black-Scholes within 3 standard errors") {
    const double r = 0.05, sigma = 0.2, maturity = 1.0;
    Interval band{sigma * sigma, sigma * sigma};
    McDynamics dyn;
    dyn.kind = McKind::LogPrice;
    dyn.x0 = 100.0;
    dyn.rate = r;
    auto pol = PolicySpec::constant(band, sigma * sigma);
    auto batch = sample_paths(dyn, band, pol, 40000, 16, maturity, 2024);
    FieldExpr payoff = FieldExpr::parse("max(x-100,0)");
    auto est = policy_value_estimate(batch, payoff, r);
    double bs = extremal_bs_price(OptionKind::Call, 100.0, 100.0, r, maturity, sigma);
    CHECK(std::abs(est.value - bs) <= 3.0 * est.std_error);
    CHECK(est.std_error > 0.0);
    CHECK(est.std_error < 0.2);
}

TEST_CASE("mc: policy outside the band is rejected") {
    Interval band{0.25, 1.0};
    CHECK_THROWS_AS(PolicySpec::constant(band, 2.0), std::invalid_argument);
    // A surface-driven policy over a wider band gets clipped by the sampler.
    McDynamics dyn;
    auto pol = PolicySpec::constant(band, 0.5);
    CHECK_THROWS_AS(sample_paths(dyn, band, pol, 0, 8, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("mc: gamma-sign policy reads the curvature of the value surface") {
    // Convex surface rows -> sup picks hi, inf picks lo, at every state.
    auto surf = std::make_shared<ValueSurface>();
    surf->grid = GridSpec::make1d(-2.0, 2.0, 21, 1.0, 4);
    surf->rows.assign(5, std::vector<double>(21));
    for (auto& row : surf->rows)
        for (std::size_t i = 0; i < 21; ++i) {
            double x = surf->grid.node(i);
            row[i] = x * x;
        }
    Interval band{0.25, 1.0};
    auto sup_pol = PolicySpec::gamma_sign(band, surf, OptMode::Sup);
    auto inf_pol = PolicySpec::gamma_sign(band, surf, OptMode::Inf);
    for (double x : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
        CHECK(sup_pol.at(0, x, 0, 1) == band.hi);
        CHECK(inf_pol.at(2, x, 0, 1) == band.lo);
    }
}

TEST_CASE("scan: degenerate band equals the closed form and flat payoffs scan flat") {
    McDynamics dyn;
    dyn.kind = McKind::LogPrice;
    dyn.x0 = 100.0;
    dyn.rate = 0.05;
    FieldExpr call = FieldExpr::parse("max(x-100,0)");

    auto degen = representation_scan(call, Interval{0.04, 0.04}, dyn, 1.0, 3);
    double bs = extremal_bs_price(OptionKind::Call, 100.0, 100.0, 0.05, 1.0, 0.2);
    for (const auto& [a, v] : degen.table) {
        CHECK(a == 0.04);
        CHECK(v == doctest::Approx(bs).epsilon(1e-9));
    }

    // Convex payoff: the value increases with variance, so argmax = hi.
    auto scan = representation_scan(call, Interval{0.01, 0.09}, dyn, 1.0, 9);
    CHECK(scan.table.size() == 9);
    CHECK(scan.argmax == 0.09);
    CHECK(scan.argmin == 0.01);
    for (std::size_t k = 1; k < scan.table.size(); ++k)
        CHECK(scan.table[k].second >= scan.table[k - 1].second);

    // Linear payoff: the discounted forward is variance-free.
    auto flat = representation_scan(FieldExpr::parse("x"), Interval{0.01, 0.09}, dyn,
                                    1.0, 5);
    CHECK(flat.max_value - flat.min_value <= 1e-9 * flat.max_value);
    CHECK(flat.max_value == doctest::Approx(100.0).epsilon(1e-9));
}

TEST_CASE("counterexample: window-rate gap prices the band width for every delta") {
    auto rep = counterexample_limit(Interval{1.0, 4.0}, {0.1, 0.01, 0.001});
    REQUIRE(rep.rows.size() == 3);
    for (const auto& [delta, value] : rep.rows) {
        (void)delta;
        CHECK(value == 3.0);
    }
    CHECK(rep.qs_limit == 0.0);

    auto degen = counterexample_limit(Interval{0.25, 0.25}, {0.1});
    CHECK(degen.rows[0].second == 0.0);

    auto vols = counterexample_limit(Interval{0.04, 0.09}, {0.5});
    CHECK(vols.rows[0].second == doctest::Approx(0.05).epsilon(1e-15));
}
