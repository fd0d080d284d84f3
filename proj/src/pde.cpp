#include "gexpect/pde.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace gexpect {

SolveResult solve_hjb(const ModelSpec& model, const GridSpec& grid) {
    return conditional_expectation(model, grid);
}

namespace {

ValueSurface solve_gheat_2d(const FieldExpr& phi, const UncertaintyBox& box,
                            const GridSpec& grid, OptMode mode) {
    const std::size_t n1 = grid.nx[0], n2 = grid.nx[1];
    if (n1 < 3 || n2 < 3)
        throw std::invalid_argument("solve_gheat: need at least 3 nodes per dim");
    const double dt = grid.dt();
    const double dx1 = grid.dx(0), dx2 = grid.dx(1);
    double rate = box.bands[0].hi / (dx1 * dx1) + box.bands[1].hi / (dx2 * dx2);
    if (dt * rate > 1.0 + 1e-12)
        throw CflError(dt, 1.0 / rate);

    ValueSurface s;
    s.grid = grid;
    s.rows.assign(grid.nt + 1, std::vector<double>(n1 * n2));
    auto& term = s.rows[grid.nt];
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t k = 0; k < n2; ++k) {
            EvalContext ctx;
            ctx.x1 = grid.node(i, 0);
            ctx.x2 = grid.node(k, 1);
            term[i * n2 + k] = phi.eval(ctx);
        }

    auto gval = [&](double a, const Interval& band) {
        return (mode == OptMode::Sup ? g_sup(a, band) : g_star(a, band)).value;
    };
    for (std::size_t n = grid.nt; n-- > 0;) {
        const auto& u = s.rows[n + 1];
        auto& w = s.rows[n];
        for (std::size_t i = 1; i + 1 < n1; ++i)
            for (std::size_t k = 1; k + 1 < n2; ++k) {
                std::size_t c = i * n2 + k;
                double d1 = (u[c + n2] - 2.0 * u[c] + u[c - n2]) / (dx1 * dx1);
                double d2 = (u[c + 1] - 2.0 * u[c] + u[c - 1]) / (dx2 * dx2);
                w[c] = u[c] + dt * (gval(d1, box.bands[0]) + gval(d2, box.bands[1]));
            }
        // Linear extrapolation: dim-0 edges on interior columns, then dim-1
        // edges (including corners) from the completed rows.
        for (std::size_t k = 1; k + 1 < n2; ++k) {
            w[0 * n2 + k] = 2.0 * w[1 * n2 + k] - w[2 * n2 + k];
            w[(n1 - 1) * n2 + k] = 2.0 * w[(n1 - 2) * n2 + k] - w[(n1 - 3) * n2 + k];
        }
        for (std::size_t i = 0; i < n1; ++i) {
            w[i * n2 + 0] = 2.0 * w[i * n2 + 1] - w[i * n2 + 2];
            w[i * n2 + n2 - 1] = 2.0 * w[i * n2 + n2 - 2] - w[i * n2 + n2 - 3];
        }
    }
    return s;
}

} // namespace

ValueSurface solve_gheat(const FieldExpr& phi, const UncertaintyBox& box,
                         const GridSpec& grid, OptMode mode) {
    grid.validate();
    if (box.dimension() != grid.state_dim())
        throw std::invalid_argument("solve_gheat: box dimension must match the grid");
    if (grid.state_dim() == 2)
        return solve_gheat_2d(phi, box, grid, mode);
    ModelSpec model = ModelSpec::heat(
        box, phi, mode == OptMode::Sup ? ExpectationMode::Sub : ExpectationMode::Super);
    return std::move(conditional_expectation(model, grid).surface);
}

void BSBSpec::validate() const {
    if (payoff.empty())
        throw std::invalid_argument("BSBSpec: payoff is required");
    if (!(0.0 <= sigma_lo && sigma_lo <= sigma_hi) || sigma_hi <= 0.0)
        throw std::invalid_argument("BSBSpec: need 0 <= sigma_lo <= sigma_hi, "
                                    "sigma_hi > 0");
    if (rate < 0.0)
        std::fputs("warning: negative rate in BSBSpec\n", stderr);
    if (!(spot > 0.0) || !(maturity > 0.0))
        throw std::invalid_argument("BSBSpec: spot and maturity must be positive");
    if (nx < 5)
        throw std::invalid_argument("BSBSpec: nx must be >= 5");
    if (!(cfl_fraction > 0.0 && cfl_fraction <= 1.0))
        throw std::invalid_argument("BSBSpec: cfl_fraction must be in (0, 1]");
}

BSBResult bsb_price(const BSBSpec& spec) {
    spec.validate();
    const double x0 = std::log(spec.spot);
    const double half = spec.width_stddevs * spec.sigma_hi * std::sqrt(spec.maturity);

    BSBResult res;
    // Place a node exactly at the spot's log coordinate.
    const double dx = 2.0 * half / static_cast<double>(spec.nx - 1);
    const auto center = (spec.nx - 1) / 2;
    GridSpec grid = GridSpec::make1d(x0 - static_cast<double>(center) * dx,
                                     x0 + static_cast<double>(spec.nx - 1 - center) * dx,
                                     spec.nx, spec.maturity, 1, /*log_space=*/true);

    ModelSpec model;
    model.box = UncertaintyBox::one(spec.sigma_lo * spec.sigma_lo,
                                    spec.sigma_hi * spec.sigma_hi);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", spec.rate);
    model.drift_b = FieldExpr::parse(buf);
    model.h = {FieldExpr::parse("-0.5")};
    model.sigma = {FieldExpr::parse("1")};
    std::snprintf(buf, sizeof(buf), "-(%.17g)*y", spec.rate);
    model.driver_g = spec.rate != 0.0 ? FieldExpr::parse(buf) : FieldExpr();
    model.lipschitz_k = std::abs(spec.rate);
    model.mode = spec.side == BSBSide::Offer ? ExpectationMode::Sub
                                             : ExpectationMode::Super;

    std::size_t nt = spec.nt;
    if (nt == 0) {
        double dt_max = max_stable_dt(model, grid);
        nt = static_cast<std::size_t>(
            std::ceil(spec.maturity / (spec.cfl_fraction * dt_max)));
    }
    grid.nt = std::max<std::size_t>(nt, 1);

    // Terminal data: payoff of the price at each log node.
    std::vector<double> terminal(spec.nx);
    for (std::size_t i = 0; i < spec.nx; ++i)
        terminal[i] = spec.payoff(std::exp(grid.node(i)));

    SolveResult solved = backward_solve(std::move(terminal), model, grid);
    res.price = solved.surface.interp_at0(x0);
    res.surface = std::move(solved.surface);
    res.policy = std::move(solved.policy);
    res.model = std::move(model);
    res.grid = grid;
    return res;
}

SolveResult multi_band_hjb(const ModelSpec& model, const GridSpec& grid) {
    if (!(model.box_drift && model.box_diffusion && model.box_driver))
        throw std::invalid_argument("multi_band_hjb: all three boxes are required");
    return conditional_expectation(model, grid);
}

double residual_check(const FieldExpr& u, const ModelSpec& model,
                      const SampleBox& samples) {
    if (u.empty())
        throw std::invalid_argument("residual_check: solution field required");
    if (samples.nt < 2 || samples.nx < 2)
        throw std::invalid_argument("residual_check: need at least 2 samples per axis");
    const double eps1 = 1e-5; // first derivatives
    const double eps2 = 1e-3; // second derivative
    const std::size_t d = model.control_dim();
    const OptMode mode = opt_mode(model.mode);

    auto uat = [&](double t, double x) { return u.eval(EvalContext::at_tx(t, x)); };
    double worst = 0.0;
    std::vector<double> coeff(d);
    for (std::size_t it = 0; it < samples.nt; ++it) {
        double t = samples.t_min + (samples.t_max - samples.t_min) *
                                       static_cast<double>(it) /
                                       static_cast<double>(samples.nt - 1);
        for (std::size_t ix = 0; ix < samples.nx; ++ix) {
            double x = samples.x_min + (samples.x_max - samples.x_min) *
                                           static_cast<double>(ix) /
                                           static_cast<double>(samples.nx - 1);
            double ut = (uat(t + eps1, x) - uat(t - eps1, x)) / (2.0 * eps1);
            double ux = (uat(t, x + eps1) - uat(t, x - eps1)) / (2.0 * eps1);
            double uxx = (uat(t, x + eps2) - 2.0 * uat(t, x) + uat(t, x - eps2)) /
                         (eps2 * eps2);
            double uval = uat(t, x);
            auto ctx = EvalContext::at_x(x);
            double c0 = model.drift_b.empty() ? 0.0 : model.drift_b.eval(ctx) * ux;
            for (std::size_t j = 0; j < d; ++j) {
                double sig = model.sigma[j].eval(ctx);
                double cj = 0.5 * sig * sig * uxx;
                if (!model.h.empty())
                    cj += model.h[j].eval(ctx) * ux;
                if (!model.driver_f.empty())
                    cj += model.driver_f[j].eval(EvalContext::at_xy(x, uval));
                coeff[j] = cj;
            }
            double ham = optimize_box_affine(c0, coeff, model.box, mode).value;
            double gv = model.driver_g.empty()
                            ? 0.0
                            : model.driver_g.eval(EvalContext::at_xy(x, uval));
            worst = std::max(worst, std::abs(ut + ham + gv));
        }
    }
    return worst;
}

} // namespace gexpect
