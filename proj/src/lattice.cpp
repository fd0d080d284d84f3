#include "gexpect/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gexpect {

namespace {

/// x-only coefficient fields evaluated once per solve.
struct NodeCoeffs {
    std::size_t nx = 0;
    std::size_t dim = 0;                 // control dimension d
    std::vector<double> b;               // nx (0 when drift_b empty)
    std::vector<double> sig2;            // dim * nx
    std::vector<double> h;               // dim * nx (0 when h empty)
    std::vector<double> x;               // node coordinates
};

NodeCoeffs evaluate_coeffs(const ModelSpec& model, const GridSpec& grid) {
    if (grid.state_dim() != 1)
        throw std::invalid_argument("lattice: state dimension must be 1");
    if (model.sigma.size() != model.control_dim())
        throw std::invalid_argument("lattice: sigma must have one field per band");
    NodeCoeffs c;
    c.nx = grid.nx[0];
    c.dim = model.control_dim();
    c.x.resize(c.nx);
    c.b.assign(c.nx, 0.0);
    c.sig2.resize(c.dim * c.nx);
    c.h.assign(c.dim * c.nx, 0.0);
    for (std::size_t i = 0; i < c.nx; ++i) {
        double xi = grid.node(i);
        c.x[i] = xi;
        auto ctx = EvalContext::at_x(xi);
        if (!model.drift_b.empty())
            c.b[i] = model.drift_b.eval(ctx);
        for (std::size_t j = 0; j < c.dim; ++j) {
            double s = model.sigma[j].eval(ctx);
            c.sig2[j * c.nx + i] = s * s;
            if (!model.h.empty())
                c.h[j * c.nx + i] = model.h[j].eval(ctx);
        }
    }
    return c;
}

/// Core step over precomputed coefficients. `next` is u at t_{n+1};
/// outputs w (pre-driver), the post-driver values and the chosen vertices.
void step_core(const std::vector<double>& next, const NodeCoeffs& c, const ModelSpec& model,
               const GridSpec& grid, const StepOptions& opts, StepResult& out) {
    const std::size_t nx = c.nx;
    const std::size_t d = c.dim;
    const double dt = grid.dt();
    const double dx = grid.dx();
    const OptMode mode = opt_mode(model.mode);
    bool three_band = model.box_drift || model.box_diffusion || model.box_driver;
    if (three_band && !(model.box_drift && model.box_diffusion && model.box_driver))
        throw std::invalid_argument("lattice: three-band models need all three boxes");
    const UncertaintyBox* single_box = &model.box;
    if (three_band) {
        if (model.box_drift->dimension() != d || model.box_diffusion->dimension() != d ||
            model.box_driver->dimension() != d)
            throw std::invalid_argument("lattice: box dimensions must agree");
        // Equal degenerate boxes carry no uncertainty: fold to the single-box
        // path so the result matches the one-band run bitwise.
        bool degenerate = true;
        for (std::size_t j = 0; j < d && degenerate; ++j) {
            const auto& b1 = model.box_drift->bands[j];
            const auto& b2 = model.box_diffusion->bands[j];
            const auto& b3 = model.box_driver->bands[j];
            degenerate = b1.lo == b1.hi && b2.lo == b2.hi && b3.lo == b3.hi &&
                         b1.lo == b2.lo && b2.lo == b3.lo;
        }
        if (degenerate) {
            three_band = false;
            single_box = &*model.box_diffusion;
        }
    }

    out.values.assign(nx, 0.0);
    out.pre_driver.assign(nx, 0.0);
    out.vertices.assign(nx * d, BandEnd::Lo);

    std::vector<double> coeff(d), cdrift(d), cdiff(d), cdriver(d);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
        double up2 = (next[i + 1] - 2.0 * next[i] + next[i - 1]) / (dx * dx);
        double dfwd = (next[i + 1] - next[i]) / dx;
        double dbwd = (next[i] - next[i - 1]) / dx;
        double bi = c.b[i];
        double c0 = bi * (bi >= 0.0 ? dfwd : dbwd);
        double yf = opts.frozen_f_row ? (*opts.frozen_f_row)[i] : next[i];
        double value;
        for (std::size_t j = 0; j < d; ++j) {
            double hij = c.h[j * nx + i];
            cdrift[j] = hij * (hij >= 0.0 ? dfwd : dbwd);
            cdiff[j] = 0.5 * c.sig2[j * nx + i] * up2;
            double fj = 0.0;
            if (!model.driver_f.empty())
                fj = model.driver_f[j].eval(EvalContext::at_xy(c.x[i], yf));
            if (opts.extra_alpha_coeff)
                fj += (*opts.extra_alpha_coeff)[j * nx + i];
            cdriver[j] = fj;
        }
        if (three_band) {
            auto rdrift = optimize_box_affine(0.0, cdrift, *model.box_drift, mode);
            auto rdiff = optimize_box_affine(0.0, cdiff, *model.box_diffusion, mode);
            auto rdriver = optimize_box_affine(0.0, cdriver, *model.box_driver, mode);
            value = c0 + rdrift.value + rdiff.value + rdriver.value;
            for (std::size_t j = 0; j < d; ++j)
                out.vertices[i * d + j] = rdiff.vertex[j];
        } else {
            for (std::size_t j = 0; j < d; ++j)
                coeff[j] = cdrift[j] + cdiff[j] + cdriver[j];
            auto r = optimize_box_affine(c0, coeff, *single_box, mode);
            value = r.value;
            for (std::size_t j = 0; j < d; ++j)
                out.vertices[i * d + j] = r.vertex[j];
        }
        out.pre_driver[i] = next[i] + dt * value;
    }
    // Zero second difference at both ends (linear extrapolation of w). A
    // 3-node grid has a single interior value, which underdetermines the
    // extrapolation; carry the previous row's boundary slopes instead.
    auto& w = out.pre_driver;
    if (nx == 3) {
        w[0] = w[1] + (next[0] - next[1]);
        w[2] = w[1] + (next[2] - next[1]);
    } else {
        w[0] = 2.0 * w[1] - w[2];
        w[nx - 1] = 2.0 * w[nx - 2] - w[nx - 3];
    }
    for (std::size_t j = 0; j < d; ++j) {
        out.vertices[0 * d + j] = out.vertices[1 * d + j];
        out.vertices[(nx - 1) * d + j] = out.vertices[(nx - 2) * d + j];
    }

    for (std::size_t i = 0; i < nx; ++i) {
        double extra = 0.0;
        if (!model.driver_g.empty()) {
            double yg = opts.frozen_g_row ? (*opts.frozen_g_row)[i] : w[i];
            extra += model.driver_g.eval(EvalContext::at_xy(c.x[i], yg));
        }
        if (opts.extra_constant)
            extra += (*opts.extra_constant)[i];
        out.values[i] = w[i] + dt * extra;
    }
}

} // namespace

StepResult step_expectation(const std::vector<double>& next, const ModelSpec& model,
                            const GridSpec& grid, [[maybe_unused]] std::size_t time_index,
                            const StepOptions& opts) {
    grid.validate();
    NodeCoeffs c = evaluate_coeffs(model, grid);
    if (next.size() != c.nx)
        throw std::invalid_argument("step_expectation: row size mismatch");
    StepResult out;
    step_core(next, c, model, grid, opts, out);
    return out;
}

SolveResult backward_solve(std::vector<double> terminal, const ModelSpec& model,
                           const GridSpec& grid, const SolveHooks* hooks) {
    grid.validate();
    check_cfl(model, grid);
    NodeCoeffs c = evaluate_coeffs(model, grid);
    if (terminal.size() != c.nx)
        throw std::invalid_argument("backward_solve: terminal size mismatch");

    SolveResult res;
    res.surface.grid = grid;
    res.surface.rows.assign(grid.nt + 1, {});
    res.surface.rows[grid.nt] = std::move(terminal);
    res.policy.grid = grid;
    res.policy.control_dim = c.dim;
    res.policy.vertices.assign(grid.nt, {});

    StepResult step;
    for (std::size_t n = grid.nt; n-- > 0;) {
        StepOptions opts;
        if (hooks && hooks->options_for_step)
            opts = hooks->options_for_step(n);
        step_core(res.surface.rows[n + 1], c, model, grid, opts, step);
        if (hooks && hooks->on_step)
            hooks->on_step(n, step);
        res.surface.rows[n] = std::move(step.values);
        res.policy.vertices[n] = std::move(step.vertices);
    }
    return res;
}

SolveResult conditional_expectation(const ModelSpec& model, const GridSpec& grid) {
    if (model.terminal.empty())
        throw std::invalid_argument("conditional_expectation: model has no terminal field");
    std::vector<double> terminal(grid.nx[0]);
    for (std::size_t i = 0; i < terminal.size(); ++i)
        terminal[i] = model.terminal(grid.node(i));
    return backward_solve(std::move(terminal), model, grid);
}

double quadvar_functional(const FieldExpr& phi, double t, Interval band, OptMode mode,
                          std::size_t na) {
    if (!band.valid() || t <= 0.0 || na < 2)
        throw std::invalid_argument("quadvar_functional: bad arguments");
    const std::size_t steps = na;
    const double dt = t / static_cast<double>(steps);
    // Accumulator grid over the reachable range [0, hi * t], with pitch an
    // exact divisor of the largest per-step increment hi * dt so the extreme
    // control chain lands on grid nodes (endpoint optima come out exact).
    const std::size_t m = na * steps + 1;
    const double vmax = band.hi * t;
    if (vmax == 0.0)
        return phi(0.0);
    const double dv = band.hi * dt / static_cast<double>(na);
    std::vector<double> value(m), nextv(m);
    for (std::size_t k = 0; k < m; ++k)
        value[k] = phi(dv * static_cast<double>(k));

    auto interp = [&](const std::vector<double>& row, double v) {
        double pos = v / dv;
        if (pos <= 0.0)
            return row.front();
        if (pos >= static_cast<double>(m - 1))
            return row.back();
        auto k = static_cast<std::size_t>(pos);
        double wgt = pos - static_cast<double>(k);
        return (1.0 - wgt) * row[k] + wgt * row[k + 1];
    };

    std::vector<double> controls(na);
    for (std::size_t a = 0; a < na; ++a)
        controls[a] = band.lo + (band.hi - band.lo) * static_cast<double>(a) /
                                    static_cast<double>(na - 1);

    const bool sup = (mode == OptMode::Sup);
    for (std::size_t s = 0; s < steps; ++s) {
        for (std::size_t k = 0; k < m; ++k) {
            double v = dv * static_cast<double>(k);
            double best = interp(value, v + controls[0] * dt);
            for (std::size_t a = 1; a < na; ++a) {
                double cand = interp(value, v + controls[a] * dt);
                if (sup ? cand > best : cand < best)
                    best = cand;
            }
            nextv[k] = best;
        }
        value.swap(nextv);
    }
    return value.front();
}

} // namespace gexpect
