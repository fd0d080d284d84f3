#include "gexpect/gbsde.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gexpect {

namespace {

double band_hi_max(const UncertaintyBox& box) {
    double hi = 0.0;
    for (const auto& b : box.bands)
        hi = std::max(hi, b.hi);
    return hi;
}

/// Trapezoid rule for int_0^T e^{-2 beta t} max_i |dY_t(x_i)| dt.
double beta_norm(const ValueSurface& ya, const ValueSurface& yb, double beta) {
    const double dt = ya.grid.dt();
    double acc = 0.0;
    const std::size_t last = ya.rows.size() - 1;
    for (std::size_t n = 0; n <= last; ++n) {
        double m = 0.0;
        for (std::size_t i = 0; i < ya.rows[n].size(); ++i)
            m = std::max(m, std::abs(ya.rows[n][i] - yb.rows[n][i]));
        double w = (n == 0 || n == last) ? 0.5 : 1.0;
        acc += w * std::exp(-2.0 * beta * ya.time_of(n)) * m;
    }
    return acc * dt;
}

bool drivers_use_y(const ModelSpec& model) {
    if (!model.driver_g.empty() && model.driver_g.uses_y())
        return true;
    for (const auto& f : model.driver_f)
        if (!f.empty() && f.uses_y())
            return true;
    return false;
}

} // namespace

PicardResult picard_solve(const ModelSpec& model, const GridSpec& grid, double tol,
                          std::size_t max_iter, double y0) {
    grid.validate();
    check_cfl(model, grid);
    if (!(tol > 0.0))
        throw std::invalid_argument("picard_solve: tol must be positive");
    if (model.terminal.empty())
        throw std::invalid_argument("picard_solve: model has no terminal field");

    const std::size_t nx = grid.nx[0];
    std::vector<double> terminal(nx);
    for (std::size_t i = 0; i < nx; ++i)
        terminal[i] = model.terminal(grid.node(i));

    // Y^0 == y0 everywhere; W^0 (frozen g-arguments) likewise.
    ValueSurface prev_y;
    prev_y.grid = grid;
    prev_y.rows.assign(grid.nt + 1, std::vector<double>(nx, y0));
    std::vector<std::vector<double>> prev_w(grid.nt, std::vector<double>(nx, y0));

    const double beta = model.lipschitz_k * (1.0 + band_hi_max(model.box));
    PicardResult res;
    res.diagnostics.beta = beta;
    const bool y_free = !drivers_use_y(model);

    std::vector<std::vector<double>> cur_w(grid.nt);
    for (std::size_t it = 0; it < max_iter; ++it) {
        SolveHooks hooks;
        hooks.options_for_step = [&](std::size_t n) {
            StepOptions o;
            o.frozen_f_row = &prev_y.rows[n + 1];
            o.frozen_g_row = &prev_w[n];
            return o;
        };
        hooks.on_step = [&](std::size_t n, const StepResult& s) {
            cur_w[n] = s.pre_driver;
        };
        SolveResult sweep = backward_solve(terminal, model, grid, &hooks);

        double delta = beta_norm(sweep.surface, prev_y, beta);
        res.diagnostics.deltas.push_back(delta);
        if (res.diagnostics.deltas.size() > 1) {
            double d0 = res.diagnostics.deltas[res.diagnostics.deltas.size() - 2];
            res.diagnostics.ratios.push_back(d0 > 0.0 ? delta / d0 : 0.0);
        }
        prev_y = std::move(sweep.surface);
        prev_w.swap(cur_w);
        res.policy = std::move(sweep.policy);
        res.diagnostics.iterates = it + 1;
        if (delta <= tol || y_free) {
            res.diagnostics.converged = true;
            break;
        }
    }
    if (!res.diagnostics.converged)
        throw std::runtime_error("picard_solve: max_iter sweeps without reaching tol");
    res.surface = std::move(prev_y);
    return res;
}

void LinearBSDECoeffs::validate(double k, double horizon, int samples) const {
    if (xi.empty())
        throw std::invalid_argument("LinearBSDECoeffs: terminal xi is required");
    auto check = [&](const FieldExpr& e, const char* name) {
        if (e.empty())
            return;
        for (int i = 0; i <= samples; ++i) {
            double t = horizon * static_cast<double>(i) / static_cast<double>(samples);
            EvalContext ctx;
            ctx.t = t;
            double v = e.eval(ctx);
            if (!(std::abs(v) <= k * (1.0 + 1e-9) + 1e-12))
                throw std::invalid_argument(std::string("LinearBSDECoeffs: |") + name +
                                            "| exceeds the bound K");
        }
    };
    check(a, "a");
    check(b, "b");
}

ValueSurface linear_bsde_solve(const LinearBSDECoeffs& coeffs, const ModelSpec& model,
                               const GridSpec& grid) {
    grid.validate();
    if (coeffs.xi.empty())
        throw std::invalid_argument("linear_bsde_solve: terminal xi is required");
    if (!coeffs.b.empty()) {
        // Regime (a) only: b must vanish identically.
        for (int i = 0; i <= 100; ++i) {
            EvalContext ctx;
            ctx.t = grid.horizon * static_cast<double>(i) / 100.0;
            if (coeffs.b.eval(ctx) != 0.0)
                throw std::invalid_argument(
                    "linear_bsde_solve: b != 0 needs the tree regime");
        }
    }
    if (!coeffs.big_c.empty() && model.control_dim() != 1)
        throw std::invalid_argument("linear_bsde_solve: C requires a 1-d band");

    ModelSpec dyn = model; // forward dynamics only; the linear driver replaces g, f
    dyn.driver_g = FieldExpr();
    dyn.driver_f.clear();

    const std::size_t nx = grid.nx[0];
    const double dt = grid.dt();
    std::vector<double> q(grid.nt + 1);
    q[0] = 1.0;
    for (std::size_t n = 0; n < grid.nt; ++n) {
        double at = 0.0;
        if (!coeffs.a.empty()) {
            EvalContext ctx;
            ctx.t = dt * static_cast<double>(n);
            at = coeffs.a.eval(ctx);
        }
        q[n + 1] = q[n] * (1.0 + at * dt);
        if (q[n + 1] <= 0.0)
            throw std::invalid_argument("linear_bsde_solve: Q must stay positive");
    }

    std::vector<double> terminal(nx);
    for (std::size_t i = 0; i < nx; ++i)
        terminal[i] = q[grid.nt] * coeffs.xi(grid.node(i));

    std::vector<double> alpha_coeff(nx), constant(nx);
    SolveHooks hooks;
    hooks.options_for_step = [&](std::size_t n) {
        StepOptions o;
        double t = dt * static_cast<double>(n);
        if (!coeffs.big_c.empty()) {
            for (std::size_t i = 0; i < nx; ++i)
                alpha_coeff[i] =
                    q[n + 1] * coeffs.big_c.eval(EvalContext::at_tx(t, grid.node(i)));
            o.extra_alpha_coeff = &alpha_coeff;
        }
        if (!coeffs.big_a.empty()) {
            for (std::size_t i = 0; i < nx; ++i)
                constant[i] =
                    q[n] * coeffs.big_a.eval(EvalContext::at_tx(t, grid.node(i)));
            o.extra_constant = &constant;
        }
        return o;
    };
    SolveResult u = backward_solve(std::move(terminal), dyn, grid, &hooks);
    for (std::size_t n = 0; n <= grid.nt; ++n)
        for (double& v : u.surface.rows[n])
            v /= q[n];
    return std::move(u.surface);
}

double linear_bsde_solve(const LinearBSDECoeffs& coeffs, const TreeSpec& tree,
                         OptMode mode) {
    return linear_tree_formula(tree, coeffs.a, coeffs.b, coeffs.big_a, coeffs.big_c,
                               coeffs.xi, mode);
}

namespace {

bool boxes_equal(const UncertaintyBox& a, const UncertaintyBox& b) {
    if (a.dimension() != b.dimension())
        return false;
    for (std::size_t j = 0; j < a.dimension(); ++j)
        if (a.bands[j].lo != b.bands[j].lo || a.bands[j].hi != b.bands[j].hi)
            return false;
    return true;
}

} // namespace

ComparisonReport comparison_check(const ModelSpec& model1, const ModelSpec& model2,
                                  const GridSpec& grid, double tol,
                                  std::size_t max_iter) {
    grid.validate();
    if (!boxes_equal(model1.box, model2.box))
        throw std::invalid_argument("comparison_check: models must share the box");
    if (model1.terminal.empty() || model2.terminal.empty())
        throw std::invalid_argument("comparison_check: both terminals required");

    ComparisonReport rep;
    rep.hypothesis_ok = true;
    const double slack = 1e-12;

    // xi >= xi_bar on the grid; record the value range for driver sampling.
    double vlo = 0.0, vhi = 0.0;
    for (std::size_t i = 0; i < grid.nx[0]; ++i) {
        double x = grid.node(i);
        double v1 = model1.terminal(x);
        double v2 = model2.terminal(x);
        if (i == 0) {
            vlo = std::min(v1, v2);
            vhi = std::max(v1, v2);
        } else {
            vlo = std::min(vlo, std::min(v1, v2));
            vhi = std::max(vhi, std::max(v1, v2));
        }
        if (v1 < v2 - slack) {
            rep.hypothesis_ok = false;
            rep.detail = "terminal ordering fails";
        }
    }
    double span = std::max(1.0, vhi - vlo);
    vlo -= 0.5 * span;
    vhi += 0.5 * span;

    // g(x, y+delta) >= g_bar(x, y), f likewise, on a sampled (y, delta) grid
    // at a spread of nodes.
    auto driver_ordered = [&](const FieldExpr& up, const FieldExpr& dn,
                              const char* name) {
        if (up.empty() && dn.empty())
            return;
        auto val = [](const FieldExpr& e, double x, double y) {
            return e.empty() ? 0.0 : e.eval(EvalContext::at_xy(x, y));
        };
        for (std::size_t ix = 0; ix < 25 && rep.hypothesis_ok; ++ix) {
            double x = grid.node(ix * (grid.nx[0] - 1) / 24);
            for (int iy = 0; iy < 50 && rep.hypothesis_ok; ++iy) {
                double y = vlo + (vhi - vlo) * iy / 49.0;
                for (int id = 0; id < 50; ++id) {
                    double delta = (vhi - vlo) * id / 49.0;
                    if (val(up, x, y + delta) < val(dn, x, y) - slack) {
                        rep.hypothesis_ok = false;
                        rep.detail = std::string(name) + " ordering fails";
                        break;
                    }
                }
            }
        }
    };
    driver_ordered(model1.driver_g, model2.driver_g, "driver g");
    std::size_t nf = std::max(model1.driver_f.size(), model2.driver_f.size());
    for (std::size_t j = 0; j < nf; ++j)
        driver_ordered(j < model1.driver_f.size() ? model1.driver_f[j] : FieldExpr(),
                       j < model2.driver_f.size() ? model2.driver_f[j] : FieldExpr(),
                       "driver f");

    PicardResult r1 = picard_solve(model1, grid, tol, max_iter);
    PicardResult r2 = picard_solve(model2, grid, tol, max_iter);
    double mind = 0.0;
    bool first = true;
    for (std::size_t n = 0; n < r1.surface.rows.size(); ++n)
        for (std::size_t i = 0; i < r1.surface.rows[n].size(); ++i) {
            double d = r1.surface.rows[n][i] - r2.surface.rows[n][i];
            if (first || d < mind) {
                mind = d;
                first = false;
            }
        }
    rep.min_difference = mind;
    rep.pass = rep.hypothesis_ok && mind >= -10.0 * tol;
    return rep;
}

} // namespace gexpect
