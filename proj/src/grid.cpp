#include "gexpect/grid.hpp"

#include <cmath>

namespace gexpect {

void GridSpec::validate() const {
    if (nx.empty() || nx.size() > 2)
        throw std::invalid_argument("GridSpec: 1 or 2 state dimensions supported");
    if (x_min.size() != nx.size() || x_max.size() != nx.size())
        throw std::invalid_argument("GridSpec: dimension mismatch");
    for (std::size_t k = 0; k < nx.size(); ++k) {
        if (!(x_min[k] < x_max[k]))
            throw std::invalid_argument("GridSpec: x_min must be < x_max");
        if (nx[k] < 3)
            throw std::invalid_argument("GridSpec: need at least 3 points per dimension");
    }
    if (nt < 1)
        throw std::invalid_argument("GridSpec: nt >= 1");
    if (!(horizon > 0.0))
        throw std::invalid_argument("GridSpec: horizon must be positive");
}

GridSpec GridSpec::make1d(double x_min, double x_max, std::size_t nx, double horizon,
                          std::size_t nt, bool log_space) {
    GridSpec g;
    g.x_min = {x_min};
    g.x_max = {x_max};
    g.nx = {nx};
    g.horizon = horizon;
    g.nt = nt;
    g.log_space = log_space;
    g.validate();
    return g;
}

double max_stable_dt(const ModelSpec& model, const GridSpec& grid) {
    grid.validate();
    const double dx = grid.dx(0);
    const double dx2 = dx * dx;
    const std::size_t d = model.box.dimension();
    const UncertaintyBox& diff_box =
        model.box_diffusion ? *model.box_diffusion : model.box;
    const UncertaintyBox& drift_box = model.box_drift ? *model.box_drift : model.box;

    double worst = 0.0;
    for (std::size_t i = 0; i < grid.nx[0]; ++i) {
        const double x = grid.node(i);
        EvalContext ctx = EvalContext::at_x(x);
        double diffusion = 0.0;
        double drift = model.drift_b.empty() ? 0.0 : std::fabs(model.drift_b.eval(ctx));
        for (std::size_t j = 0; j < d; ++j) {
            double s = model.sigma[j].empty() ? 0.0 : model.sigma[j].eval(ctx);
            diffusion += s * s * diff_box.bands[j].hi;
            if (!model.h.empty() && !model.h[j].empty())
                drift += std::fabs(model.h[j].eval(ctx)) * drift_box.bands[j].hi;
        }
        worst = std::max(worst, diffusion / dx2 + drift / dx + model.lipschitz_k);
    }
    if (worst <= 0.0)
        return grid.horizon; // degenerate model: any step is stable
    return 1.0 / worst;
}

void check_cfl(const ModelSpec& model, const GridSpec& grid) {
    double cap = max_stable_dt(model, grid);
    if (grid.dt() > cap * (1.0 + 1e-12))
        throw CflError(grid.dt(), cap);
}

} // namespace gexpect
