#pragma once

#include <functional>
#include <vector>

#include "gexpect/model.hpp"
#include "gexpect/grid.hpp"
#include "gexpect/surface.hpp"

namespace gexpect {

/// Per-step overrides for the backward recursion. Direct solvers leave all
/// fields empty; the Picard iteration freezes the driver y-arguments at the
/// previous iterate, and the linear-BSDE formula route injects weighted
/// running data.
struct StepOptions {
    /// y-argument for f_j at node i (defaults to the next row's value).
    const std::vector<double>* frozen_f_row = nullptr;
    /// y-argument for g at node i (defaults to the freshly stepped value).
    const std::vector<double>* frozen_g_row = nullptr;
    /// Additive per-node coefficient on alpha_j^2 inside the optimization,
    /// indexed [j * nx + i]. Used for Q-weighted C terms.
    const std::vector<double>* extra_alpha_coeff = nullptr;
    /// Additive per-node constant applied with the driver (times dt).
    const std::vector<double>* extra_constant = nullptr;
};

struct StepResult {
    std::vector<double> values;     // after the driver: w + dt*(g + extra)
    std::vector<double> pre_driver; // w: value after diffusion/drift/f only
    std::vector<BandEnd> vertices;  // nx * control_dim
};

/// One explicit backward Euler step of the HJB recursion on a 1-d grid:
///   w_i = u'_i + dt * opt_alpha { 1/2 sum_j sigma_j^2 alpha_j^2 D2u'
///         + b D_up u' + sum_j h_j alpha_j^2 D_up u' + sum_j f_j(x,y) alpha_j^2 }
///   u_i = w_i + dt * g(x_i, w_i)
/// Second differences are central; first differences upwind per the sign of
/// the coefficient (b and each h_j separately, exact since alpha_j^2 >= 0).
/// Boundary nodes are filled by zero-second-difference extrapolation of w.
/// The optimization is exact vertex enumeration via optimize_box_affine;
/// when the three-band boxes of the model are set, the drift, diffusion and
/// driver groups are optimized independently.
StepResult step_expectation(const std::vector<double>& next, const ModelSpec& model,
                            const GridSpec& grid, std::size_t time_index,
                            const StepOptions& opts = {});

struct SolveResult {
    ValueSurface surface;
    ControlPolicy policy;
};

struct SolveHooks {
    /// Called with the index n of the row being produced (0..nt-1).
    std::function<StepOptions(std::size_t)> options_for_step;
    /// Observes each produced step (row index, result) before it is stored.
    std::function<void(std::size_t, const StepResult&)> on_step;
};

/// Full backward dynamic programming from explicit terminal data.
/// Checks the CFL condition; throws CflError / std::invalid_argument.
SolveResult backward_solve(std::vector<double> terminal, const ModelSpec& model,
                           const GridSpec& grid, const SolveHooks* hooks = nullptr);

/// E_pm[ Phi(X_T) + int g dr + int f_j d<B^j> | F_t ] at every node;
/// terminal data evaluated from the model's payoff field.
SolveResult conditional_expectation(const ModelSpec& model, const GridSpec& grid);

/// opt over piecewise-constant variance controls of phi(int_0^t alpha^2 ds),
/// by dynamic programming over a discretized accumulator with Na control
/// levels. Equals opt_{v in band} phi(v t) up to the control/interpolation
/// resolution.
double quadvar_functional(const FieldExpr& phi, double t, Interval band, OptMode mode,
                          std::size_t na);

} // namespace gexpect
