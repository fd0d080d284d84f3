#pragma once

#include <cstddef>

#include "gexpect/lattice.hpp"

namespace gexpect {

/// HJB solver for the full model: backward monotone recursion with exact
/// vertex optimization per node. Wrapper over the lattice engine so that
/// degenerate cases (g=f=h=0, b=0, sigma=1) reproduce solve_gheat bitwise.
SolveResult solve_hjb(const ModelSpec& model, const GridSpec& grid);

/// G-heat equation du/dt + G_pm(D^2 u) = 0 (backward form), 1- or
/// 2-dimensional state with a diagonal uncertainty box. Mode Sup computes
/// the sublinear expectation E*, mode Inf the superlinear E_*.
ValueSurface solve_gheat(const FieldExpr& phi, const UncertaintyBox& box,
                         const GridSpec& grid, OptMode mode);

enum class BSBSide { Offer, Bid };

/// Black--Scholes--Barenblatt pricing problem, solved on a log-price grid:
/// the diffusion coefficient is alpha^2/2, the drift r - alpha^2/2 enters
/// the vertex-affine coefficients, and the discount -r w is an explicit
/// driver. The band is quoted in sigma (not variance) units.
struct BSBSpec {
    FieldExpr payoff;       // of the price s
    double rate = 0.0;
    double sigma_lo = 0.0;
    double sigma_hi = 0.0;
    BSBSide side = BSBSide::Offer;
    double spot = 100.0;
    double maturity = 1.0;
    std::size_t nx = 400;
    std::size_t nt = 0;            // 0: choose from cfl_fraction
    double cfl_fraction = 0.9;     // dt = fraction * CFL limit when nt == 0
    double width_stddevs = 5.0;    // half-width in sigma_hi * sqrt(T) units

    void validate() const;
};

struct BSBResult {
    double price = 0.0;       // at (t = 0, spot)
    ValueSurface surface;     // on the log-price grid
    ControlPolicy policy;
    ModelSpec model;          // the log-space model actually solved
    GridSpec grid;
};

BSBResult bsb_price(const BSBSpec& spec);

/// Three-band variant: independent vertex optimization of the h-drift,
/// diffusion and f-driver terms per node. Requires all three boxes set.
SolveResult multi_band_hjb(const ModelSpec& model, const GridSpec& grid);

/// Sample-point set for residual_check.
struct SampleBox {
    double t_min = 0.0, t_max = 1.0;
    double x_min = -1.0, x_max = 1.0;
    std::size_t nt = 11, nx = 21;
};

/// Max absolute residual of d_t u + opt_alpha{ L(x, alpha) u + g(x, u) }
/// over the sample box, with derivatives of the claimed solution u(t, x)
/// taken by central finite differences (first derivatives step 1e-5;
/// second derivative step 1e-3 to stay above rounding noise).
double residual_check(const FieldExpr& u, const ModelSpec& model,
                      const SampleBox& samples);

} // namespace gexpect
