#pragma once

#include <functional>

#include "gexpect/expr.hpp"

namespace gexpect {

/// Quadrature controls for Gaussian expectations: Gauss--Hermite with
/// `nodes` points; when two node counts disagree beyond `tol` (nonsmooth
/// integrand), the adaptive fallback integrates on [-half_width, half_width]
/// standard-normal units.
struct QuadratureSpec {
    int nodes = 201;
    double tol = 1e-10;
    double half_width = 12.0;
};

/// (1/sqrt(2 pi)) int phi(sigma y) exp(-y^2/2) dy.
double gaussian_expectation(const std::function<double(double)>& phi, double sigma,
                            const QuadratureSpec& spec = {});
double gaussian_expectation(const FieldExpr& phi, double sigma,
                            const QuadratureSpec& spec = {});

enum class OptionKind { Call, Put };

/// Black--Scholes closed form; sigma = 0 or T = 0 returns the discounted
/// intrinsic value on the forward.
double extremal_bs_price(OptionKind kind, double s, double k, double r, double t,
                         double sigma);

enum class Curvature { Convex, Concave, Neither };

/// Sign of second differences of phi on a uniform sample grid over
/// [lo, hi], tolerance 1e-9; mixed signs give Neither.
Curvature convexity_detect(const FieldExpr& phi, double lo, double hi,
                           int samples = 201);

} // namespace gexpect
