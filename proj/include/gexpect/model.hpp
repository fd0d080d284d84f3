#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gexpect/expr.hpp"
#include "gexpect/gfunction.hpp"

namespace gexpect {

/// Direction of the nonlinear expectation: Sub takes sup over the prior
/// family (sublinear E*), Super takes inf (superlinear E_*).
enum class ExpectationMode { Sub, Super };

inline OptMode opt_mode(ExpectationMode m) {
    return m == ExpectationMode::Sub ? OptMode::Sup : OptMode::Inf;
}

/// Coefficient fields of the forward diffusion and the BSDE driver,
/// for a scalar state driven by d independent G-Brownian components:
///   dX = b(X) dt + sum_j h_j(X) d<B^j> + sum_j sigma_j(X) dB^j
///   Y_t = E[ Phi(X_T) + int g(X,Y) dr + int f_j(X,Y) d<B^j> | F_t ]
struct ModelSpec {
    UncertaintyBox box;
    FieldExpr drift_b;               // may be empty (== 0)
    std::vector<FieldExpr> h;        // size d or empty
    std::vector<FieldExpr> sigma;    // size d
    FieldExpr driver_g;              // in (x, y); may be empty
    std::vector<FieldExpr> driver_f; // per j in (x, y); may be empty
    FieldExpr terminal;              // Phi(x)
    double lipschitz_k = 0.0;
    ExpectationMode mode = ExpectationMode::Super;

    // Three-band variant: separate boxes for the h-drift, the diffusion,
    // and the f-driver terms. Unset means single-box dynamics.
    std::optional<UncertaintyBox> box_drift;
    std::optional<UncertaintyBox> box_diffusion;
    std::optional<UncertaintyBox> box_driver;

    std::size_t control_dim() const { return box.dimension(); }

    /// Structural checks plus Lipschitz sampling of the drivers on
    /// [xlo, xhi]; throws std::invalid_argument on violation.
    void validate(double xlo, double xhi, int samples = 10000) const;

    static ModelSpec heat(const UncertaintyBox& box, FieldExpr phi,
                          ExpectationMode mode);
};

} // namespace gexpect
