#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "gexpect/analytic.hpp"
#include "gexpect/surface.hpp"

namespace gexpect {

/// Forward dynamics sampled under a chosen prior. Arithmetic integrates
/// dX = alpha dB directly; LogPrice keeps the log of the price, stepping
/// exactly per constant-control interval (lognormal increments), so
/// constant policies carry no discretization bias.
enum class McKind { Arithmetic, LogPrice };

struct McDynamics {
    McKind kind = McKind::Arithmetic;
    double x0 = 0.0;   // initial state; the spot price for LogPrice
    double rate = 0.0; // drift r, LogPrice only
};

/// A variance control alpha^2(t, x) within the band: constant, a lookup
/// into a solved ControlPolicy, bang-bang on the sign of the second
/// difference of a supplied ValueSurface, or an independent random
/// bang-bang draw per (path, step).
struct PolicySpec {
    enum class Kind { Constant, Surface, GammaSign, RandomBangBang };
    Kind kind = Kind::Constant;
    Interval band;
    double alpha_sq = 0.0;                         // Constant
    std::shared_ptr<const ControlPolicy> policy;   // Surface
    std::shared_ptr<const ValueSurface> surface;   // GammaSign
    OptMode gamma_mode = OptMode::Inf;             // GammaSign vertex rule
    std::uint64_t salt = 0;                        // RandomBangBang
    std::size_t horizon_steps = 0; // simulation steps per horizon; set by
                                   // sample_paths so grid rows are looked up
                                   // by time fraction rather than step index

    static PolicySpec constant(Interval band, double alpha_sq);
    static PolicySpec from_policy(Interval band, std::shared_ptr<const ControlPolicy> p);
    static PolicySpec gamma_sign(Interval band, std::shared_ptr<const ValueSurface> s,
                                 OptMode mode);
    static PolicySpec random_bang_bang(Interval band, std::uint64_t salt);

    /// The control applied at (time index n, state x). For LogPrice
    /// dynamics the state is the log-price, matching the BSB grids.
    double at(std::size_t n, double x, std::uint64_t path, std::uint64_t seed) const;
};

struct PathBatch {
    McKind kind = McKind::Arithmetic;
    double x0 = 0.0, rate = 0.0, horizon = 0.0, dt = 0.0;
    Interval band;
    std::size_t n_paths = 0, n_steps = 0;
    std::vector<double> x_final;  // state per path (log-price for LogPrice)
    std::vector<double> qv_final; // realized <B>_T per path
    bool has_trajectories = false;
    // flattened [path * (n_steps + 1) + step]; alpha is [path * n_steps + step]
    std::vector<double> x_traj, qv_traj, alpha_traj;

    double price(std::size_t p) const; // state mapped to payoff units
};

/// Euler--Maruyama (exact lognormal per step for LogPrice) under the prior
/// induced by the policy. One counter-derived RNG stream per path, so the
/// batch is reproducible under any parallel schedule.
PathBatch sample_paths(const McDynamics& dyn, Interval band, const PolicySpec& policy,
                       std::size_t n_paths, std::size_t n_steps, double horizon,
                       std::uint64_t seed, bool store_trajectories = false);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Discounted linear-expectation value e^{-rT} E[payoff(X_T)] with pairwise
/// summation (schedule-independent to rounding). The payoff takes the price
/// for LogPrice batches and the raw state otherwise.
McEstimate policy_value_estimate(const PathBatch& batch, const FieldExpr& payoff,
                                 double r);

struct ScanResult {
    std::vector<std::pair<double, double>> table; // (alpha_sq, value)
    double min_value = 0.0, max_value = 0.0;
    double argmin = 0.0, argmax = 0.0;
};

/// Value of the constant-control priors across the band, by exact Gaussian
/// quadrature (no MC noise): a table of (alpha^2, value) plus the extremes.
ScanResult representation_scan(const FieldExpr& payoff, Interval band,
                               const McDynamics& dyn, double horizon, std::size_t na,
                               const QuadratureSpec& quad = {});

struct QuadVarReport {
    struct PathStats {
        double min_ratio = 0.0, max_ratio = 0.0;
        std::size_t violations = 0;
    };
    std::size_t windows_checked = 0;
    std::size_t violations = 0;
    double min_ratio = 0.0, max_ratio = 0.0; // per-step d<B>/dt extremes
    bool weighted_checked = false;
    std::size_t weighted_violations = 0;
    std::vector<PathStats> per_path;
};

/// Verifies lo*(t-s) <= <B>_t - <B>_s <= hi*(t-s) on all dyadic windows of
/// every stored path; optionally the eta^2-weighted version with a supplied
/// profile eta(t). Requires trajectories.
QuadVarReport quad_var_report(const PathBatch& batch,
                              const FieldExpr& eta = FieldExpr());

struct CounterexampleReport {
    std::vector<std::pair<double, double>> rows; // (delta, value of E*[X_delta])
    double qs_limit = 0.0;                       // E*[lim X_delta] = E*[0]
};

/// X_delta = forward-window rate minus backward-window rate of <B>. The two
/// windows carry independent controls, so E*[X_delta] is the exact nested
/// vertex optimization sup_b sup_f (f - b) = hi - lo for every delta, while
/// X_delta -> 0 quasi-surely.
CounterexampleReport counterexample_limit(Interval band,
                                          const std::vector<double>& deltas);

} // namespace gexpect
