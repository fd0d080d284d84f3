#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "gexpect/expr.hpp"
#include "gexpect/gfunction.hpp"

namespace gexpect {

/// Tiny recombining trinomial tree. Under control a (a variance level),
/// the up/down probabilities are p(a) = a*dt/(2h^2) and the middle
/// probability 1 - a*dt/h^2; validate() checks p(a) in [0, 1/2] for every
/// control, so each control induces a proper Markov chain on the tree.
struct TreeSpec {
    std::size_t steps = 1;        // m <= 6
    double h = 1.0;               // spatial spacing
    double x0 = 0.0;              // root state
    double dt = 0.25;             // time step
    std::vector<double> controls; // finite A subset of the band, variance units
    Interval band;

    double node(std::size_t s, std::size_t j) const {
        return x0 + (static_cast<double>(j) - static_cast<double>(s)) * h;
    }
    double time_of(std::size_t s) const { return dt * static_cast<double>(s); }
    std::size_t row_size(std::size_t s) const { return 2 * s + 1; }
    std::size_t internal_nodes() const { return steps * steps; }

    /// Probability / budget / monotonicity checks. `lipschitz_k` is the
    /// Lipschitz bound of any y-dependent drivers used with the tree; 0
    /// when drivers are y-free.
    void validate(double lipschitz_k = 0.0) const;
};

/// Running driver on the tree, (t, x, y) -> real.
using TreeField = std::function<double(double, double, double)>;
using TreePayoff = std::function<double(double)>;

/// Wraps an (x, y) expression as a TreeField; empty expressions become 0.
TreeField tree_field(const FieldExpr& f);

struct TreeTable {
    std::vector<std::vector<double>> values;         // values[s], size 2s+1
    std::vector<std::vector<double>> pre_driver;     // w rows, s = 0..m-1
    std::vector<std::vector<std::size_t>> control;   // chosen index into A

    double root() const { return values[0][0]; }
};

/// Previous-iterate y-arguments for the Picard sweep. Absent tables mean
/// the direct convention: f sees the middle child's next value, g sees the
/// freshly stepped w.
struct TreeFrozen {
    const std::vector<std::vector<double>>* f_table = nullptr; // full value rows
    const std::vector<std::vector<double>>* g_table = nullptr; // w rows
};

/// Backward dynamic programming:
///   w(s,j)  = opt_a { p(a) Y(s+1,j+2) + (1-2p(a)) Y(s+1,j+1) + p(a) Y(s+1,j)
///                     + dt * a * f(t_s, x, y_f) }
///   Y(s,j)  = w(s,j) + dt * g(t_s, x, y_g)
/// Ties select the first control in A.
TreeTable tree_dp(const TreeSpec& tree, const TreePayoff& payoff, const TreeField& g,
                  const TreeField& f, OptMode mode, const TreeFrozen* frozen = nullptr);

/// Exact optimum over all Markov policies (node -> control in A): evaluates
/// the value recursion under every policy and takes the min/max. Enforces
/// |A|^(node count) <= 1e6.
double brute_force_expectation(const TreeSpec& tree, const TreePayoff& payoff,
                               const TreeField& g, const TreeField& f, OptMode mode);

struct TreePicardResult {
    TreeTable table;
    std::size_t iterations = 0;
    std::vector<double> deltas; // sup-norm change per sweep
    bool converged = false;
};

/// Picard iteration on the tree: each sweep freezes the drivers' y-arguments
/// at the previous iterate, so the fixed point is the tree_dp table.
TreePicardResult tree_picard(const TreeSpec& tree, const TreePayoff& payoff,
                             const TreeField& g, const TreeField& f, OptMode mode,
                             double tol, std::size_t max_iter);

/// Root value of the linear BSDE with driver a(t)y + A(t,x) against dt and
/// (b(t)y + C(t,x)) against d<B>, terminal xi, by explicit recursion over
/// control choices carrying the integrating factor Q_{s+1} = Q_s (1 + a_s dt);
/// the b d<B> contribution enters as an exact middle-transition-weight
/// correction. Equals the Picard fixed point on the same tree.
double linear_tree_formula(const TreeSpec& tree, const FieldExpr& a, const FieldExpr& b,
                           const FieldExpr& big_a, const FieldExpr& big_c,
                           const FieldExpr& xi, OptMode mode);

} // namespace gexpect
