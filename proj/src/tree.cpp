#include "gexpect/tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gexpect {

void TreeSpec::validate(double lipschitz_k) const {
    if (steps < 1 || steps > 6)
        throw std::invalid_argument("TreeSpec: steps must be in [1, 6]");
    if (!(h > 0.0) || !(dt > 0.0))
        throw std::invalid_argument("TreeSpec: h and dt must be positive");
    if (controls.empty())
        throw std::invalid_argument("TreeSpec: control set is empty");
    if (!band.valid())
        throw std::invalid_argument("TreeSpec: invalid band");
    const double eps = 1e-12 * (1.0 + band.hi);
    for (double a : controls) {
        if (a < band.lo - eps || a > band.hi + eps)
            throw std::invalid_argument("TreeSpec: control outside the band");
        double p = a * dt / (2.0 * h * h);
        if (p < 0.0 || p > 0.5)
            throw std::invalid_argument("TreeSpec: p(a) = " + std::to_string(p) +
                                        " not in [0, 1/2]");
        // Monotonicity of the value recursion in the presence of y-Lipschitz
        // drivers: the middle-child weight must dominate the frozen f term.
        if (1.0 - a * dt / (h * h) - a * dt * lipschitz_k < -eps)
            throw std::invalid_argument("TreeSpec: driver Lipschitz bound breaks "
                                        "monotonicity at this dt");
    }
    if (lipschitz_k * dt >= 1.0)
        throw std::invalid_argument("TreeSpec: dt * K must be < 1");
}

TreeField tree_field(const FieldExpr& f) {
    if (f.empty())
        return [](double, double, double) { return 0.0; };
    return [f](double t, double x, double y) {
        EvalContext ctx;
        ctx.t = t;
        ctx.x1 = x;
        ctx.y = y;
        return f.eval(ctx);
    };
}

namespace {

double checked(double v, const char* where) {
    if (!std::isfinite(v))
        throw std::runtime_error(std::string("tree: non-finite value in ") + where);
    return v;
}

} // namespace

TreeTable tree_dp(const TreeSpec& tree, const TreePayoff& payoff, const TreeField& g,
                  const TreeField& f, OptMode mode, const TreeFrozen* frozen) {
    tree.validate();
    const std::size_t m = tree.steps;
    TreeTable out;
    out.values.resize(m + 1);
    out.pre_driver.resize(m);
    out.control.resize(m);
    out.values[m].resize(tree.row_size(m));
    for (std::size_t j = 0; j < tree.row_size(m); ++j)
        out.values[m][j] = checked(payoff(tree.node(m, j)), "payoff");

    const bool sup = (mode == OptMode::Sup);
    for (std::size_t s = m; s-- > 0;) {
        const double t = tree.time_of(s);
        const auto& next = out.values[s + 1];
        auto& w = out.pre_driver[s];
        auto& val = out.values[s];
        auto& ctl = out.control[s];
        w.resize(tree.row_size(s));
        val.resize(tree.row_size(s));
        ctl.resize(tree.row_size(s));
        for (std::size_t j = 0; j < tree.row_size(s); ++j) {
            double x = tree.node(s, j);
            double yf = frozen && frozen->f_table ? (*frozen->f_table)[s + 1][j + 1]
                                                  : next[j + 1];
            double fv = f ? f(t, x, yf) : 0.0;
            double best = 0.0;
            std::size_t best_a = 0;
            for (std::size_t ai = 0; ai < tree.controls.size(); ++ai) {
                double a = tree.controls[ai];
                double p = a * tree.dt / (2.0 * tree.h * tree.h);
                double cand = p * next[j + 2] + (1.0 - 2.0 * p) * next[j + 1] +
                              p * next[j] + tree.dt * a * fv;
                if (ai == 0 || (sup ? cand > best : cand < best)) {
                    best = cand;
                    best_a = ai;
                }
            }
            w[j] = checked(best, "step");
            double yg = frozen && frozen->g_table ? (*frozen->g_table)[s][j] : w[j];
            val[j] = w[j] + tree.dt * (g ? g(t, x, yg) : 0.0);
            ctl[j] = best_a;
        }
    }
    return out;
}

double brute_force_expectation(const TreeSpec& tree, const TreePayoff& payoff,
                               const TreeField& g, const TreeField& f, OptMode mode) {
    tree.validate();
    const std::size_t nodes = tree.internal_nodes();
    const std::size_t na = tree.controls.size();
    double combos = std::pow(static_cast<double>(na), static_cast<double>(nodes));
    if (combos > 1e6)
        throw std::invalid_argument("brute_force_expectation: |A|^nodes exceeds 1e6");
    const auto total = static_cast<std::size_t>(combos + 0.5);
    const std::size_t m = tree.steps;

    // Node ordering: step-major, so policy digit (s, j) lives at offset
    // s^2 + j (row s starts after sum of earlier row sizes = s^2).
    std::vector<std::size_t> digits(nodes, 0);
    std::vector<std::vector<double>> val(m + 1);
    for (std::size_t s = 0; s <= m; ++s)
        val[s].resize(tree.row_size(s));
    for (std::size_t j = 0; j < tree.row_size(m); ++j)
        val[m][j] = checked(payoff(tree.node(m, j)), "payoff");

    const bool sup = (mode == OptMode::Sup);
    double best = 0.0;
    for (std::size_t it = 0; it < total; ++it) {
        for (std::size_t s = m; s-- > 0;) {
            const double t = tree.time_of(s);
            const auto& next = val[s + 1];
            for (std::size_t j = 0; j < tree.row_size(s); ++j) {
                double x = tree.node(s, j);
                double a = tree.controls[digits[s * s + j]];
                double p = a * tree.dt / (2.0 * tree.h * tree.h);
                double w = p * next[j + 2] + (1.0 - 2.0 * p) * next[j + 1] +
                           p * next[j];
                if (f)
                    w += tree.dt * a * f(t, x, next[j + 1]);
                val[s][j] = w + tree.dt * (g ? g(t, x, w) : 0.0);
            }
        }
        double v = val[0][0];
        if (it == 0 || (sup ? v > best : v < best))
            best = v;
        // next policy: mixed-radix increment
        for (std::size_t k = 0; k < nodes; ++k) {
            if (++digits[k] < na)
                break;
            digits[k] = 0;
        }
    }
    return best;
}

TreePicardResult tree_picard(const TreeSpec& tree, const TreePayoff& payoff,
                             const TreeField& g, const TreeField& f, OptMode mode,
                             double tol, std::size_t max_iter) {
    TreePicardResult res;
    const std::size_t m = tree.steps;
    // Iterate zero: terminal data propagated as constants (w == next value).
    TreeTable prev;
    prev.values.resize(m + 1);
    prev.pre_driver.resize(m);
    for (std::size_t j = 0; j < tree.row_size(m); ++j)
        prev.values[m].push_back(payoff(tree.node(m, j)));
    for (std::size_t s = m; s-- > 0;) {
        prev.values[s].assign(tree.row_size(s), 0.0);
        prev.pre_driver[s].assign(tree.row_size(s), 0.0);
    }

    for (std::size_t it = 0; it < max_iter; ++it) {
        TreeFrozen frozen{&prev.values, &prev.pre_driver};
        TreeTable cur = tree_dp(tree, payoff, g, f, mode, &frozen);
        double delta = 0.0;
        for (std::size_t s = 0; s < m; ++s)
            for (std::size_t j = 0; j < tree.row_size(s); ++j)
                delta = std::max(delta, std::abs(cur.values[s][j] - prev.values[s][j]));
        res.deltas.push_back(delta);
        prev = std::move(cur);
        res.iterations = it + 1;
        if (delta <= tol) {
            res.converged = true;
            break;
        }
    }
    res.table = std::move(prev);
    return res;
}

namespace {

struct LinearFormula {
    const TreeSpec& tree;
    const FieldExpr& a;
    const FieldExpr& b;
    const FieldExpr& big_a;
    const FieldExpr& big_c;
    const FieldExpr& xi;
    bool sup;

    double eval_t(const FieldExpr& e, double t) const {
        if (e.empty())
            return 0.0;
        EvalContext ctx;
        ctx.t = t;
        return e.eval(ctx);
    }
    double eval_tx(const FieldExpr& e, double t, double x) const {
        return e.empty() ? 0.0 : e.eval(EvalContext::at_tx(t, x));
    }

    double rec(std::size_t s, std::size_t j, double q) const {
        double x = tree.node(s, j);
        if (s == tree.steps)
            return q * xi(x);
        double t = tree.time_of(s);
        double at = eval_t(a, t);
        double bt = eval_t(b, t);
        if (1.0 + at * tree.dt <= 0.0)
            throw std::invalid_argument("linear_tree_formula: 1 + a*dt must stay "
                                        "positive (Q would change sign)");
        double qn = q * (1.0 + at * tree.dt);
        double best = 0.0;
        for (std::size_t ai = 0; ai < tree.controls.size(); ++ai) {
            double alpha = tree.controls[ai];
            double p = alpha * tree.dt / (2.0 * tree.h * tree.h);
            // b enters through the middle transition weight: this is the exact
            // discrete form of accumulating b*alpha^2*dt into Q against d<B>,
            // and it telescopes the driver step b*y evaluated at the middle
            // child without an O(dt^2) remainder.
            double cand = p * rec(s + 1, j + 2, qn) +
                          (1.0 - 2.0 * p + tree.dt * alpha * bt) * rec(s + 1, j + 1, qn) +
                          p * rec(s + 1, j, qn) +
                          qn * tree.dt * alpha * eval_tx(big_c, t, x);
            if (ai == 0 || (sup ? cand > best : cand < best))
                best = cand;
        }
        return best + q * tree.dt * eval_tx(big_a, t, x);
    }
};

} // namespace

double linear_tree_formula(const TreeSpec& tree, const FieldExpr& a, const FieldExpr& b,
                           const FieldExpr& big_a, const FieldExpr& big_c,
                           const FieldExpr& xi, OptMode mode) {
    tree.validate();
    if (xi.empty())
        throw std::invalid_argument("linear_tree_formula: terminal field required");
    double work = std::pow(3.0 * static_cast<double>(tree.controls.size()),
                           static_cast<double>(tree.steps));
    if (work > 1e7)
        throw std::invalid_argument("linear_tree_formula: enumeration budget exceeded");
    LinearFormula lf{tree, a, b, big_a, big_c, xi, mode == OptMode::Sup};
    return lf.rec(0, 0, 1.0);
}

} // namespace gexpect
