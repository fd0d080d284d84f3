#include "gexpect/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gexpect {

namespace {

struct HermiteRule {
    std::vector<double> nodes;   // roots in physicists' normalization
    std::vector<double> weights; // already divided by sqrt(pi)
};

/// Golub--Welsch: eigen-decompose the symmetric tridiagonal Jacobi matrix
/// of the Hermite recurrence (diagonal 0, off-diagonal sqrt(i/2)) by
/// implicit-shift QL, tracking only the first eigenvector component.
HermiteRule compute_hermite(int n) {
    std::vector<double> d(n, 0.0), e(n, 0.0), z(n, 0.0);
    for (int i = 1; i < n; ++i)
        e[i - 1] = std::sqrt(static_cast<double>(i) / 2.0);
    z[0] = 1.0;

    for (int l = 0; l < n; ++l) {
        for (int iter = 0;; ++iter) {
            int m = l;
            for (; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-300 + 1e-16 * dd)
                    break;
            }
            if (m == l)
                break;
            if (iter >= 50)
                throw std::runtime_error("hermite rule: QL did not converge");
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if (r == 0.0 && m - 1 >= l)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    // Sort by node and form weights; sum of raw weights is sqrt(pi).
    std::vector<std::pair<double, double>> pairs(n);
    for (int i = 0; i < n; ++i)
        pairs[i] = {d[i], z[i] * z[i]};
    std::sort(pairs.begin(), pairs.end());
    HermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = pairs[i].first;
        rule.weights[i] = pairs[i].second; // normalized: sum z^2 = 1 = total/sqrt(pi)
    }
    return rule;
}

const HermiteRule& hermite_rule(int n) {
    static std::mutex mu;
    static std::map<int, HermiteRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, compute_hermite(n)).first;
    return it->second;
}

double gauss_hermite(const std::function<double(double)>& phi, double sigma, int n) {
    const HermiteRule& rule = hermite_rule(n);
    const double root2 = std::sqrt(2.0);
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        acc += rule.weights[i] * phi(sigma * root2 * rule.nodes[i]);
    return acc;
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double fa,
                        double b, double fb, double m, double fm, double whole,
                        double tol, int depth) {
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0)
        throw std::runtime_error("gaussian_expectation: adaptive fallback did not "
                                 "converge");
    if (std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_gaussian(const std::function<double(double)>& phi, double sigma,
                         const QuadratureSpec& spec) {
    const double inv = 1.0 / std::sqrt(2.0 * M_PI);
    auto f = [&](double y) { return inv * phi(sigma * y) * std::exp(-0.5 * y * y); };
    // Pre-split into panels so kinks are localized before recursion.
    const int panels = 64;
    const double a0 = -spec.half_width, b0 = spec.half_width;
    double total = 0.0;
    double step = (b0 - a0) / panels;
    for (int p = 0; p < panels; ++p) {
        double a = a0 + p * step, b = a + step, m = 0.5 * (a + b);
        double fa = f(a), fb = f(b), fm = f(m);
        double whole = simpson(a, fa, b, fb, fm);
        total += adaptive_simpson(f, a, fa, b, fb, m, fm, whole,
                                  spec.tol / panels, 48);
    }
    return total;
}

} // namespace

double gaussian_expectation(const std::function<double(double)>& phi, double sigma,
                            const QuadratureSpec& spec) {
    if (!(sigma >= 0.0))
        throw std::invalid_argument("gaussian_expectation: sigma must be >= 0");
    if (spec.nodes < 3 || !(spec.tol > 0.0))
        throw std::invalid_argument("gaussian_expectation: bad quadrature spec");
    if (sigma == 0.0)
        return phi(0.0);
    double a = gauss_hermite(phi, sigma, spec.nodes);
    double b = gauss_hermite(phi, sigma, 2 * spec.nodes + 1);
    double scale = 1.0 + std::abs(b);
    if (std::abs(a - b) <= spec.tol * scale)
        return b;
    return adaptive_gaussian(phi, sigma, spec);
}

double gaussian_expectation(const FieldExpr& phi, double sigma,
                            const QuadratureSpec& spec) {
    return gaussian_expectation([&](double v) { return phi(v); }, sigma, spec);
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

} // namespace

double extremal_bs_price(OptionKind kind, double s, double k, double r, double t,
                         double sigma) {
    if (!(s > 0.0) || !(k > 0.0) || t < 0.0 || sigma < 0.0)
        throw std::invalid_argument("extremal_bs_price: bad arguments");
    double disc = std::exp(-r * t);
    if (sigma == 0.0 || t == 0.0) {
        double fwd = s / disc;
        double intr = kind == OptionKind::Call ? std::max(fwd - k, 0.0)
                                               : std::max(k - fwd, 0.0);
        return disc * intr;
    }
    double vol = sigma * std::sqrt(t);
    double d1 = (std::log(s / k) + (r + 0.5 * sigma * sigma) * t) / vol;
    double d2 = d1 - vol;
    if (kind == OptionKind::Call)
        return s * normal_cdf(d1) - k * disc * normal_cdf(d2);
    return k * disc * normal_cdf(-d2) - s * normal_cdf(-d1);
}

Curvature convexity_detect(const FieldExpr& phi, double lo, double hi, int samples) {
    if (samples < 3 || !(hi > lo))
        throw std::invalid_argument("convexity_detect: bad arguments");
    const double tol = 1e-9;
    double dx = (hi - lo) / static_cast<double>(samples - 1);
    bool pos = false, neg = false;
    for (int i = 1; i + 1 < samples; ++i) {
        double x = lo + dx * static_cast<double>(i);
        double d2 = phi(x + dx) - 2.0 * phi(x) + phi(x - dx);
        if (d2 > tol)
            pos = true;
        if (d2 < -tol)
            neg = true;
    }
    if (pos && neg)
        return Curvature::Neither;
    if (neg)
        return Curvature::Concave;
    return Curvature::Convex;
}

} // namespace gexpect
