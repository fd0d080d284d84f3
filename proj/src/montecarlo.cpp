#include "gexpect/montecarlo.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace gexpect {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform in (0, 1), identical on every platform (mt19937_64 output is
/// specified by the standard, unlike the distribution adaptors).
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
}

/// Box--Muller, cosine branch only; deterministic given the stream.
double standard_normal(std::mt19937_64& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace

PolicySpec PolicySpec::constant(Interval band, double alpha_sq) {
    if (alpha_sq < band.lo || alpha_sq > band.hi)
        throw std::invalid_argument("PolicySpec: constant control outside the band");
    PolicySpec p;
    p.kind = Kind::Constant;
    p.band = band;
    p.alpha_sq = alpha_sq;
    return p;
}

PolicySpec PolicySpec::from_policy(Interval band,
                                   std::shared_ptr<const ControlPolicy> pol) {
    if (!pol || pol->control_dim != 1)
        throw std::invalid_argument("PolicySpec: need a 1-band ControlPolicy");
    PolicySpec p;
    p.kind = Kind::Surface;
    p.band = band;
    p.policy = std::move(pol);
    return p;
}

PolicySpec PolicySpec::gamma_sign(Interval band, std::shared_ptr<const ValueSurface> s,
                                  OptMode mode) {
    if (!s || s->grid.state_dim() != 1)
        throw std::invalid_argument("PolicySpec: need a 1-d ValueSurface");
    PolicySpec p;
    p.kind = Kind::GammaSign;
    p.band = band;
    p.surface = std::move(s);
    p.gamma_mode = mode;
    return p;
}

PolicySpec PolicySpec::random_bang_bang(Interval band, std::uint64_t salt) {
    PolicySpec p;
    p.kind = Kind::RandomBangBang;
    p.band = band;
    p.salt = salt;
    return p;
}

namespace {

std::size_t nearest_index(double pos, std::size_t n) {
    if (!(pos > 0.0))
        return 0;
    auto i = static_cast<std::size_t>(pos + 0.5);
    return i >= n ? n - 1 : i;
}

// Map a simulation step onto a grid time row.  When the simulation step
// count is known, convert through the time fraction so policies solved on a
// finer (or coarser) time grid line up with the simulated clock.
std::size_t time_row(std::size_t n, std::size_t grid_nt, std::size_t sim_steps) {
    std::size_t tn = sim_steps > 0 ? (n * grid_nt) / sim_steps : n;
    return tn >= grid_nt ? grid_nt - 1 : tn;
}

} // namespace

double PolicySpec::at(std::size_t n, double x, std::uint64_t path,
                      std::uint64_t seed) const {
    switch (kind) {
    case Kind::Constant:
        return alpha_sq;
    case Kind::Surface: {
        const GridSpec& g = policy->grid;
        std::size_t tn = time_row(n, g.nt, horizon_steps);
        std::size_t i = nearest_index((x - g.x_min[0]) / g.dx(0), g.nx[0]);
        return band_value(band, policy->at(tn, i));
    }
    case Kind::GammaSign: {
        const GridSpec& g = surface->grid;
        std::size_t tn = time_row(n, g.nt, horizon_steps);
        std::size_t i = nearest_index((x - g.x_min[0]) / g.dx(0), g.nx[0]);
        if (i == 0)
            i = 1;
        if (i + 1 >= g.nx[0])
            i = g.nx[0] - 2;
        const auto& row = surface->rows[tn + 1]; // curvature of the next row
        double gamma = row[i + 1] - 2.0 * row[i] + row[i - 1];
        bool hi = gamma_mode == OptMode::Sup ? gamma >= 0.0 : gamma < 0.0;
        return hi ? band.hi : band.lo;
    }
    case Kind::RandomBangBang: {
        std::uint64_t h = splitmix64(splitmix64(seed ^ salt) ^
                                     splitmix64(path * 0x100000001b3ULL + n));
        return (h & 1) ? band.hi : band.lo;
    }
    }
    return band.lo;
}

double PathBatch::price(std::size_t p) const {
    return kind == McKind::LogPrice ? std::exp(x_final[p]) : x_final[p];
}

PathBatch sample_paths(const McDynamics& dyn, Interval band, const PolicySpec& policy,
                       std::size_t n_paths, std::size_t n_steps, double horizon,
                       std::uint64_t seed, bool store_trajectories) {
    if (n_paths < 1 || n_steps < 1 || !(horizon > 0.0) || !band.valid())
        throw std::invalid_argument("sample_paths: bad arguments");
    PathBatch b;
    b.kind = dyn.kind;
    b.x0 = dyn.kind == McKind::LogPrice ? std::log(dyn.x0) : dyn.x0;
    b.rate = dyn.rate;
    b.horizon = horizon;
    b.dt = horizon / static_cast<double>(n_steps);
    b.band = band;
    b.n_paths = n_paths;
    b.n_steps = n_steps;
    b.x_final.resize(n_paths);
    b.qv_final.resize(n_paths);
    b.has_trajectories = store_trajectories;
    if (store_trajectories) {
        b.x_traj.resize(n_paths * (n_steps + 1));
        b.qv_traj.resize(n_paths * (n_steps + 1));
        b.alpha_traj.resize(n_paths * n_steps);
    }

    PolicySpec pol = policy;
    pol.horizon_steps = n_steps;

    const double dt = b.dt;
    const double sdt = std::sqrt(dt);
    for (std::size_t p = 0; p < n_paths; ++p) {
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(p + 1)));
        double x = b.x0;
        double qv = 0.0;
        if (store_trajectories) {
            b.x_traj[p * (n_steps + 1)] = x;
            b.qv_traj[p * (n_steps + 1)] = qv;
        }
        for (std::size_t n = 0; n < n_steps; ++n) {
            double a = pol.at(n, x, p, seed);
            if (a < band.lo - 1e-12 || a > band.hi + 1e-12)
                throw std::runtime_error("sample_paths: policy left the band");
            double vol = std::sqrt(a);
            double z = standard_normal(rng);
            if (dyn.kind == McKind::LogPrice)
                x += (dyn.rate - 0.5 * a) * dt + vol * sdt * z;
            else
                x += vol * sdt * z;
            qv += a * dt;
            if (store_trajectories) {
                b.x_traj[p * (n_steps + 1) + n + 1] = x;
                b.qv_traj[p * (n_steps + 1) + n + 1] = qv;
                b.alpha_traj[p * n_steps + n] = a;
            }
        }
        b.x_final[p] = x;
        b.qv_final[p] = qv;
    }
    return b;
}

namespace {

/// Pairwise sum: schedule-independent and accurate for large batches.
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i)
            s += v[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

} // namespace

McEstimate policy_value_estimate(const PathBatch& batch, const FieldExpr& payoff,
                                 double r) {
    if (payoff.empty())
        throw std::invalid_argument("policy_value_estimate: payoff required");
    const double disc = std::exp(-r * batch.horizon);
    std::vector<double> vals(batch.n_paths), sq(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        double v = disc * payoff(batch.price(p));
        vals[p] = v;
        sq[p] = v * v;
    }
    const auto n = static_cast<double>(batch.n_paths);
    double mean = pairwise_sum(vals, 0, vals.size()) / n;
    McEstimate est;
    est.value = mean;
    if (batch.n_paths > 1) {
        double var = (pairwise_sum(sq, 0, sq.size()) - n * mean * mean) / (n - 1.0);
        est.std_error = std::sqrt(std::max(var, 0.0) / n);
    }
    return est;
}

ScanResult representation_scan(const FieldExpr& payoff, Interval band,
                               const McDynamics& dyn, double horizon, std::size_t na,
                               const QuadratureSpec& quad) {
    if (na < 2 || !band.valid() || !(horizon > 0.0))
        throw std::invalid_argument("representation_scan: bad arguments");
    ScanResult res;
    res.table.reserve(na);
    const double st = std::sqrt(horizon);
    for (std::size_t k = 0; k < na; ++k) {
        double a = band.lo + (band.hi - band.lo) * static_cast<double>(k) /
                                 static_cast<double>(na - 1);
        double vol = std::sqrt(a);
        double value;
        if (dyn.kind == McKind::LogPrice) {
            double disc = std::exp(-dyn.rate * horizon);
            double growth = (dyn.rate - 0.5 * a) * horizon;
            value = disc * gaussian_expectation(
                               [&](double z) {
                                   return payoff(dyn.x0 * std::exp(growth + vol * st * z));
                               },
                               1.0, quad);
        } else {
            value = gaussian_expectation(
                [&](double z) { return payoff(dyn.x0 + vol * st * z); }, 1.0, quad);
        }
        res.table.emplace_back(a, value);
        if (k == 0 || value < res.min_value) {
            res.min_value = value;
            res.argmin = a;
        }
        if (k == 0 || value > res.max_value) {
            res.max_value = value;
            res.argmax = a;
        }
    }
    return res;
}

QuadVarReport quad_var_report(const PathBatch& batch, const FieldExpr& eta) {
    if (!batch.has_trajectories)
        throw std::invalid_argument("quad_var_report: batch has no trajectories");
    QuadVarReport rep;
    const double dt = batch.dt;
    const std::size_t ns = batch.n_steps;
    bool first = true;
    rep.per_path.resize(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        const double* qv = &batch.qv_traj[p * (ns + 1)];
        auto& pp = rep.per_path[p];
        bool pfirst = true;
        for (std::size_t len = 1; len <= ns; len *= 2) {
            double tau = dt * static_cast<double>(len);
            double slack = 1e-9 * (1.0 + batch.band.hi * tau);
            for (std::size_t s = 0; s + len <= ns; s += len) {
                double dq = qv[s + len] - qv[s];
                ++rep.windows_checked;
                if (dq < batch.band.lo * tau - slack ||
                    dq > batch.band.hi * tau + slack) {
                    ++rep.violations;
                    ++pp.violations;
                }
                if (len == 1) {
                    double ratio = dq / dt;
                    if (pfirst) {
                        pp.min_ratio = pp.max_ratio = ratio;
                        pfirst = false;
                    } else {
                        pp.min_ratio = std::min(pp.min_ratio, ratio);
                        pp.max_ratio = std::max(pp.max_ratio, ratio);
                    }
                    if (first) {
                        rep.min_ratio = rep.max_ratio = ratio;
                        first = false;
                    } else {
                        rep.min_ratio = std::min(rep.min_ratio, ratio);
                        rep.max_ratio = std::max(rep.max_ratio, ratio);
                    }
                }
            }
        }
        if (!eta.empty()) {
            rep.weighted_checked = true;
            double wq = 0.0, wt = 0.0;
            for (std::size_t n = 0; n < ns; ++n) {
                EvalContext ctx;
                ctx.t = dt * static_cast<double>(n);
                double e2 = eta.eval(ctx);
                e2 *= e2;
                wq += e2 * (qv[n + 1] - qv[n]);
                wt += e2 * dt;
            }
            double slack = 1e-9 * (1.0 + batch.band.hi * wt);
            if (wq < batch.band.lo * wt - slack || wq > batch.band.hi * wt + slack)
                ++rep.weighted_violations;
        }
    }
    return rep;
}

CounterexampleReport counterexample_limit(Interval band,
                                          const std::vector<double>& deltas) {
    if (!band.valid())
        throw std::invalid_argument("counterexample_limit: invalid band");
    CounterexampleReport rep;
    const double ends[2] = {band.lo, band.hi};
    for (double delta : deltas) {
        if (!(delta > 0.0))
            throw std::invalid_argument("counterexample_limit: delta must be > 0");
        // X_delta = (<B>_{t+delta} - <B>_t)/delta - (<B>_t - <B>_{t-delta})/delta.
        // The backward window is realized first; the forward control may then
        // be chosen adversarially (independence of increments), so the sup
        // nests exactly over the two window rates.
        bool first = true;
        double best = 0.0;
        for (double vb : ends)
            for (double vf : ends) {
                double v = (vf * delta) / delta - (vb * delta) / delta;
                if (first || v > best) {
                    best = v;
                    first = false;
                }
            }
        rep.rows.emplace_back(delta, best);
    }
    rep.qs_limit = 0.0;
    return rep;
}

} // namespace gexpect
