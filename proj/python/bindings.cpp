// Python bindings for the gexpect core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <stdexcept>
#include <string>

#include "gexpect/analytic.hpp"
#include "gexpect/gbsde.hpp"
#include "gexpect/lattice.hpp"
#include "gexpect/montecarlo.hpp"
#include "gexpect/pde.hpp"

namespace py = pybind11;
using namespace gexpect;

namespace {

OptMode parse_opt_mode(const std::string& mode) {
    if (mode == "inf")
        return OptMode::Inf;
    if (mode == "sup")
        return OptMode::Sup;
    throw std::invalid_argument("mode must be 'inf' or 'sup'");
}

ExpectationMode parse_exp_mode(const std::string& mode) {
    if (mode == "sub")
        return ExpectationMode::Sub;
    if (mode == "super")
        return ExpectationMode::Super;
    throw std::invalid_argument("mode must be 'sub' or 'super'");
}

py::dict surface_to_dict(const ValueSurface& s) {
    py::dict d;
    py::list nodes;
    for (std::size_t i = 0; i < s.grid.nx[0]; ++i)
        nodes.append(s.grid.node(i));
    py::list times;
    for (std::size_t n = 0; n < s.rows.size(); ++n)
        times.append(s.time_of(n));
    d["x"] = nodes;
    d["t"] = times;
    d["rows"] = s.rows;
    return d;
}

py::dict gheat(const std::string& payoff, double lo, double hi, double x_min,
               double x_max, std::size_t nx, double horizon, std::size_t nt,
               const std::string& mode) {
    GridSpec grid = GridSpec::make1d(x_min, x_max, nx, horizon, nt);
    auto surface = solve_gheat(FieldExpr::parse(payoff), UncertaintyBox::one(lo, hi),
                               grid, parse_opt_mode(mode));
    py::dict d = surface_to_dict(surface);
    d["value0"] = surface.interp_at0(0.0);
    return d;
}

py::dict picard(const std::string& payoff, const std::string& driver_g, double lo,
                double hi, double lipschitz_k, double x_min, double x_max,
                std::size_t nx, double horizon, std::size_t nt, double tol,
                std::size_t max_iter, const std::string& mode) {
    ModelSpec model = ModelSpec::heat(UncertaintyBox::one(lo, hi),
                                      FieldExpr::parse(payoff),
                                      parse_exp_mode(mode));
    if (!driver_g.empty())
        model.driver_g = FieldExpr::parse(driver_g);
    model.lipschitz_k = lipschitz_k;
    GridSpec grid = GridSpec::make1d(x_min, x_max, nx, horizon, nt);
    auto result = picard_solve(model, grid, tol, max_iter);
    py::dict d = surface_to_dict(result.surface);
    d["value0"] = result.surface.interp_at0(0.0);
    d["iterations"] = result.diagnostics.iterates;
    d["beta"] = result.diagnostics.beta;
    d["ratios"] = result.diagnostics.ratios;
    d["converged"] = result.diagnostics.converged;
    return d;
}

py::dict bsb(const std::string& payoff, double rate, double sigma_lo,
             double sigma_hi, double spot, double maturity, std::size_t nx,
             std::size_t nt, const std::string& side) {
    BSBSpec spec;
    spec.payoff = FieldExpr::parse(payoff);
    spec.rate = rate;
    spec.sigma_lo = sigma_lo;
    spec.sigma_hi = sigma_hi;
    spec.spot = spot;
    spec.maturity = maturity;
    spec.nx = nx;
    spec.nt = nt;
    if (side == "offer")
        spec.side = BSBSide::Offer;
    else if (side == "bid")
        spec.side = BSBSide::Bid;
    else
        throw std::invalid_argument("side must be 'offer' or 'bid'");
    auto result = bsb_price(spec);
    py::dict d;
    d["price"] = result.price;
    d["nx"] = result.grid.nx[0];
    d["nt"] = result.grid.nt;
    return d;
}

py::dict scan(const std::string& payoff, double lo, double hi, double spot,
              double rate, double horizon, std::size_t na) {
    McDynamics dyn;
    dyn.kind = McKind::LogPrice;
    dyn.x0 = spot;
    dyn.rate = rate;
    auto result = representation_scan(FieldExpr::parse(payoff), Interval{lo, hi},
                                      dyn, horizon, na);
    py::dict d;
    d["table"] = result.table;
    d["min_value"] = result.min_value;
    d["max_value"] = result.max_value;
    d["argmin"] = result.argmin;
    d["argmax"] = result.argmax;
    return d;
}

py::dict counterexample(double lo, double hi, const std::vector<double>& deltas) {
    auto rep = counterexample_limit(Interval{lo, hi}, deltas);
    py::dict d;
    d["rows"] = rep.rows;
    d["qs_limit"] = rep.qs_limit;
    return d;
}

py::dict mc_policy_value(const std::string& payoff, double lo, double hi,
                         double x0, double rate, const std::string& kind,
                         std::size_t n_paths, std::size_t n_steps, double horizon,
                         std::uint64_t seed, double alpha_sq) {
    McDynamics dyn;
    if (kind == "log_price")
        dyn.kind = McKind::LogPrice;
    else if (kind == "arithmetic")
        dyn.kind = McKind::Arithmetic;
    else
        throw std::invalid_argument("kind must be 'log_price' or 'arithmetic'");
    dyn.x0 = x0;
    dyn.rate = rate;
    Interval band{lo, hi};
    PolicySpec policy = alpha_sq >= 0.0
                            ? PolicySpec::constant(band, alpha_sq)
                            : PolicySpec::random_bang_bang(band, seed);
    auto batch =
        sample_paths(dyn, band, policy, n_paths, n_steps, horizon, seed, true);
    auto est = policy_value_estimate(batch, FieldExpr::parse(payoff), rate);
    auto qv = quad_var_report(batch);
    py::dict d;
    d["value"] = est.value;
    d["std_error"] = est.std_error;
    d["qv_violations"] = qv.violations;
    return d;
}

double bs_price(const std::string& kind, double s, double k, double r, double t,
                double sigma) {
    OptionKind ok;
    if (kind == "call")
        ok = OptionKind::Call;
    else if (kind == "put")
        ok = OptionKind::Put;
    else
        throw std::invalid_argument("kind must be 'call' or 'put'");
    return extremal_bs_price(ok, s, k, r, t, sigma);
}

double quadvar(const std::string& phi, double t, double lo, double hi,
               const std::string& mode, std::size_t na) {
    return quadvar_functional(FieldExpr::parse(phi), t, Interval{lo, hi},
                              parse_opt_mode(mode), na);
}

double gauss_expect(const std::string& phi, double sigma) {
    return gaussian_expectation(FieldExpr::parse(phi), sigma);
}

} // namespace

PYBIND11_MODULE(_gexpect, m) {
    m.doc() = "Sublinear/superlinear expectation solvers";

    m.def("solve_gheat", &gheat, py::arg("payoff"), py::arg("lo"), py::arg("hi"),
          py::arg("x_min"), py::arg("x_max"), py::arg("nx"), py::arg("horizon"),
          py::arg("nt"), py::arg("mode") = "sup",
          "Solve the nonlinear heat equation for a payoff over a variance band.");

    m.def("picard_solve", &picard, py::arg("payoff"), py::arg("driver_g"),
          py::arg("lo"), py::arg("hi"), py::arg("lipschitz_k"), py::arg("x_min"),
          py::arg("x_max"), py::arg("nx"), py::arg("horizon"), py::arg("nt"),
          py::arg("tol") = 1e-8, py::arg("max_iter") = 200,
          py::arg("mode") = "super",
          "Solve a driver equation by Picard iteration on the lattice.");

    m.def("bsb_price", &bsb, py::arg("payoff"), py::arg("rate"),
          py::arg("sigma_lo"), py::arg("sigma_hi"), py::arg("spot"),
          py::arg("maturity"), py::arg("nx") = 400, py::arg("nt") = 0,
          py::arg("side") = "offer",
          "Price an option under volatility uncertainty (offer or bid side).");

    m.def("representation_scan", &scan, py::arg("payoff"), py::arg("lo"),
          py::arg("hi"), py::arg("spot"), py::arg("rate"), py::arg("horizon"),
          py::arg("na") = 17,
          "Scan constant-variance policies and report the extremal values.");

    m.def("counterexample_limit", &counterexample, py::arg("lo"), py::arg("hi"),
          py::arg("deltas"),
          "Evaluate the downward-limit counterexample on a variance band.");

    m.def("mc_policy_value", &mc_policy_value, py::arg("payoff"), py::arg("lo"),
          py::arg("hi"), py::arg("x0"), py::arg("rate"), py::arg("kind"),
          py::arg("n_paths"), py::arg("n_steps"), py::arg("horizon"),
          py::arg("seed") = 1, py::arg("alpha_sq") = -1.0,
          "Monte Carlo value of a constant (alpha_sq >= 0) or random policy.");

    m.def("extremal_bs_price", &bs_price, py::arg("kind"), py::arg("s"),
          py::arg("k"), py::arg("r"), py::arg("t"), py::arg("sigma"),
          "Black-Scholes price at one volatility endpoint.");

    m.def("quadvar_functional", &quadvar, py::arg("phi"), py::arg("t"),
          py::arg("lo"), py::arg("hi"), py::arg("mode") = "sup",
          py::arg("na") = 64,
          "Extremal expectation of phi(<B>_t) over the variance band.");

    m.def("gaussian_expectation", &gauss_expect, py::arg("phi"), py::arg("sigma"),
          "Gaussian quadrature oracle E[phi(sigma Z)].");

    m.attr("__version__") = "1.0.0";
}
