#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gexpect/model.hpp"

namespace gexpect {

/// Space-time grid, uniform per dimension (optionally uniform in log x).
/// Supports 1 or 2 state dimensions; 2-d grids are used by the G-heat
/// solver only.
struct GridSpec {
    std::vector<double> x_min; // per state dimension
    std::vector<double> x_max;
    std::vector<std::size_t> nx; // points per dimension, >= 3
    double horizon = 1.0;        // T
    std::size_t nt = 1;          // time steps
    bool log_space = false;      // grid coordinates are ln(price)

    std::size_t state_dim() const { return nx.size(); }
    double dt() const { return horizon / static_cast<double>(nt); }
    double dx(std::size_t dim = 0) const {
        return (x_max[dim] - x_min[dim]) / static_cast<double>(nx[dim] - 1);
    }
    double node(std::size_t i, std::size_t dim = 0) const {
        return x_min[dim] + static_cast<double>(i) * dx(dim);
    }
    std::size_t total_nodes() const {
        std::size_t n = 1;
        for (std::size_t k : nx)
            n *= k;
        return n;
    }

    void validate() const;

    static GridSpec make1d(double x_min, double x_max, std::size_t nx, double horizon,
                           std::size_t nt, bool log_space = false);
};

/// Raised when the explicit scheme's stability condition fails; carries the
/// largest admissible step so callers can report it.
class CflError : public std::runtime_error {
public:
    CflError(double dt, double dt_max)
        : std::runtime_error("CFL violation: dt = " + std::to_string(dt) +
                             " exceeds admissible " + std::to_string(dt_max)),
          dt_max_(dt_max) {}
    double admissible_dt() const { return dt_max_; }

private:
    double dt_max_;
};

/// Largest stable time step for the explicit monotone scheme on this grid:
/// dt * max over nodes and box vertices of
///   [ sum_j sigma_j^2 alpha_j^2 / dx^2 + |drift| / dx + K ] <= 1.
double max_stable_dt(const ModelSpec& model, const GridSpec& grid);

/// Throws CflError when grid.dt() exceeds max_stable_dt.
void check_cfl(const ModelSpec& model, const GridSpec& grid);

} // namespace gexpect
