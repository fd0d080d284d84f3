#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gexpect/gfunction.hpp"
#include "gexpect/grid.hpp"

namespace gexpect {

/// u(t_n, x_i) over a space-time grid, row 0 = t = 0, row nt = T.
struct ValueSurface {
    GridSpec grid;
    std::vector<std::vector<double>> rows; // (nt+1) rows of total_nodes() values

    std::size_t time_rows() const { return rows.size(); }
    const std::vector<double>& row(std::size_t n) const { return rows[n]; }
    double at(std::size_t n, std::size_t i) const { return rows[n][i]; }
    double time_of(std::size_t n) const { return grid.dt() * static_cast<double>(n); }

    /// Value at t=0 at the node nearest to x.
    double value_at0(double x) const;
    /// Linear interpolation at t=0 (exact when x is a node).
    double interp_at0(double x) const;
    std::size_t nearest_node(double x) const;

    bool all_finite() const;
};

/// Per (time step, node) vertex of the uncertainty box: the attaining
/// control of the Hamiltonian optimization.
struct ControlPolicy {
    GridSpec grid;
    std::size_t control_dim = 0;
    // vertices[n][i * control_dim + j]
    std::vector<std::vector<BandEnd>> vertices;

    BandEnd at(std::size_t n, std::size_t i, std::size_t j = 0) const {
        return vertices[n][i * control_dim + j];
    }
};

/// CSV dump: header "t,x,value[,vertex_0...]", row-major by time then space,
/// 17 significant digits.
void write_surface_csv(std::ostream& os, const ValueSurface& s,
                       const ControlPolicy* policy = nullptr);
void write_surface_csv(const std::string& path, const ValueSurface& s,
                       const ControlPolicy* policy = nullptr);

} // namespace gexpect
