#include "gexpect/surface.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace gexpect {

std::size_t ValueSurface::nearest_node(double x) const {
    double pos = (x - grid.x_min[0]) / grid.dx(0);
    long i = std::lround(pos);
    if (i < 0)
        i = 0;
    if (i >= static_cast<long>(grid.nx[0]))
        i = static_cast<long>(grid.nx[0]) - 1;
    return static_cast<std::size_t>(i);
}

double ValueSurface::value_at0(double x) const {
    return rows.front()[nearest_node(x)];
}

double ValueSurface::interp_at0(double x) const {
    const auto& r = rows.front();
    double pos = (x - grid.x_min[0]) / grid.dx(0);
    if (pos <= 0.0)
        return r.front();
    if (pos >= static_cast<double>(grid.nx[0] - 1))
        return r.back();
    auto i = static_cast<std::size_t>(pos);
    double w = pos - static_cast<double>(i);
    if (w == 0.0)
        return r[i];
    return (1.0 - w) * r[i] + w * r[i + 1];
}

bool ValueSurface::all_finite() const {
    for (const auto& r : rows)
        for (double v : r)
            if (!std::isfinite(v))
                return false;
    return true;
}

namespace {

void format17(std::ostream& os, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << buf;
}

} // namespace

void write_surface_csv(std::ostream& os, const ValueSurface& s, const ControlPolicy* policy) {
    if (s.grid.state_dim() != 1)
        throw std::invalid_argument("surface CSV supports 1-d grids");
    os << "t,x,value";
    if (policy)
        for (std::size_t j = 0; j < policy->control_dim; ++j)
            os << ",vertex_" << j;
    os << '\n';
    for (std::size_t n = 0; n < s.rows.size(); ++n) {
        for (std::size_t i = 0; i < s.grid.nx[0]; ++i) {
            format17(os, s.time_of(n));
            os << ',';
            format17(os, s.grid.node(i));
            os << ',';
            format17(os, s.rows[n][i]);
            if (policy) {
                for (std::size_t j = 0; j < policy->control_dim; ++j) {
                    // The terminal row carries no control; emit lo.
                    BandEnd e = n < policy->vertices.size() ? policy->at(n, i, j) : BandEnd::Lo;
                    os << ',' << (e == BandEnd::Lo ? "lo" : "hi");
                }
            }
            os << '\n';
        }
    }
}

void write_surface_csv(const std::string& path, const ValueSurface& s,
                       const ControlPolicy* policy) {
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    write_surface_csv(f, s, policy);
}

} // namespace gexpect
