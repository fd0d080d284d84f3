#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace gexpect {

/// Closed interval of variance-per-unit-time values [sigma_lo^2, sigma_hi^2].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool valid() const { return lo >= 0.0 && hi >= lo; }
    double width() const { return hi - lo; }
};

/// Axis-aligned box of per-dimension variance bands; the uncertainty set
/// of a G-Brownian motion with diagonal structure.
struct UncertaintyBox {
    std::vector<Interval> bands;

    UncertaintyBox() = default;
    explicit UncertaintyBox(std::vector<Interval> b) : bands(std::move(b)) { validate(); }
    static UncertaintyBox one(double lo, double hi) {
        return UncertaintyBox({Interval{lo, hi}});
    }

    std::size_t dimension() const { return bands.size(); }
    void validate() const {
        if (bands.empty())
            throw std::invalid_argument("UncertaintyBox: dimension must be >= 1");
        for (const auto& b : bands)
            if (!b.valid())
                throw std::invalid_argument("UncertaintyBox: need 0 <= lo <= hi");
    }
};

enum class BandEnd : std::uint8_t { Lo = 0, Hi = 1 };

/// Optimum of an affine function of the variance controls over a box,
/// with the attaining vertex.
struct GFunctionValue {
    double value = 0.0;
    std::vector<BandEnd> vertex;
};

enum class OptMode { Inf, Sup };

/// G_*(a) over a single band: (1/2) inf_{v in band} v*a = (1/2)(lo*a+ - hi*a-).
GFunctionValue g_star(double a, Interval band);

/// Dual sublinear G: g_sup(a) = -g_star(-a).
GFunctionValue g_sup(double a, Interval band);

/// Optimize c0 + sum_j c_j * v_j over v in the box. The objective is affine
/// in each coordinate so the optimum sits at a vertex; ties resolve to the
/// lo endpoint. Sup is computed as the exact negation of Inf on negated
/// coefficients, which makes the duality identity hold to the last bit.
GFunctionValue optimize_box_affine(double c0, std::span<const double> c,
                                   const UncertaintyBox& box, OptMode mode);

inline double band_value(const Interval& b, BandEnd e) {
    return e == BandEnd::Lo ? b.lo : b.hi;
}

} // namespace gexpect
