#include "gexpect/gfunction.hpp"

namespace gexpect {

namespace {

// inf over the box of c0 + sum c_j v_j; ties pick Lo for determinism.
GFunctionValue box_inf(double c0, std::span<const double> c, const UncertaintyBox& box) {
    GFunctionValue out;
    out.vertex.reserve(c.size());
    double acc = c0;
    for (std::size_t j = 0; j < c.size(); ++j) {
        const Interval& b = box.bands[j];
        BandEnd pick = (c[j] >= 0.0) ? BandEnd::Lo : BandEnd::Hi;
        acc += c[j] * band_value(b, pick);
        out.vertex.push_back(pick);
    }
    out.value = acc;
    return out;
}

} // namespace

GFunctionValue g_star(double a, Interval band) {
    if (!band.valid())
        throw std::invalid_argument("g_star: invalid band");
    double half = 0.5 * a;
    UncertaintyBox box({band});
    GFunctionValue r = box_inf(0.0, std::span<const double>(&half, 1), box);
    return r;
}

GFunctionValue g_sup(double a, Interval band) {
    GFunctionValue r = g_star(-a, band);
    r.value = -r.value;
    return r;
}

GFunctionValue optimize_box_affine(double c0, std::span<const double> c,
                                   const UncertaintyBox& box, OptMode mode) {
    if (c.size() != box.dimension())
        throw std::invalid_argument("optimize_box_affine: coefficient count != box dimension");
    if (mode == OptMode::Inf)
        return box_inf(c0, c, box);
    std::vector<double> neg(c.size());
    for (std::size_t j = 0; j < c.size(); ++j)
        neg[j] = -c[j];
    GFunctionValue r = box_inf(-c0, neg, box);
    r.value = -r.value;
    return r;
}

} // namespace gexpect
