#include "gexpect/model.hpp"

namespace gexpect {

void ModelSpec::validate(double xlo, double xhi, int samples) const {
    box.validate();
    const std::size_t d = box.dimension();
    if (sigma.size() != d)
        throw std::invalid_argument("ModelSpec: sigma must have one field per band");
    if (!h.empty() && h.size() != d)
        throw std::invalid_argument("ModelSpec: h must be empty or have one field per band");
    if (!driver_f.empty() && driver_f.size() != d)
        throw std::invalid_argument("ModelSpec: driver_f must be empty or one field per band");
    if (terminal.empty())
        throw std::invalid_argument("ModelSpec: terminal payoff required");
    if (lipschitz_k < 0.0)
        throw std::invalid_argument("ModelSpec: lipschitz_k must be >= 0");
    if (box_drift)
        box_drift->validate();
    if (box_diffusion)
        box_diffusion->validate();
    if (box_driver)
        box_driver->validate();

    // Soft validation of the declared Lipschitz bound: sampled difference
    // quotients in y must not contradict K.
    double slack = 1.0 + 1e-9;
    if (!driver_g.empty() && driver_g.uses_y()) {
        double k = sample_lipschitz(driver_g, xlo, xhi, samples, -10.0, 10.0, 777, true);
        if (k > lipschitz_k * slack + 1e-12)
            throw std::invalid_argument(
                "ModelSpec: driver g contradicts declared Lipschitz bound (sampled " +
                std::to_string(k) + " > K = " + std::to_string(lipschitz_k) + ")");
    }
    for (const auto& fj : driver_f) {
        if (fj.empty() || !fj.uses_y())
            continue;
        double k = sample_lipschitz(fj, xlo, xhi, samples, -10.0, 10.0, 778, true);
        if (k > lipschitz_k * slack + 1e-12)
            throw std::invalid_argument(
                "ModelSpec: driver f contradicts declared Lipschitz bound");
    }
}

ModelSpec ModelSpec::heat(const UncertaintyBox& box, FieldExpr phi, ExpectationMode mode) {
    ModelSpec m;
    m.box = box;
    m.sigma.assign(box.dimension(), FieldExpr::constant(1.0));
    m.terminal = std::move(phi);
    m.mode = mode;
    return m;
}

} // namespace gexpect
