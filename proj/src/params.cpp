#include "vortsol/params.hpp"

#include <cmath>

namespace vortsol {

PhysicalParams::PhysicalParams(double g, double sigma, double gamma)
    : g_(g), sigma_(sigma), gamma_(gamma) {
    if (!std::isfinite(g) || !std::isfinite(sigma) || !std::isfinite(gamma))
        throw std::invalid_argument("physical parameters must be finite");
    if (g < 0 || sigma < 0)
        throw std::invalid_argument("g and sigma must be nonnegative");
    if (g == 0 && sigma == 0)
        throw std::invalid_argument("g and sigma cannot both vanish");
}

Nondimensionalization nondimensionalize(const PhysicalParams& p) {
    const double g = p.g(), s = p.sigma(), gm = p.gamma();
    if (g == 0) throw DimensionalOnlyError("g = 0 makes V = sigma*gamma^4/g^3 undefined");
    if (gm == 0) throw DimensionalOnlyError("gamma = 0 leaves no vorticity scale");
    if (s == 0) throw std::invalid_argument("sigma must be positive to nondimensionalize");

    Nondimensionalization out{};
    const double g2 = g * g;
    const double gm2 = gm * gm;
    out.nondim.V = s * gm2 * gm2 / (g2 * g);
    out.nondim.G = g2 * g / (s * gm2 * gm2);
    out.scales.alpha_scale = gm2 / g;
    out.scales.t_scale = gm;
    out.scales.W_scale = gm2 / g;
    out.scales.Q_scale = gm2 * gm / g2;
    out.scales.c_scale = gm / g;
    return out;
}

PhysicalParams nondimensional_problem(double V) {
    if (!(V > 0)) throw std::invalid_argument("V must be positive");
    return PhysicalParams(1.0, V, 1.0);
}

} // namespace vortsol
