#include "vortsol/radicals.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortsol {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kTwo53 = std::cbrt(32.0);  // 2^{5/3}

} // namespace

double quartic_eval(double G, double k) {
    const double k2 = k * k;
    return k2 * k2 - 2.0 * G * k2 + 2.0 * G * k + G * G;
}

double resolvent_eval(double G, double y) {
    return 8.0 * y * y * y - 16.0 * G * y * y - 4.0 * G * G;
}

namespace {

// -sqrt(2 y0) + sqrt(...) cancels for small G; a few guarded Newton steps on P recover
// full relative accuracy.
double polish_root(double G, double k) {
    for (int it = 0; it < 6; ++it) {
        const double p = quartic_eval(G, k);
        const double dp = 4.0 * k * k * k - 4.0 * G * k + 2.0 * G;
        if (p == 0 || dp == 0) break;
        const double nk = k - p / dp;
        if (!(std::abs(quartic_eval(G, nk)) < std::abs(p))) break;
        k = nk;
    }
    return k;
}

} // namespace

ResolventRoot resolvent_root(double G) {
    if (!(G > 0) || !std::isfinite(G)) throw std::invalid_argument("resolvent_root requires G > 0");
    ResolventRoot r{};
    if (G > 1e30) {
        // z0 = G^3 (32 + 27/G + 3 sqrt3 sqrt(27/G^2 + 64/G)); z1 = 2^{5/3} G / cbrt(z0)
        const double w = 32.0 + 27.0 / G + 3.0 * kSqrt3 * std::sqrt(27.0 / (G * G) + 64.0 / G);
        r.z0 = std::numeric_limits<double>::quiet_NaN();
        r.z1 = kTwo53 / std::cbrt(w);
    } else if (G < 1e-30) {
        // z0 = G^2 (32 G + 27 + 3 sqrt3 sqrt(27 + 64 G))
        const double w = 32.0 * G + 27.0 + 3.0 * kSqrt3 * std::sqrt(27.0 + 64.0 * G);
        r.z0 = std::numeric_limits<double>::quiet_NaN();
        r.z1 = kTwo53 * std::cbrt(G) / std::cbrt(w);
    } else {
        const double G2 = G * G;
        r.z0 = 32.0 * G2 * G + 27.0 * G2 + 3.0 * kSqrt3 * std::sqrt(27.0 * G2 * G2 + 64.0 * G2 * G2 * G);
        r.z1 = kTwo53 * G / std::cbrt(r.z0);
    }
    r.y0 = (2.0 * G / 3.0) * (1.0 + r.z1 + 1.0 / r.z1);
    return r;
}

QuarticSolution critical_frequencies_radicals(double G) {
    const ResolventRoot r = resolvent_root(G);
    QuarticSolution s{};
    s.G = G;
    s.z0 = r.z0;
    s.z1 = r.z1;
    s.y0 = r.y0;
    const double s2y = std::sqrt(2.0 * r.y0);
    const double t = 4.0 * G / s2y;
    s.first_discriminant = -2.0 * r.y0 + 4.0 * G - t;
    s.second_radicand = -2.0 * r.y0 + 4.0 * G + t;
    double rad = s.second_radicand;
    if (rad < 0) {
        if (rad > -1e-12 * G) {
            rad = 0;
            s.radicand_clamped = true;
        } else {
            throw std::domain_error("negative radicand in the critical-frequency formula");
        }
    }
    const double sr = std::sqrt(rad);
    s.omega_minus = 0.5 * (-s2y - sr);
    s.omega_plus = 0.5 * (-s2y + sr);
    // near-double roots at large G are better left to the formula
    if (std::abs(s.omega_plus) < 0.25 * s2y) s.omega_plus = polish_root(G, s.omega_plus);
    return s;
}

double f_of_V(double V) {
    if (!(V > 0)) throw std::invalid_argument("f_of_V requires V > 0");
    const double w = critical_frequencies_radicals(1.0 / V).omega_plus;
    return -1.5 * V * w * w * w - 1.0;
}

} // namespace vortsol
