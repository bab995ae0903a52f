#include "vortsol/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vortsol {

const char* to_string(Branch b) {
    return b == Branch::plus ? "plus" : "minus";
}

SpeedPair wave_speed_branches(const PhysicalParams& p, double k) {
    if (!(k < 0)) throw std::invalid_argument("wave_speed_branches requires k < 0");
    const double g = p.g(), s = p.sigma(), gm = p.gamma();
    // k c^2 + gamma c + (g + sigma k^2) = 0
    const double c0 = g + s * k * k;
    const double disc = gm * gm - 4.0 * k * c0;
    const double root = std::sqrt(disc);
    const double q = -0.5 * (gm + std::copysign(root, gm == 0 ? 1.0 : gm));
    double r1 = q / k;
    double r2 = (q != 0) ? c0 / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    return {r1, r2};
}

namespace {

double quartic_h(double c, double s4g, double s4gm) {
    const double c2 = c * c;
    return c2 * c2 - s4gm * c - s4g;
}

// h is convex; started where h > 0 Newton approaches the root monotonically.
double newton_root(double lo, double hi, bool from_hi, double s4g, double s4gm) {
    double x = from_hi ? hi : lo;
    for (int it = 0; it < 200; ++it) {
        const double h = quartic_h(x, s4g, s4gm);
        const double dh = 4.0 * x * x * x - s4gm;
        double nx = (dh != 0) ? x - h / dh : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (quartic_h(nx, s4g, s4gm) > 0) {
            (from_hi ? hi : lo) = nx;
        } else {
            (from_hi ? lo : hi) = nx;
        }
        if (nx == x || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * std::abs(nx)) {
            x = nx;
            break;
        }
        x = nx;
    }
    return x;
}

} // namespace

std::vector<double> critical_velocities(const PhysicalParams& p) {
    const double g = p.g(), s = p.sigma(), gm = p.gamma();
    if (s == 0) throw std::invalid_argument("critical velocities need sigma > 0");
    if (g == 0) {
        if (gm == 0) throw std::invalid_argument("g = 0 requires gamma != 0");
        return {std::cbrt(4.0 * s * gm)};
    }
    const double s4g = 4.0 * s * g;
    const double s4gm = 4.0 * s * gm;
    const double split = std::cbrt(s * gm);
    const double bound = 1.0 + std::max(std::abs(s4gm), s4g);
    const double c1 = newton_root(-bound, split, false, s4g, s4gm);
    const double c2 = newton_root(split, bound, true, s4g, s4gm);
    return {c1, c2};
}

double critical_frequency(const PhysicalParams& p, double c_star) {
    if (p.sigma() == 0) throw std::invalid_argument("critical frequency needs sigma > 0");
    return -c_star * c_star / (2.0 * p.sigma());
}

double symbol_L(const PhysicalParams& p, double c, double xi) {
    const double a = std::abs(xi);
    return p.g() + c * p.gamma() - c * c * a + p.sigma() * xi * xi;
}

double symbol_ell_tilde(const PhysicalParams& p, double c, double xi) {
    return p.g() + c * p.gamma() - c * c * xi + p.sigma() * xi * xi;
}

double symbol_ell_tilde_prime(const PhysicalParams& p, double c, double xi) {
    return -c * c + 2.0 * p.sigma() * xi;
}

NlsCoefficients nls_coefficients(const PhysicalParams& p, double omega) {
    if (!(omega < 0)) throw std::invalid_argument("nls_coefficients requires omega < 0");
    const double g = p.g(), s = p.sigma(), gm = p.gamma();
    const double w = std::abs(omega);
    const double a1 = std::sqrt(gm * gm - 4.0 * omega * (g + s * omega * omega));
    const double a2 = 1.5 * s * w * w * w - gm * gm;
    return {a1, a2};
}

std::vector<CriticalPoint> critical_points(const PhysicalParams& p) {
    std::vector<CriticalPoint> out;
    for (double c : critical_velocities(p)) {
        CriticalPoint cp{};
        cp.branch = c < 0 ? Branch::plus : Branch::minus;
        cp.c_star = c;
        cp.omega = critical_frequency(p, c);
        const auto co = nls_coefficients(p, cp.omega);
        cp.a1 = co.a1;
        cp.a2 = co.a2;
        cp.focusing = co.a2 > 0;
        out.push_back(cp);
    }
    return out;
}

namespace {

void check_range(double k_min, double k_max, int samples) {
    if (!(k_min < 0 && k_max < 0)) throw std::invalid_argument("k range must be negative");
    if (samples < 2) throw std::invalid_argument("need at least two samples");
}

double sample_k(double k_min, double k_max, int samples, int i) {
    if (i == 0) return k_min;
    if (i == samples - 1) return k_max;
    const double la = std::log(std::abs(k_min));
    const double lb = std::log(std::abs(k_max));
    const double t = static_cast<double>(i) / (samples - 1);
    return -std::exp(la + t * (lb - la));
}

} // namespace

std::vector<DispersionRow> dispersion_table_serial(const PhysicalParams& p, double k_min,
                                                   double k_max, int samples) {
    check_range(k_min, k_max, samples);
    std::vector<DispersionRow> rows(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) {
        const double k = sample_k(k_min, k_max, samples, i);
        const auto c = wave_speed_branches(p, k);
        rows[static_cast<size_t>(i)] = {k, c.c_plus, c.c_minus};
    }
    return rows;
}

std::vector<DispersionRow> dispersion_table(const PhysicalParams& p, double k_min,
                                            double k_max, int samples) {
    check_range(k_min, k_max, samples);
    std::vector<DispersionRow> rows(static_cast<size_t>(samples));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) {
        const double k = sample_k(k_min, k_max, samples, i);
        const auto c = wave_speed_branches(p, k);
        rows[static_cast<size_t>(i)] = {k, c.c_plus, c.c_minus};
    }
    return rows;
}

} // namespace vortsol
