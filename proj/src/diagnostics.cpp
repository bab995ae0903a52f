#include "vortsol/diagnostics.hpp"

#include "vortsol/babenko.hpp"
#include "vortsol/dispersion.hpp"
#include "vortsol/radicals.hpp"

#include <algorithm>
#include <cmath>

namespace vortsol {

RealField random_smooth_field(const PeriodicGrid& grid, std::mt19937_64& rng, double amplitude,
                              int max_mode, bool even) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const int top = std::min(max_mode, grid.n() / 2 - 1);
    std::vector<double> a(static_cast<size_t>(top + 1)), b(static_cast<size_t>(top + 1));
    for (int m = 1; m <= top; ++m) {
        a[static_cast<size_t>(m)] = uni(rng) / (m * m);
        b[static_cast<size_t>(m)] = even ? 0.0 : uni(rng) / (m * m);
    }
    std::vector<double> v(static_cast<size_t>(grid.n()), 0.0);
    double mx = 0;
    for (int j = 0; j < grid.n(); ++j) {
        const double x = grid.node(j);
        double s = 0;
        for (int m = 1; m <= top; ++m) {
            const double k = grid.wavenumber(m);
            s += a[static_cast<size_t>(m)] * std::cos(k * x) + b[static_cast<size_t>(m)] * std::sin(k * x);
        }
        v[static_cast<size_t>(j)] = s;
        mx = std::max(mx, std::abs(s));
    }
    for (double& x : v) x *= amplitude / mx;
    return RealField(grid, std::move(v));
}

namespace {

double spec_norm(const Spectrum& s) {
    double acc = 0;
    for (const auto& z : s) acc += std::norm(z);
    return std::sqrt(acc);
}

Spectrum axpy(const Spectrum& x, double a, const Spectrum& y) {
    Spectrum out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * y[i];
    return out;
}

} // namespace

double frechet_relative_error(const PhysicalParams& p, double c, const RealField& U, const RealField& V) {
    const BabenkoOperator op(p, c, U.grid());
    const Spectrum& u = U.spectrum();
    const Spectrum& v = V.spectrum();
    const Spectrum an = op.frechet(u, v);
    const double h = 1e-5 * std::max(spec_norm(u), 1e-3) / spec_norm(v);
    const Spectrum fd = op.frechet_fd(u, v, h);
    Spectrum d(an.size());
    for (size_t i = 0; i < an.size(); ++i) d[i] = an[i] - fd[i];
    return spec_norm(d) / spec_norm(an);
}

double variational_relative_error(const PhysicalParams& p, double c, const RealField& U, const RealField& V) {
    const BabenkoOperator op(p, c, U.grid());
    const Spectrum& u = U.spectrum();
    const Spectrum& v = V.spectrum();
    const RealField R = RealField::from_spectrum(U.grid(), op.residual(u));
    const double pairing = inner(R, V);
    auto F = [&](double t) {
        const Spectrum w = axpy(u, t, v);
        return op.energy(w) - c * op.momentum(w);
    };
    const double h = 1e-3 * std::max(spec_norm(u), 1e-3) / spec_norm(v);
    const double d = (-F(2 * h) + 8 * F(h) - 8 * F(-h) + F(-2 * h)) / (12 * h);
    return std::abs(pairing - d) / std::abs(pairing);
}

ExpansionScaling capillary_expansion_scaling(double sigma, const RealField& shape,
                                             const std::vector<double>& amplitudes, bool complete) {
    ExpansionScaling out;
    const PhysicalParams p(0.0, sigma, 1.0);
    for (double a : amplitudes) {
        std::vector<double> v = shape.values();
        for (double& x : v) x *= a;
        const RealField U(shape.grid(), std::move(v));
        const RealField exact = capillary_terms(U, p);
        const RealField approx = capillary_cubic_expansion(U, sigma, complete);
        std::vector<double> d(exact.values().size());
        for (size_t j = 0; j < d.size(); ++j) d[j] = exact[j] - approx[j];
        out.amplitudes.push_back(a);
        out.errors.push_back(norm_l2(RealField(shape.grid(), std::move(d))));
    }
    for (size_t i = 0; i + 1 < out.errors.size(); ++i) out.ratios.push_back(out.errors[i] / out.errors[i + 1]);
    return out;
}

std::vector<CheckResult> validation_suite(const PhysicalParams& p, unsigned seed) {
    std::vector<CheckResult> out;
    std::mt19937_64 rng(seed);
    const auto cps = critical_points(p);

    // critical points
    for (const auto& cp : cps) {
        const double c = cp.c_star;
        const double scale = c * c * c * c + 4.0 * p.sigma() * (p.g() + std::abs(c * p.gamma()));
        const double q = std::abs(c * c * c * c - 4.0 * p.sigma() * (p.g() + c * p.gamma())) / scale;
        out.push_back({std::string("critical_quartic_") + to_string(cp.branch), q <= 1e-10, q, 1e-10, ""});
        const double w = std::abs(cp.omega);
        const double lscale = p.g() + std::abs(c * p.gamma()) + c * c * w + p.sigma() * w * w;
        const double l0 = std::abs(symbol_ell_tilde(p, c, w)) / lscale;
        const double l1 = std::abs(symbol_ell_tilde_prime(p, c, w)) / (c * c + 2.0 * p.sigma() * w);
        out.push_back({std::string("symbol_double_root_") + to_string(cp.branch), std::max(l0, l1) <= 1e-10,
                       std::max(l0, l1), 1e-10, ""});
    }

    // linearization and variational structure on a small periodic grid
    if (!cps.empty()) {
        const auto& cp = cps.back();
        const double c = cp.c_star - 0.01;
        const PeriodicGrid grid(64, 8.0 * 2.0 * M_PI / std::abs(cp.omega));
        double fmax = 0, vmax = 0;
        for (int i = 0; i < 20; ++i) {
            const RealField U = random_smooth_field(grid, rng, 0.05 / std::abs(cp.omega), 12, false);
            const RealField V = random_smooth_field(grid, rng, 1.0, 12, false);
            fmax = std::max(fmax, frechet_relative_error(p, c, U, V));
            if (i < 10) vmax = std::max(vmax, variational_relative_error(p, c, U, V));
        }
        out.push_back({"frechet_vs_finite_difference", fmax <= 1e-6, fmax, 1e-6, "20 random directions"});
        out.push_back({"variational_identity", vmax <= 1e-6, vmax, 1e-6, "10 random directions"});
    }

    if (p.sigma() > 0) {
        const PeriodicGrid grid(64, 2.0 * M_PI);
        const RealField shape = random_smooth_field(grid, rng, 1.0, 6, false);
        const auto sc = capillary_expansion_scaling(p.sigma(), shape, {1e-2, 5e-3, 2.5e-3, 1.25e-3}, true);
        double worst = 0;
        bool ok = true;
        for (double r : sc.ratios) {
            ok = ok && r >= 8.0 && r <= 32.0;
            worst = std::max(worst, std::abs(std::log2(r / 16.0)));
        }
        out.push_back({"capillary_expansion_quartic_remainder", ok, worst, 1.0, "|log2(ratio/16)| per halving"});
    }

    // radicals against the quartic
    double worst = 0;
    bool disc_ok = true;
    for (int i = 0; i <= 40; ++i) {
        const double G = std::pow(10.0, -7.0 + 14.0 * i / 40.0);
        const auto s = critical_frequencies_radicals(G);
        const double scale = std::max(1.0, G * G);
        worst = std::max({worst, std::abs(quartic_eval(G, s.omega_minus)) / scale,
                          std::abs(quartic_eval(G, s.omega_plus)) / scale});
        disc_ok = disc_ok && s.first_discriminant < 0;
    }
    out.push_back({"radicals_quartic_residual", worst <= 1e-9, worst, 1e-9, "41 log-spaced G in [1e-7, 1e7]"});
    out.push_back({"first_quadratic_discriminant_negative", disc_ok, disc_ok ? 1.0 : 0.0, 1.0, ""});
    return out;
}

} // namespace vortsol
