#include "vortsol/cli.hpp"

#include "vortsol/dispersion.hpp"
#include "vortsol/params.hpp"
#include "vortsol/radicals.hpp"

#include <cmath>
#include <stdexcept>

namespace vortsol {

namespace {

SweepRow sample_row(double V) {
    SweepRow r{};
    r.V = V;
    r.omega_plus = critical_frequencies_radicals(1.0 / V).omega_plus;
    r.f = -1.5 * V * r.omega_plus * r.omega_plus * r.omega_plus - 1.0;
    r.focusing_count = 0;
    for (const auto& cp : critical_points(nondimensional_problem(V)))
        if (cp.focusing) ++r.focusing_count;
    return r;
}

double sample_V(double lo, double hi, int samples, int i) {
    const double t = samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
}

void check(double lo, double hi, int samples) {
    if (!(lo > 0 && lo < hi)) throw std::invalid_argument("sweep needs 0 < V_lo < V_hi");
    if (samples < 2) throw std::invalid_argument("sweep needs at least two samples");
}

void summarize(SweepResult& res) {
    for (size_t i = 1; i < res.rows.size(); ++i) {
        const double a = res.rows[i - 1].f, b = res.rows[i].f;
        if ((a > 0) != (b > 0)) {
            if (res.sign_changes++ == 0) {
                res.bracket_lo = res.rows[i - 1].V;
                res.bracket_hi = res.rows[i].V;
            }
        }
    }
    if (res.sign_changes == 0) return;
    double lo = res.bracket_lo, hi = res.bracket_hi;
    const bool pos_lo = f_of_V(lo) > 0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double m = 0.5 * (lo + hi);
        ((f_of_V(m) > 0) == pos_lo ? lo : hi) = m;
    }
    res.root = 0.5 * (lo + hi);
}

} // namespace

SweepResult sweep_serial(double V_lo, double V_hi, int samples) {
    check(V_lo, V_hi, samples);
    SweepResult res;
    res.rows.resize(static_cast<size_t>(samples));
    for (int i = 0; i < samples; ++i) res.rows[static_cast<size_t>(i)] = sample_row(sample_V(V_lo, V_hi, samples, i));
    summarize(res);
    return res;
}

SweepResult sweep(double V_lo, double V_hi, int samples) {
    check(V_lo, V_hi, samples);
    SweepResult res;
    res.rows.resize(static_cast<size_t>(samples));
#pragma omp parallel for schedule(static)
    for (int i = 0; i < samples; ++i) res.rows[static_cast<size_t>(i)] = sample_row(sample_V(V_lo, V_hi, samples, i));
    summarize(res);
    return res;
}

} // namespace vortsol
