#pragma once

#include "vortsol/params.hpp"
#include "vortsol/spectral.hpp"

#include <random>
#include <string>
#include <vector>

namespace vortsol {

struct CheckResult {
    std::string name;
    bool passed;
    double value;
    double tolerance;
    std::string detail;
};

// Random band-limited field sum_{m <= max_mode} (a_m cos + b_m sin)(k_m x) with
// coefficients decaying like 1/m^2, scaled to the given sup-norm bound.
RealField random_smooth_field(const PeriodicGrid& grid, std::mt19937_64& rng, double amplitude,
                              int max_mode, bool even);

// ||analytic - central difference|| / ||analytic|| for the linearization at U along V.
double frechet_relative_error(const PhysicalParams& p, double c, const RealField& U, const RealField& V);

// |<R(U), V> - d(E - cP)[V]| / |<R(U), V>| with a fourth-order difference quotient.
double variational_relative_error(const PhysicalParams& p, double c, const RealField& U, const RealField& V);

struct ExpansionScaling {
    std::vector<double> amplitudes;
    std::vector<double> errors;
    std::vector<double> ratios;  // errors[i] / errors[i + 1]
};

ExpansionScaling capillary_expansion_scaling(double sigma, const RealField& shape,
                                             const std::vector<double>& amplitudes, bool complete);

std::vector<CheckResult> validation_suite(const PhysicalParams& p, unsigned seed);

} // namespace vortsol
