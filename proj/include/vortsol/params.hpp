#pragma once

#include <stdexcept>
#include <string>

namespace vortsol {

// Thrown when a quantity is only defined in dimensional form (g = 0 or gamma = 0).
class DimensionalOnlyError : public std::invalid_argument {
public:
    explicit DimensionalOnlyError(const std::string& what)
        : std::invalid_argument("use dimensional pipeline: " + what) {}
};

class PhysicalParams {
public:
    PhysicalParams(double g, double sigma, double gamma);

    double g() const noexcept { return g_; }
    double sigma() const noexcept { return sigma_; }
    double gamma() const noexcept { return gamma_; }

private:
    double g_;
    double sigma_;
    double gamma_;
};

struct NondimParams {
    double V;
    double G;
};

struct ScaleFactors {
    double alpha_scale;
    double t_scale;
    double W_scale;
    double Q_scale;
    double c_scale;
};

struct Nondimensionalization {
    NondimParams nondim;
    ScaleFactors scales;
};

Nondimensionalization nondimensionalize(const PhysicalParams& p);

// The problem (g = 1, sigma = V, gamma = 1).
PhysicalParams nondimensional_problem(double V);

} // namespace vortsol
