#pragma once

#include "vortsol/params.hpp"

#include <vector>

namespace vortsol {

// plus: the branch c_plus(k) <= 0, whose maximum is c1.
// minus: the branch c_minus(k) >= 0, whose minimum is c2.
enum class Branch { plus, minus };

const char* to_string(Branch b);

struct SpeedPair {
    double c_plus;
    double c_minus;
};

struct NlsCoefficients {
    double a1;
    double a2;
};

struct CriticalPoint {
    Branch branch;
    double c_star;
    double omega;
    bool focusing;
    double a1;
    double a2;
};

SpeedPair wave_speed_branches(const PhysicalParams& p, double k);

// Real roots of c^4 = 4 sigma (g + c gamma) with g + c gamma > 0, ascending.
std::vector<double> critical_velocities(const PhysicalParams& p);

double critical_frequency(const PhysicalParams& p, double c_star);

double symbol_L(const PhysicalParams& p, double c, double xi);
double symbol_ell_tilde(const PhysicalParams& p, double c, double xi);
double symbol_ell_tilde_prime(const PhysicalParams& p, double c, double xi);

NlsCoefficients nls_coefficients(const PhysicalParams& p, double omega);

std::vector<CriticalPoint> critical_points(const PhysicalParams& p);

struct DispersionRow {
    double k;
    double c_plus;
    double c_minus;
};

// Samples k on a log grid of |k| between k_min and k_max (both negative).
std::vector<DispersionRow> dispersion_table(const PhysicalParams& p, double k_min,
                                            double k_max, int samples);
std::vector<DispersionRow> dispersion_table_serial(const PhysicalParams& p, double k_min,
                                                   double k_max, int samples);

} // namespace vortsol
