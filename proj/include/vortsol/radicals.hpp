#pragma once

namespace vortsol {

struct ResolventRoot {
    double z0;  // NaN when the factored forms were used (z0 overflows)
    double z1;
    double y0;
};

struct QuarticSolution {
    double G;
    double z0;
    double z1;
    double y0;
    double omega_minus;
    double omega_plus;
    double first_discriminant;   // -2 y0 + 4G - 4G/sqrt(2 y0), negative
    double second_radicand;      // -2 y0 + 4G + 4G/sqrt(2 y0), nonnegative
    bool radicand_clamped;
};

// k^4 - 2G k^2 + 2G k + G^2
double quartic_eval(double G, double k);

// 8 y^3 - 16 G y^2 - 4 G^2
double resolvent_eval(double G, double y);

ResolventRoot resolvent_root(double G);

QuarticSolution critical_frequencies_radicals(double G);

// f(V) = -(3/2) V omega_plus^3 - 1, with omega_plus from the radicals formula at G = 1/V.
double f_of_V(double V);

} // namespace vortsol
