#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vortsol {

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitNumerical = 3 };

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct SweepRow {
    double V;
    double omega_plus;
    double f;
    int focusing_count;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int sign_changes = 0;
    double bracket_lo = 0;  // samples on either side of the first sign change
    double bracket_hi = 0;
    double root = 0;        // bisection-refined root of f inside the bracket
};

// Log-spaced samples of f(V) and the number of focusing critical points.
SweepResult sweep(double V_lo, double V_hi, int samples);
SweepResult sweep_serial(double V_lo, double V_hi, int samples);

} // namespace vortsol
