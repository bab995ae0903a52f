#pragma once

#include "vortsol/dispersion.hpp"
#include "vortsol/params.hpp"
#include "vortsol/spectral.hpp"

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortsol {

class AmplitudeRegimeError : public std::runtime_error {
public:
    AmplitudeRegimeError()
        : std::runtime_error("profile outside small-amplitude regime: J <= 0") {}
};

class DefocusingError : public std::runtime_error {
public:
    DefocusingError() : std::runtime_error("defocusing: no soliton") {}
};

// Residual, linearization and functionals of the Babenko equation at speed c,
// acting on half spectra of even or general real fields on a fixed grid.
// Nonlinear terms are formed on a grid of 2n points and truncated.
class BabenkoOperator {
public:
    BabenkoOperator(const PhysicalParams& p, double c, const PeriodicGrid& grid);

    const PhysicalParams& params() const noexcept { return p_; }
    double c() const noexcept { return c_; }
    const PeriodicGrid& grid() const noexcept { return grid_; }
    int modes() const noexcept { return grid_.n() / 2; }

    // g + c gamma - c^2 |k| + sigma k^2 at FFT index m
    double symbol(int m) const;

    Spectrum residual(const Spectrum& u) const;
    Spectrum capillary(const Spectrum& u) const;
    // derivative of the residual with respect to c
    Spectrum residual_dc(const Spectrum& u) const;
    double energy(const Spectrum& u) const;
    double momentum(const Spectrum& u) const;
    double min_jacobian(const Spectrum& u) const;

    class Linearization {
    public:
        Spectrum apply(const Spectrum& v) const;

    private:
        friend class BabenkoOperator;
        const BabenkoOperator* op_ = nullptr;
        std::vector<double> U_, DU_, Ua_, q_, DUsq_;
    };

    Linearization linearize(const Spectrum& u) const;
    Spectrum frechet(const Spectrum& u, const Spectrum& v) const;
    Spectrum frechet_fd(const Spectrum& u, const Spectrum& v, double h) const;

    int padded_size() const noexcept { return 2 * grid_.n(); }

private:
    friend class Linearization;
    std::vector<double> pad(const Spectrum& u, int kind) const;
    void abs_D_padded(std::vector<double>& v) const;
    Spectrum truncate(const std::vector<double>& v) const;

    PhysicalParams p_;
    double c_;
    PeriodicGrid grid_;
};

RealField jacobian_J(const RealField& U);
RealField capillary_terms(const RealField& U, const PhysicalParams& p);
// Cubic Taylor expansion of the capillary terms; `complete` adds the cubic terms
// sigma |D|(|D|U U_a^2) - sigma d_a((|D|U)^2 U_a) that the short form omits.
RealField capillary_cubic_expansion(const RealField& U, double sigma, bool complete);
RealField babenko_residual(const RealField& U, double c, const PhysicalParams& p);
RealField babenko_frechet(const RealField& U, double c, const PhysicalParams& p, const RealField& V);
double energy(const RealField& U, double c, const PhysicalParams& p);
double momentum(const RealField& U, double c, const PhysicalParams& p);

enum class CriticalBranch { c1, c2 };
const char* to_string(CriticalBranch b);

enum class JacobianMode { analytic, finite_difference };
enum class LinearSolver { automatic, dense, gmres };

struct SolverConfig {
    double newton_tol = 1e-10;
    int max_iter = 30;
    std::vector<double> continuation_steps{0.08, 0.04, 0.02, 0.01};
    JacobianMode jacobian_mode = JacobianMode::analytic;
    LinearSolver linear_solver = LinearSolver::automatic;
    int dense_max_modes = 1024;
    int points_per_wavelength = 12;
    std::vector<double> seed_amplitudes{1.0, 2.0};
    bool calibrate_amplitude = true;
    double max_seed_deviation = 0.5;
};

// Linearization in the cosine basis: column j is the response to the j-th coefficient.
// Columns are filled concurrently; the serial variant is the reference.
Eigen::MatrixXd assemble_frechet_matrix(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode);
Eigen::MatrixXd assemble_frechet_matrix_serial(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode);

struct GridChoice {
    int n;
    double length;
};

GridChoice choose_grid(double a1, double sigma, double omega, double eps, int points_per_wavelength);

struct WaveProfile {
    PhysicalParams params;
    CriticalBranch branch;
    double c_star;
    double c;
    double eps;
    double omega;
    int sign;
    RealField U;
    RealField seed;
    double residual_norm;
    double seed_amplitude;
    std::string seed_kind;
    std::vector<double> residual_history;
};

class SolverError : public std::runtime_error {
public:
    enum class Kind { divergence, amplitude_regime, defocusing, no_critical_point };
    SolverError(Kind kind, const std::string& what, std::vector<double> trace = {})
        : std::runtime_error(what), kind_(kind), trace_(std::move(trace)) {}
    Kind kind() const noexcept { return kind_; }
    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    Kind kind_;
    std::vector<double> trace_;
};

CriticalPoint select_critical_point(const PhysicalParams& p, CriticalBranch b);

// rho*(beta) = sqrt(2 a1 / (a2 |omega|)) sech(sqrt(a1 / sigma) beta)
double nls_profile(const PhysicalParams& p, double omega, double beta);
double nls_residual_l2(const PhysicalParams& p, double omega, int sign, int n, double length);

RealField seed_profile(const PhysicalParams& p, double omega, double eps, int sign,
                       double amplitude, const PeriodicGrid& grid);

// Speed correction per squared amplitude of a small periodic wave A cos(omega alpha):
// returns (c(A) - c*) / A^2.
double stokes_speed_coefficient(const PhysicalParams& p, double c_star, double amplitude);

// Seed amplitude that makes the sech envelope match the measured cubic coefficient.
std::optional<double> calibrated_seed_amplitude(const PhysicalParams& p, const CriticalPoint& cp);

WaveProfile solve(const PhysicalParams& p, CriticalBranch branch, double eps, int sign,
                  const SolverConfig& cfg = {}, const WaveProfile* previous = nullptr);

// Solves along cfg.continuation_steps; independent solves run concurrently.
std::vector<WaveProfile> solve_ladder(const PhysicalParams& p, CriticalBranch branch, int sign,
                                      const SolverConfig& cfg = {});

struct Reconstruction {
    ComplexField W;
    ComplexField Q;
};

Reconstruction reconstruct(const WaveProfile& w);
Reconstruction reconstruct(const RealField& U, double c, double gamma);

struct SplitRow {
    double eps;
    double u1_E;
    double u2_H2;
    double ratio;
};

struct SplitReport {
    std::vector<SplitRow> rows;
    double median_ratio;
    bool bounded;
};

SplitReport frequency_split_diagnostic(const std::vector<WaveProfile>& profiles, double delta);

// ||U - seed||_{H^1} / eps
double nls_remainder(const WaveProfile& w);

} // namespace vortsol
