#include "vortsol/babenko.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortsol {

const char* to_string(CriticalBranch b) { return b == CriticalBranch::c1 ? "c1" : "c2"; }

CriticalPoint select_critical_point(const PhysicalParams& p, CriticalBranch b) {
    for (const auto& cp : critical_points(p)) {
        if ((b == CriticalBranch::c1) == (cp.c_star < 0)) return cp;
    }
    throw SolverError(SolverError::Kind::no_critical_point,
                      std::string("no critical velocity on branch ") + to_string(b));
}

double nls_profile(const PhysicalParams& p, double omega, double beta) {
    const auto co = nls_coefficients(p, omega);
    if (!(co.a2 > 0)) throw DefocusingError();
    const double amp = std::sqrt(2.0 * co.a1 / (co.a2 * std::abs(omega)));
    const double kappa = std::sqrt(co.a1 / p.sigma());
    return amp / std::cosh(kappa * beta);
}

double nls_residual_l2(const PhysicalParams& p, double omega, int sign, int n, double length) {
    const auto co = nls_coefficients(p, omega);
    const PeriodicGrid grid(n, length);
    const RealField rho = RealField::from_function(grid, [&](double b) { return sign * nls_profile(p, omega, b); });
    const RealField rbb = d_alpha(d_alpha(rho));
    std::vector<double> r(static_cast<size_t>(n));
    const double w = std::abs(omega);
    for (size_t j = 0; j < r.size(); ++j) {
        const double x = rho[j];
        r[j] = co.a1 * x - p.sigma() * rbb[j] - co.a2 * w * x * x * x;
    }
    return norm_l2(RealField(grid, std::move(r)));
}

RealField seed_profile(const PhysicalParams& p, double omega, double eps, int sign,
                       double amplitude, const PeriodicGrid& grid) {
    if (eps == 0) return RealField(grid, std::vector<double>(static_cast<size_t>(grid.n()), 0.0));
    const double s = sign < 0 ? -1.0 : 1.0;
    return RealField::from_function(grid, [&](double x) {
        return s * amplitude * eps * nls_profile(p, omega, eps * x) * std::cos(omega * x);
    });
}

GridChoice choose_grid(double a1, double sigma, double omega, double eps, int ppw) {
    const double kappa = std::sqrt(a1 / sigma);
    const double wavelength = 2.0 * std::numbers::pi / std::abs(omega);
    const double L = std::max(80.0 / (eps * kappa), 40.0 * wavelength);
    const double need = std::max(ppw * L / wavelength, 5.0 * std::abs(omega) * L / (2.0 * std::numbers::pi));
    int n = 16;
    while (n < need) n *= 2;
    return {n, L};
}

namespace {

// Real cosine-space coordinates: x_m = Re c_m, m < n/2.
using Vec = Eigen::VectorXd;

Spectrum to_spectrum(const Vec& x, int h) {
    Spectrum s(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) s[static_cast<size_t>(m)] = x[m];
    return s;
}

Vec to_vec(const Spectrum& s, int h) {
    Vec x(h);
    for (int m = 0; m < h; ++m) x[m] = s[static_cast<size_t>(m)].real();
    return x;
}

// L2 norm of the even field with coordinates x on a period L.
double even_norm(const Vec& x, double L) {
    double acc = x[0] * x[0];
    for (int m = 1; m < x.size(); ++m) acc += 2.0 * x[m] * x[m];
    return std::sqrt(L * acc);
}

double h1_norm(const Vec& x, const PeriodicGrid& g) {
    double acc = x[0] * x[0];
    for (int m = 1; m < x.size(); ++m) {
        const double k = g.wavenumber(m);
        acc += 2.0 * (1.0 + k * k) * x[m] * x[m];
    }
    return std::sqrt(g.length() * acc);
}

Eigen::MatrixXd assemble_columns(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode, bool parallel) {
    const int h = op.modes();
    Eigen::MatrixXd A(h, h);
    const auto lin = op.linearize(u);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (int j = 0; j < h; ++j) {
        Spectrum e(static_cast<size_t>(h + 1), cplx(0.0));
        e[static_cast<size_t>(j)] = 1.0;
        const Spectrum col = mode == JacobianMode::analytic ? lin.apply(e) : op.frechet_fd(u, e, 1e-7);
        for (int i = 0; i < h; ++i) A(i, j) = col[static_cast<size_t>(i)].real();
    }
    return A;
}

Eigen::MatrixXd assemble_dense(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode) {
    return assemble_columns(op, u, mode, true);
}

Vec gmres(const std::function<Vec(const Vec&)>& apply, const Vec& precond, const Vec& b,
          double rtol, int restart, int max_restarts) {
    const int n = static_cast<int>(b.size());
    Vec x = Vec::Zero(n);
    const double bnorm = b.norm();
    if (bnorm == 0) return x;
    for (int cycle = 0; cycle < max_restarts; ++cycle) {
        Vec r = b - apply(precond.cwiseProduct(x));
        double beta = r.norm();
        if (beta <= rtol * bnorm) break;
        const int m = std::min(restart, n);
        Eigen::MatrixXd Vb(n, m + 1);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(m + 1, m);
        Vec cs = Vec::Zero(m), sn = Vec::Zero(m), e1 = Vec::Zero(m + 1);
        e1[0] = beta;
        Vb.col(0) = r / beta;
        int k = 0;
        for (; k < m; ++k) {
            Vec w = apply(precond.cwiseProduct(Vb.col(k)));
            for (int i = 0; i <= k; ++i) {
                H(i, k) = w.dot(Vb.col(i));
                w -= H(i, k) * Vb.col(i);
            }
            for (int i = 0; i <= k; ++i) {  // second pass keeps the basis orthogonal
                const double d = w.dot(Vb.col(i));
                H(i, k) += d;
                w -= d * Vb.col(i);
            }
            H(k + 1, k) = w.norm();
            if (H(k + 1, k) > 0) Vb.col(k + 1) = w / H(k + 1, k);
            for (int i = 0; i < k; ++i) {
                const double t = cs[i] * H(i, k) + sn[i] * H(i + 1, k);
                H(i + 1, k) = -sn[i] * H(i, k) + cs[i] * H(i + 1, k);
                H(i, k) = t;
            }
            const double den = std::hypot(H(k, k), H(k + 1, k));
            cs[k] = H(k, k) / den;
            sn[k] = H(k + 1, k) / den;
            H(k, k) = den;
            H(k + 1, k) = 0;
            e1[k + 1] = -sn[k] * e1[k];
            e1[k] = cs[k] * e1[k];
            if (std::abs(e1[k + 1]) <= rtol * bnorm) {
                ++k;
                break;
            }
        }
        Vec y = H.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(e1.head(k));
        x += Vb.leftCols(k) * y;
    }
    return precond.cwiseProduct(x);
}

struct NewtonOutcome {
    bool converged = false;
    bool trivial = false;
    Vec x;
    std::vector<double> history;
    double residual = INFINITY;
};

NewtonOutcome newton(const BabenkoOperator& op, Vec x, const SolverConfig& cfg, double seed_norm) {
    const int h = op.modes();
    const double L = op.grid().length();
    const bool dense = cfg.linear_solver == LinearSolver::dense ||
                       (cfg.linear_solver == LinearSolver::automatic && h <= cfg.dense_max_modes);
    Vec precond(h);
    for (int m = 0; m < h; ++m) precond[m] = 1.0 / op.symbol(m);

    NewtonOutcome out;
    auto eval = [&](const Vec& v) { return to_vec(op.residual(to_spectrum(v, h)), h); };
    Vec r;
    try {
        r = eval(x);
    } catch (const AmplitudeRegimeError&) {
        out.x = x;
        return out;
    }
    double rn = even_norm(r, L);
    out.history.push_back(rn);
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (rn <= cfg.newton_tol) {
            out.converged = true;
            break;
        }
        const Spectrum u = to_spectrum(x, h);
        Vec dx;
        if (dense) {
            const Eigen::MatrixXd A = assemble_dense(op, u, cfg.jacobian_mode);
            dx = A.partialPivLu().solve(-r);
        } else {
            std::function<Vec(const Vec&)> apply;
            BabenkoOperator::Linearization lin;
            if (cfg.jacobian_mode == JacobianMode::analytic) {
                lin = op.linearize(u);
                apply = [&](const Vec& v) { return to_vec(lin.apply(to_spectrum(v, h)), h); };
            } else {
                apply = [&](const Vec& v) {
                    const double nv = v.norm();
                    if (nv == 0) return Vec(Vec::Zero(h));
                    const double eps = 1e-7 * std::max(1.0, x.norm()) / nv;
                    return Vec(to_vec(op.frechet_fd(u, to_spectrum(v, h), eps), h));
                };
            }
            dx = gmres(apply, precond, -r, 1e-3 * std::min(1.0, cfg.newton_tol / rn) + 1e-14, 300, 20);
        }
        double lambda = 1.0;
        Vec xn;
        Vec rnew;
        double rnn = INFINITY;
        for (int ls = 0; ls < 8; ++ls) {
            xn = x + lambda * dx;
            try {
                rnew = eval(xn);
                rnn = even_norm(rnew, L);
            } catch (const AmplitudeRegimeError&) {
                rnn = INFINITY;
            }
            if (rnn < rn) break;
            lambda *= 0.5;
        }
        if (!std::isfinite(rnn)) break;
        x = xn;
        r = rnew;
        rn = rnn;
        out.history.push_back(rn);
        if (even_norm(x, L) < 1e-3 * seed_norm) {
            out.trivial = true;
            break;
        }
    }
    if (rn <= cfg.newton_tol) out.converged = true;
    out.x = x;
    out.residual = rn;
    return out;
}

} // namespace

Eigen::MatrixXd assemble_frechet_matrix(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode) {
    return assemble_columns(op, u, mode, true);
}

Eigen::MatrixXd assemble_frechet_matrix_serial(const BabenkoOperator& op, const Spectrum& u, JacobianMode mode) {
    return assemble_columns(op, u, mode, false);
}

double stokes_speed_coefficient(const PhysicalParams& p, double c_star, double amplitude) {
    const double omega = critical_frequency(p, c_star);
    const PeriodicGrid grid(32, 2.0 * std::numbers::pi / std::abs(omega));
    const int h = grid.n() / 2;
    // unknowns: x_0..x_{h-1}, c; the first harmonic is pinned to amplitude/2
    Vec z = Vec::Zero(h + 1);
    z[1] = 0.5 * amplitude;
    z[h] = c_star;
    for (int it = 0; it < 50; ++it) {
        const BabenkoOperator op(p, z[h], grid);
        const Spectrum u = to_spectrum(z.head(h), h);
        Vec F(h + 1);
        F.head(h) = to_vec(op.residual(u), h);
        F[h] = z[1] - 0.5 * amplitude;
        if (F.norm() < 1e-14 * std::max(1.0, std::abs(amplitude))) break;
        Eigen::MatrixXd J = Eigen::MatrixXd::Zero(h + 1, h + 1);
        J.topLeftCorner(h, h) = assemble_dense(op, u, JacobianMode::analytic);
        J.block(0, h, h, 1) = to_vec(op.residual_dc(u), h);
        J(h, 1) = 1.0;
        const Vec dz = J.fullPivLu().solve(-F);
        z += dz;
        if (dz.norm() < 1e-15 * z.norm()) break;
    }
    return (z[h] - c_star) / (amplitude * amplitude);
}

std::optional<double> calibrated_seed_amplitude(const PhysicalParams& p, const CriticalPoint& cp) {
    const double w = std::abs(cp.omega);
    const double measured = stokes_speed_coefficient(p, cp.c_star, 1e-2 / w);
    // the same coefficient predicted from the envelope equation, in the direction of the gap
    const double predicted = -cp.a2 * w / (4.0 * cp.a1) * (cp.c_star > 0 ? 1.0 : -1.0);
    const double ratio = predicted / measured;
    if (!(ratio > 0) || !std::isfinite(ratio)) return std::nullopt;
    return 2.0 * std::sqrt(ratio);
}

WaveProfile solve(const PhysicalParams& p, CriticalBranch branch, double eps, int sign,
                  const SolverConfig& cfg, const WaveProfile* previous) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    if (!(cfg.newton_tol > 0)) throw std::invalid_argument("newton_tol must be positive");
    const CriticalPoint cp = select_critical_point(p, branch);
    if (!cp.focusing) throw SolverError(SolverError::Kind::defocusing, "defocusing: no soliton");
    const double c = branch == CriticalBranch::c1 ? cp.c_star + eps * eps : cp.c_star - eps * eps;
    const double gc = p.g() + c * p.gamma();
    if (!(gc > 0) || !(c * c * c * c < 4.0 * p.sigma() * gc))
        throw std::invalid_argument("eps too large: speed leaves the coercive range");

    const GridChoice gc_ = choose_grid(cp.a1, p.sigma(), cp.omega, eps, cfg.points_per_wavelength);
    const PeriodicGrid grid(gc_.n, gc_.length);
    const BabenkoOperator op(p, c, grid);
    const int h = grid.n() / 2;
    const int s = sign < 0 ? -1 : 1;

    struct Attempt {
        double amplitude;
        std::string kind;
        std::optional<RealField> seed;
    };
    std::vector<Attempt> attempts;
    for (double A : cfg.seed_amplitudes) attempts.push_back({A, "direct", std::nullopt});
    if (cfg.calibrate_amplitude) {
        if (auto A = calibrated_seed_amplitude(p, cp)) attempts.push_back({*A, "calibrated", std::nullopt});
    }
    if (previous != nullptr) {
        // stretch the previous envelope to the new eps and keep the carrier
        const double r = eps / previous->eps;
        const RealField& Up = previous->U;
        const auto& pg = Up.grid();
        const RealField band = freq_window(Up, Window::chi, cp.omega, 0.5 * std::abs(cp.omega));
        const ComplexField Z = proj_neg(band);
        std::vector<double> env(static_cast<size_t>(pg.n()));
        for (size_t j = 0; j < env.size(); ++j) env[j] = 2.0 * std::abs(Z.values()[j]);
        std::vector<double> v(static_cast<size_t>(grid.n()));
        for (int j = 0; j < grid.n(); ++j) {
            const double x = grid.node(j);
            const double pos = (r * x + 0.5 * pg.length()) / pg.spacing();
            const int i0 = std::clamp(static_cast<int>(std::floor(pos)), 0, pg.n() - 2);
            const double t = std::clamp(pos - i0, 0.0, 1.0);
            const double e = (1 - t) * env[static_cast<size_t>(i0)] + t * env[static_cast<size_t>(i0 + 1)];
            v[static_cast<size_t>(j)] = s * r * e * std::cos(cp.omega * x);
        }
        attempts.push_back({previous->seed_amplitude, "continuation", RealField(grid, std::move(v))});
    }

    std::vector<double> trace;
    bool saw_regime = false;
    for (const auto& at : attempts) {
        const RealField seed = seed_profile(p, cp.omega, eps, s, at.amplitude, grid);
        const RealField& start = at.seed ? *at.seed : seed;
        const Vec x0 = to_vec(start.spectrum(), h);
        const double seed_norm = even_norm(x0, grid.length());
        NewtonOutcome out = newton(op, x0, cfg, seed_norm);
        trace.insert(trace.end(), out.history.begin(), out.history.end());
        if (out.history.empty() || !std::isfinite(out.residual)) saw_regime = true;
        if (!out.converged || out.trivial) continue;
        const Vec xs = to_vec(seed.spectrum(), h);
        const double dev = h1_norm(out.x - xs, grid);
        if (dev > cfg.max_seed_deviation * h1_norm(xs, grid)) continue;
        WaveProfile w{p,
                      branch,
                      cp.c_star,
                      c,
                      eps,
                      cp.omega,
                      s,
                      RealField::from_spectrum(grid, to_spectrum(out.x, h)),
                      seed,
                      out.residual,
                      at.amplitude,
                      at.kind,
                      out.history};
        return w;
    }
    if (saw_regime) throw SolverError(SolverError::Kind::amplitude_regime, "profile outside small-amplitude regime", trace);
    throw SolverError(SolverError::Kind::divergence, "Newton iteration failed to reach a nontrivial solution", trace);
}

std::vector<WaveProfile> solve_ladder(const PhysicalParams& p, CriticalBranch branch, int sign,
                                      const SolverConfig& cfg) {
    const auto& steps = cfg.continuation_steps;
    const int count = static_cast<int>(steps.size());
    std::vector<std::optional<WaveProfile>> done(steps.size());
    std::vector<std::string> errors(steps.size());
    std::vector<SolverError::Kind> kinds(steps.size(), SolverError::Kind::divergence);
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < count; ++i) {
        const size_t k = static_cast<size_t>(i);
        try {
            done[k] = solve(p, branch, steps[k], sign, cfg);
        } catch (const SolverError& e) {
            errors[k] = e.what();
            kinds[k] = e.kind();
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    std::vector<WaveProfile> out;
    for (size_t k = 0; k < steps.size(); ++k) {
        if (!done[k] && !out.empty() && kinds[k] == SolverError::Kind::divergence) {
            try {
                done[k] = solve(p, branch, steps[k], sign, cfg, &out.back());
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
        if (!done[k]) {
            throw SolverError(kinds[k], "eps = " + std::to_string(steps[k]) + ": " + errors[k]);
        }
        out.push_back(*done[k]);
    }
    return out;
}

Reconstruction reconstruct(const RealField& U, double c, double gamma) {
    const auto& grid = U.grid();
    std::vector<double> imq(U.values().size());
    for (size_t j = 0; j < imq.size(); ++j) imq[j] = -0.5 * gamma * U[j] * U[j] - c * U[j];
    auto lift = [](const ComplexField& f) {
        std::vector<cplx> v = f.values();
        for (auto& z : v) z *= cplx(0.0, 2.0);
        return ComplexField(f.grid(), std::move(v));
    };
    return {lift(proj_neg(U)), lift(proj_neg(RealField(grid, std::move(imq))))};
}

Reconstruction reconstruct(const WaveProfile& w) {
    return reconstruct(w.U, w.c, w.params.gamma());
}

SplitReport frequency_split_diagnostic(const std::vector<WaveProfile>& profiles, double delta) {
    if (profiles.size() < 3) throw std::invalid_argument("insufficient profiles");
    SplitReport rep{};
    std::vector<double> ratios;
    for (const auto& w : profiles) {
        const RealField U1 = freq_window(w.U, Window::chi, w.omega, delta);
        std::vector<double> u2(w.U.values().size());
        for (size_t j = 0; j < u2.size(); ++j) u2[j] = w.U[j] - U1[j];
        SplitRow row{};
        row.eps = w.eps;
        row.u1_E = norm_E_omega(U1, w.omega, w.eps);
        row.u2_H2 = norm_h(RealField(w.U.grid(), std::move(u2)), 2.0);
        row.ratio = row.u2_H2 / (w.eps * row.u1_E * row.u1_E);
        rep.rows.push_back(row);
        ratios.push_back(row.ratio);
    }
    std::sort(ratios.begin(), ratios.end());
    const size_t n = ratios.size();
    rep.median_ratio = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
    rep.bounded = true;
    for (const auto& r : rep.rows) {
        if (!(r.ratio <= 10.0 * rep.median_ratio && r.ratio >= 0.1 * rep.median_ratio)) rep.bounded = false;
    }
    return rep;
}

double nls_remainder(const WaveProfile& w) {
    std::vector<double> d(w.U.values().size());
    for (size_t j = 0; j < d.size(); ++j) d[j] = w.U[j] - w.seed[j];
    return norm_h(RealField(w.U.grid(), std::move(d)), 1.0) / w.eps;
}

} // namespace vortsol
