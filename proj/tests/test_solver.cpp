#include "vortsol/babenko.hpp"
#include "vortsol/diagnostics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <memory>

using namespace vortsol;

namespace {

const PhysicalParams kCapillary(0.0, 1.0, 1.0);
const PhysicalParams kUnit(1.0, 1.0, 1.0);

double sup(const RealField& f) {
    double m = 0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

double odd_part(const RealField& f) {
    const int n = f.grid().n();
    double m = 0;
    for (int j = 1; j < n; ++j) m = std::max(m, std::abs(f[static_cast<size_t>(j)] - f[static_cast<size_t>(n - j)]));
    return m;
}

class CapillaryLadder : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        SolverConfig cfg;
        cfg.continuation_steps = {0.08, 0.04, 0.02};
        ladder_ = std::make_unique<std::vector<WaveProfile>>(solve_ladder(kCapillary, CriticalBranch::c2, 1, cfg));
    }
    static void TearDownTestSuite() { ladder_.reset(); }
    static std::unique_ptr<std::vector<WaveProfile>> ladder_;
};

std::unique_ptr<std::vector<WaveProfile>> CapillaryLadder::ladder_;

} // namespace

TEST_F(CapillaryLadder, ConvergesWithSmallResidual) {
    ASSERT_EQ(ladder_->size(), 3u);
    for (const auto& w : *ladder_) {
        EXPECT_LT(w.residual_norm, 1e-10) << w.eps;
        EXPECT_NEAR(w.c, w.c_star - w.eps * w.eps, 1e-15);
        EXPECT_NEAR(w.c_star, std::cbrt(4.0), 1e-12);
        EXPECT_GT(w.U[static_cast<size_t>(w.U.grid().n() / 2)], 0.0);  // U(0) carries the sign
        EXPECT_FALSE(w.residual_history.empty());
        // independent check of the returned residual
        EXPECT_LT(norm_l2(babenko_residual(w.U, w.c, w.params)), 1e-9) << w.eps;
    }
}

TEST_F(CapillaryLadder, ProfilesAreEven) {
    for (const auto& w : *ladder_) EXPECT_LT(odd_part(w.U), 1e-12) << w.eps;
}

TEST_F(CapillaryLadder, RemainderDecreasesAndAmplitudeIsOrderEps) {
    std::vector<double> e, a;
    for (const auto& w : *ladder_) {
        e.push_back(nls_remainder(w));
        a.push_back(sup(w.U) / w.eps);
    }
    for (size_t i = 0; i + 1 < e.size(); ++i) EXPECT_GT(e[i], e[i + 1]);
    const auto [lo, hi] = std::minmax_element(a.begin(), a.end());
    EXPECT_LE(*hi, 2.0 * *lo);
}

TEST_F(CapillaryLadder, FrechetMatchesFiniteDifferencesAtSolution) {
    std::mt19937_64 rng(11);
    const auto& w = ladder_->front();
    double worst = 0;
    for (int t = 0; t < 20; ++t) {
        const RealField V = random_smooth_field(w.U.grid(), rng, 1.0, 400, true);
        worst = std::max(worst, frechet_relative_error(w.params, w.c, w.U, V));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST_F(CapillaryLadder, FrequencySplitRatioIsBounded) {
    const auto rep = frequency_split_diagnostic(*ladder_, 0.5 * std::abs(ladder_->front().omega));
    ASSERT_EQ(rep.rows.size(), 3u);
    EXPECT_TRUE(rep.bounded);
    for (const auto& r : rep.rows) {
        EXPECT_GT(r.u1_E, 0.0);
        EXPECT_LE(r.ratio, 10 * rep.median_ratio);
    }
    EXPECT_THROW(frequency_split_diagnostic({ladder_->front()}, 0.1), std::invalid_argument);
}

TEST_F(CapillaryLadder, ReconstructionOfSolution) {
    const auto& w = ladder_->back();
    const auto rec = reconstruct(w);
    const auto imQ = rec.Q.imag();
    for (size_t j = 0; j < imQ.values().size(); ++j)
        EXPECT_NEAR(imQ[j] + 0.5 * w.U[j] * w.U[j] + w.c * w.U[j], 0.0, 1e-13);
}

TEST(Solver, GridRefinementChangesNormLittle) {
    SolverConfig coarse, fine;
    fine.points_per_wavelength = 24;
    const auto a = solve(kCapillary, CriticalBranch::c2, 0.04, 1, coarse);
    const auto b = solve(kCapillary, CriticalBranch::c2, 0.04, 1, fine);
    ASSERT_EQ(b.U.grid().n(), 2 * a.U.grid().n());
    const double na = norm_h(a.U, 1.0), nb = norm_h(b.U, 1.0);
    EXPECT_LT(std::abs(na - nb), 1e-8 * nb);
}

TEST(Solver, NegativeSignOnUnitParameters) {
    const auto plus = solve(kUnit, CriticalBranch::c2, 0.04, 1);
    const auto minus = solve(kUnit, CriticalBranch::c2, 0.04, -1);
    EXPECT_LT(plus.residual_norm, 1e-10);
    EXPECT_LT(minus.residual_norm, 1e-10);
    const size_t mid = static_cast<size_t>(plus.U.grid().n() / 2);
    EXPECT_GT(plus.U[mid], 0.0);
    EXPECT_LT(minus.U[mid], 0.0);
    EXPECT_EQ(minus.sign, -1);
    // the two profiles are distinct solutions, close to negatives of each other at leading order
    double diff = 0, sum = 0;
    for (size_t j = 0; j < plus.U.values().size(); ++j) {
        diff = std::max(diff, std::abs(plus.U[j] + minus.U[j]));
        sum = std::max(sum, std::abs(plus.U[j]));
    }
    EXPECT_LT(diff, 0.5 * sum);
}

TEST(Solver, DefocusingBranchIsRefused) {
    try {
        solve(kUnit, CriticalBranch::c1, 0.04, 1);
        FAIL() << "expected refusal";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), SolverError::Kind::defocusing);
    }
}

TEST(Solver, MissingBranchAndBadInput) {
    // pure capillary case has a single critical velocity, on c2
    try {
        solve(kCapillary, CriticalBranch::c1, 0.04, 1);
        FAIL() << "expected error";
    } catch (const SolverError& e) {
        EXPECT_EQ(e.kind(), SolverError::Kind::no_critical_point);
    }
    EXPECT_THROW(solve(kCapillary, CriticalBranch::c2, 0.0, 1), std::invalid_argument);
    SolverConfig bad;
    bad.newton_tol = 0;
    EXPECT_THROW(solve(kCapillary, CriticalBranch::c2, 0.04, 1, bad), std::invalid_argument);
}

TEST(Solver, Deterministic) {
    const auto a = solve(kCapillary, CriticalBranch::c2, 0.04, 1);
    const auto b = solve(kCapillary, CriticalBranch::c2, 0.04, 1);
    EXPECT_EQ(a.U.values(), b.U.values());
    EXPECT_EQ(a.residual_norm, b.residual_norm);
}

TEST(Solver, QuadraticResponseOfCarrierSitsAtZeroAndTwiceOmega) {
    const auto cp = select_critical_point(kCapillary, CriticalBranch::c2);
    const double w = std::abs(cp.omega);
    const PeriodicGrid g(256, 20 * 2 * M_PI / w);
    const double a = 1e-3;
    const RealField U = RealField::from_function(g, [&](double x) { return a * std::cos(w * x); });
    const RealField R = babenko_residual(U, cp.c_star, kCapillary);
    const RealField lin = babenko_frechet(RealField(g, std::vector<double>(256, 0.0)), cp.c_star, kCapillary, U);
    std::vector<double> q(256);
    for (size_t j = 0; j < q.size(); ++j) q[j] = R[j] - lin[j];
    const RealField Q(g, q);
    const double total = norm_l2(Q);
    ASSERT_GT(total, 0.0);
    const RealField at0 = freq_window(Q, Window::chi0, cp.omega, 0.25 * w);
    const RealField at2 = freq_window(Q, Window::chi, 2 * cp.omega, 0.25 * w);
    const double inside = std::hypot(norm_l2(at0), norm_l2(at2));
    // what remains is the cubic response at w and 3w, of relative size O(a)
    EXPECT_GT(inside / total, 1 - 10 * a);
}
