#include "support/oracles.hpp"
#include "vortsol/diagnostics.hpp"
#include "vortsol/spectral.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace vortsol;
using std::numbers::pi;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs(const std::vector<double>& a) {
    double m = 0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

double max_abs(const std::vector<cplx>& a) {
    double m = 0;
    for (auto x : a) m = std::max(m, std::abs(x));
    return m;
}

RealField random_field(const PeriodicGrid& g, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    std::vector<double> v(static_cast<size_t>(g.n()));
    for (auto& x : v) x = d(rng);
    return RealField(g, v);
}

RealField mode(const PeriodicGrid& g, int m, bool sine = false) {
    const double k = 2 * pi * m / g.length();
    return RealField::from_function(g, [=](double a) { return sine ? std::sin(k * a) : std::cos(k * a); });
}

RealField operator_minus(const RealField& a, const RealField& b) {
    std::vector<double> v(a.values());
    for (size_t i = 0; i < v.size(); ++i) v[i] -= b[i];
    return RealField(a.grid(), v);
}

} // namespace

TEST(PeriodicGrid, Geometry) {
    const PeriodicGrid g(64, 8.0);
    EXPECT_DOUBLE_EQ(g.spacing(), 0.125);
    EXPECT_DOUBLE_EQ(g.node(0), -4.0);
    EXPECT_DOUBLE_EQ(g.node(32), 0.0);
    EXPECT_DOUBLE_EQ(g.nyquist(), pi * 64 / 8.0);
    EXPECT_DOUBLE_EQ(g.wavenumber(32), g.nyquist());
    EXPECT_DOUBLE_EQ(g.wavenumber(63), -2 * pi / 8.0);
    EXPECT_THROW(PeriodicGrid(8, 1.0), std::invalid_argument);
    EXPECT_THROW(PeriodicGrid(48, 1.0), std::invalid_argument);
    EXPECT_THROW(PeriodicGrid(64, 0.0), std::invalid_argument);
}

TEST(RealField, RejectsNonFiniteSamples) {
    const PeriodicGrid g(16, 1.0);
    std::vector<double> v(16, 0.0);
    v[3] = NAN;
    EXPECT_THROW(RealField(g, v), std::invalid_argument);
    EXPECT_THROW(RealField(g, std::vector<double>(15, 0.0)), std::invalid_argument);
}

TEST(Transforms, RoundTripAllSizes) {
    std::mt19937_64 rng(1);
    for (int n = 16; n <= 8192; n *= 2) {
        const PeriodicGrid g(n, 3.0);
        const RealField f = random_field(g, rng);
        const auto back = inverse(g, f.spectrum());
        EXPECT_LT(max_abs_diff(back, f.values()), 1e-13 * max_abs(f.values())) << n;
    }
}

TEST(Transforms, CacheMatchesDirectDft) {
    std::mt19937_64 rng(2);
    const PeriodicGrid g(64, 5.0);
    const RealField f = random_field(g, rng);
    const auto exact = oracle::direct_dft(f.values());
    double err = 0, scale = 0;
    for (int m = 0; m <= 32; ++m) {
        const auto e = std::complex<double>(exact[static_cast<size_t>(m)]);
        err = std::max(err, std::abs(f.spectrum()[static_cast<size_t>(m)] - e));
        scale = std::max(scale, std::abs(e));
    }
    EXPECT_LT(err, 1e-13 * scale);
}

TEST(Hilbert, CosineToSine) {
    const PeriodicGrid g(128, 10.0);
    for (int m : {1, 5, 30}) {
        const auto h = hilbert(mode(g, m));
        EXPECT_LT(max_abs_diff(h.values(), mode(g, m, true).values()), 1e-12) << m;
    }
}

TEST(Hilbert, ConstantToZero) {
    const PeriodicGrid g(32, 2.0);
    const RealField c(g, std::vector<double>(32, 3.5));
    EXPECT_LT(max_abs(hilbert(c).values()), 1e-15);
    EXPECT_LT(max_abs(abs_D(c).values()), 1e-15);
}

TEST(Hilbert, SquareIdentity) {
    // u^2 = (Hu)^2 - 2 H(u Hu)
    const PeriodicGrid g(64, 2 * pi);
    for (int m : {1, 3, 7}) {
        const RealField u = mode(g, m);
        const RealField Hu = hilbert(u);
        const RealField rhs1 = dealiased_product({Hu, Hu});
        const RealField rhs2 = hilbert(dealiased_product({u, Hu}));
        const RealField lhs = dealiased_product({u, u});
        double err = 0;
        for (int j = 0; j < 64; ++j) err = std::max(err, std::abs(lhs[j] - rhs1[j] + 2 * rhs2[j]));
        EXPECT_LT(err, 1e-10) << m;
    }
}

TEST(Hilbert, TwiceIsMinusIdentityPlusMean) {
    std::mt19937_64 rng(3);
    const PeriodicGrid g(256, 7.0);
    RealField f = random_field(g, rng);
    f = apply_multiplier(f, [](double) { return cplx(1.0); });  // drop Nyquist
    const double mean = f.spectrum()[0].real();
    const auto hh = hilbert(hilbert(f));
    for (int j = 0; j < 256; ++j) EXPECT_NEAR(hh[j], -f[j] + mean, 1e-12);
}

TEST(AbsD, EigenfunctionsAndComposition) {
    const PeriodicGrid g(128, 4 * pi);
    const RealField c3 = mode(g, 3);
    const double k = 2 * pi * 3 / g.length();
    const auto d = abs_D(c3);
    for (int j = 0; j < 128; ++j) EXPECT_NEAR(d[j], k * c3[j], 1e-12);

    std::mt19937_64 rng(4);
    const RealField f = random_smooth_field(g, rng, 1.0, 40, false);
    const auto a = abs_D(f);
    const auto b = d_alpha(hilbert(f));
    const auto c = hilbert(d_alpha(f));
    const double s = max_abs(a.values());
    EXPECT_LT(max_abs_diff(a.values(), b.values()), 1e-11 * s);
    EXPECT_LT(max_abs_diff(a.values(), c.values()), 1e-11 * s);

    const auto dd = abs_D(abs_D(f));
    const auto lap = d_alpha(d_alpha(f));
    double err = 0;
    for (int j = 0; j < 128; ++j) err = std::max(err, std::abs(dd[j] + lap[j]));
    EXPECT_LT(err, 1e-10 * max_abs(dd.values()));
}

TEST(AbsD, SelfAdjoint) {
    std::mt19937_64 rng(5);
    const PeriodicGrid g(512, 30.0);
    for (int t = 0; t < 5; ++t) {
        const RealField f = random_smooth_field(g, rng, 1.0, 100, false);
        const RealField h = random_smooth_field(g, rng, 1.0, 100, false);
        const double a = inner(abs_D(f), h), b = inner(f, abs_D(h));
        EXPECT_LT(std::abs(a - b), 1e-11 * (std::abs(a) + 1));
    }
}

TEST(Projection, FrequencySupport) {
    const PeriodicGrid g(64, 2 * pi);
    const int k = 4;
    std::vector<cplx> neg(64), pos(64);
    for (int j = 0; j < 64; ++j) {
        neg[static_cast<size_t>(j)] = std::exp(cplx(0, -k * g.node(j)));
        pos[static_cast<size_t>(j)] = std::exp(cplx(0, k * g.node(j)));
    }
    const auto pn = proj_neg(ComplexField(g, neg));
    const auto pp = proj_neg(ComplexField(g, pos));
    for (int j = 0; j < 64; ++j) {
        EXPECT_LT(std::abs(pn.values()[static_cast<size_t>(j)] - neg[static_cast<size_t>(j)]), 1e-13);
        EXPECT_LT(std::abs(pp.values()[static_cast<size_t>(j)]), 1e-13);
    }

    const auto pc = proj_neg(mode(g, k));
    for (int j = 0; j < 64; ++j)
        EXPECT_LT(std::abs(pc.values()[static_cast<size_t>(j)] - 0.5 * neg[static_cast<size_t>(j)]), 1e-13);

    // W = 2i P(Im W) for W supported on negative frequencies
    const auto im = ComplexField(g, neg).imag();
    const auto rec = proj_neg(im);
    for (int j = 0; j < 64; ++j)
        EXPECT_LT(std::abs(cplx(0, 2) * rec.values()[static_cast<size_t>(j)] - neg[static_cast<size_t>(j)]), 1e-13);
}

TEST(Projection, IdempotentAndSplitsRealFields) {
    std::mt19937_64 rng(6);
    const PeriodicGrid g(128, 9.0);
    const RealField raw = random_field(g, rng);
    // the halving of the mean and Nyquist modes is not idempotent, so those modes are removed
    const RealField f = apply_multiplier(raw, [](double k) { return cplx(k == 0 ? 0.0 : 1.0); });
    EXPECT_NEAR(proj_neg(raw).spectrum()[0].real(), 0.5 * raw.spectrum()[0].real(), 1e-14);
    const auto p1 = proj_neg(f);
    const auto p2 = proj_neg(p1);
    std::vector<cplx> d(128);
    for (size_t j = 0; j < 128; ++j) d[j] = p1.values()[j] - p2.values()[j];
    EXPECT_LT(max_abs(d), 1e-12 * max_abs(p1.values()));
    const auto pr = proj_neg(raw);
    for (size_t j = 0; j < 128; ++j) EXPECT_NEAR(2 * pr.values()[j].real(), raw[j], 1e-12 * max_abs(raw.values()));
}

TEST(Windows, InAndOutOfBand) {
    const PeriodicGrid g(256, 20 * pi);
    const double omega = -1.0;
    const RealField in = mode(g, 10);   // k = 1
    const RealField out = mode(g, 30);  // k = 3
    EXPECT_LT(max_abs_diff(freq_window(in, Window::chi, omega, 0.25).values(), in.values()), 1e-13);
    EXPECT_LT(max_abs(freq_window(out, Window::chi, omega, 0.25).values()), 1e-13);
    EXPECT_THROW(freq_window(in, Window::chi, omega, 1.5), std::invalid_argument);
    EXPECT_THROW(freq_window(in, Window::chi_plus, omega, 0.25), std::invalid_argument);
}

TEST(Windows, PartitionAndAlgebra) {
    std::mt19937_64 rng(7);
    const PeriodicGrid g(256, 40.0);
    const RealField u = random_field(g, rng);
    const auto a = freq_window(u, Window::chi, -2.0, 0.7);
    const auto b = freq_window(u, Window::chi, -2.0, 0.7, true);
    double err = 0;
    for (int j = 0; j < 256; ++j) err = std::max(err, std::abs(a[j] + b[j] - u[j]));
    EXPECT_LT(err, 1e-13 * max_abs(u.values()) * 10);

    const ComplexField cu(u);
    const auto p = freq_window(cu, Window::chi_plus, -2.0, 0.7);
    const auto m = freq_window(cu, Window::chi_minus, -2.0, 0.7);
    const auto c = ComplexField(a);
    std::vector<cplx> diff(256);
    for (size_t j = 0; j < 256; ++j) diff[j] = p.values()[j] + m.values()[j] - c.values()[j];
    EXPECT_LT(max_abs(diff), 1e-12);

    for (int i = 0; i < 1000; ++i) {
        const double k = -10 + 0.02 * i;
        EXPECT_FALSE(window_contains(Window::chi_plus, k, -2.0, 0.7) &&
                     window_contains(Window::chi_minus, k, -2.0, 0.7));
    }
}

TEST(DealiasedProduct, CosineSquare) {
    const PeriodicGrid g(64, 2 * pi);
    const auto sq = dealiased_product({mode(g, 12), mode(g, 12)});
    const auto c24 = mode(g, 24);
    for (int j = 0; j < 64; ++j) EXPECT_NEAR(sq[j], 0.5 * (1 + c24[j]), 1e-13);
    const RealField zero(g, std::vector<double>(64, 0.0));
    EXPECT_LT(max_abs(dealiased_product({mode(g, 3), zero}).values()), 1e-15);
    EXPECT_THROW(dealiased_product({}), std::invalid_argument);
    EXPECT_THROW(dealiased_product(std::vector<RealField>(6, zero)), std::invalid_argument);
}

TEST(DealiasedProduct, MatchesDirectConvolution) {
    std::mt19937_64 rng(8);
    const PeriodicGrid g(32, 6.0);
    for (size_t p = 2; p <= 5; ++p) {
        std::vector<RealField> fs;
        std::vector<std::vector<double>> raw;
        for (size_t i = 0; i < p; ++i) {
            fs.push_back(apply_multiplier(random_field(g, rng), [](double) { return cplx(1.0); }));
            raw.push_back(fs.back().values());
        }
        const auto got = dealiased_product(fs).values();
        const auto want = oracle::direct_product(raw);
        EXPECT_LT(max_abs_diff(got, want), 1e-12 * std::max(1.0, max_abs(want))) << p;
    }
}

TEST(Norms, ParsevalExamples) {
    const PeriodicGrid g(128, 20 * pi);
    const RealField c = mode(g, 10);
    EXPECT_NEAR(norm_l2(c) * norm_l2(c), g.length() / 2, 1e-10);
    std::mt19937_64 rng(9);
    const RealField f = random_field(g, rng);
    EXPECT_NEAR(norm_h(f, 0.0), norm_l2(f), 1e-12 * norm_l2(f));
    EXPECT_NEAR(norm_l2(f) * norm_l2(f), inner(f, f), 1e-10 * inner(f, f));
    // k = |omega| exactly: the weight is 1 on the support
    EXPECT_NEAR(norm_E_omega(c, -1.0, 0.1), norm_l2(c), 1e-12);
}

TEST(Norms, ScaledNormOfEnvelopeScalesAsSqrtEps) {
    const double omega = -1.0;
    std::vector<double> norms;
    for (double eps : {0.08, 0.04, 0.02}) {
        const double L = 4000.0;
        const PeriodicGrid g(8192, L);
        const RealField f = RealField::from_function(g, [=](double a) {
            return eps / std::cosh(eps * a) * std::cos(omega * a);
        });
        norms.push_back(norm_E_omega(f, omega, eps));
    }
    for (size_t i = 0; i + 1 < norms.size(); ++i) {
        const double r = norms[i] / norms[i + 1];
        EXPECT_NEAR(r, std::sqrt(2.0), 0.1 * std::sqrt(2.0)) << i;
    }
}

TEST(Spectral, ConcurrentSpectrumAccessIsConsistent) {
    std::mt19937_64 rng(10);
    const PeriodicGrid g(1024, 10.0);
    const RealField f = random_field(g, rng);
    std::vector<double> firsts(8);
#pragma omp parallel for
    for (int i = 0; i < 8; ++i) firsts[static_cast<size_t>(i)] = f.spectrum()[5].real();
    for (double x : firsts) EXPECT_EQ(x, firsts[0]);
}
