#include "vortsol/babenko.hpp"

#include "vortsol/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace vortsol {

namespace {
enum PadKind { kPlain = 0, kAbsD = 1, kDeriv = 2 };
}

BabenkoOperator::BabenkoOperator(const PhysicalParams& p, double c, const PeriodicGrid& grid)
    : p_(p), c_(c), grid_(grid) {}

double BabenkoOperator::symbol(int m) const {
    return symbol_L(p_, c_, grid_.wavenumber(m));
}

std::vector<double> BabenkoOperator::pad(const Spectrum& u, int kind) const {
    const int n = grid_.n(), h = n / 2, M = 2 * n;
    if (static_cast<int>(u.size()) != h + 1) throw std::invalid_argument("spectrum size does not match grid");
    std::vector<cplx> buf(static_cast<size_t>(M / 2 + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) {
        const double k = grid_.wavenumber(m);
        cplx v = u[static_cast<size_t>(m)];
        if (kind == kAbsD) v *= std::abs(k);
        else if (kind == kDeriv) v *= cplx(0.0, k);
        buf[static_cast<size_t>(m)] = v;
    }
    std::vector<double> out(static_cast<size_t>(M));
    fft::c2r(M, buf.data(), out.data());
    return out;
}

void BabenkoOperator::abs_D_padded(std::vector<double>& v) const {
    const int M = 2 * grid_.n();
    std::vector<cplx> buf(static_cast<size_t>(M / 2 + 1));
    fft::r2c(M, v.data(), buf.data());
    const double dk = 2.0 * M_PI / grid_.length();
    for (int m = 0; m < M / 2; ++m) buf[static_cast<size_t>(m)] *= dk * m / M;
    buf[static_cast<size_t>(M / 2)] = 0.0;
    fft::c2r(M, buf.data(), v.data());
}

Spectrum BabenkoOperator::truncate(const std::vector<double>& v) const {
    const int n = grid_.n(), h = n / 2, M = 2 * n;
    std::vector<cplx> buf(static_cast<size_t>(M / 2 + 1));
    fft::r2c(M, v.data(), buf.data());
    Spectrum out(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) out[static_cast<size_t>(m)] = buf[static_cast<size_t>(m)] / static_cast<double>(M);
    return out;
}

namespace {

struct CapillaryState {
    std::vector<double> q;  // J^{-1/2}
    std::vector<double> A;  // U_a q
    std::vector<double> B;  // (1 + |D|U) q - 1
};

CapillaryState capillary_state(const std::vector<double>& DU, const std::vector<double>& Ua) {
    const size_t M = DU.size();
    CapillaryState s{std::vector<double>(M), std::vector<double>(M), std::vector<double>(M)};
    for (size_t j = 0; j < M; ++j) {
        const double d = DU[j], a = Ua[j];
        const double t = 2.0 * d + d * d + a * a;  // J - 1
        if (!(t > -1.0)) throw AmplitudeRegimeError();
        const double qm1 = std::expm1(-0.5 * std::log1p(t));
        s.q[j] = 1.0 + qm1;
        s.A[j] = a * s.q[j];
        s.B[j] = qm1 + d * s.q[j];
    }
    return s;
}

} // namespace

Spectrum BabenkoOperator::residual(const Spectrum& u) const {
    const double g = p_.g(), sg = p_.sigma(), gm = p_.gamma();
    const double gm2 = gm * gm;
    const auto U = pad(u, kPlain);
    const auto DU = pad(u, kAbsD);
    const auto Ua = pad(u, kDeriv);
    const size_t M = U.size();
    std::vector<double> DUsq(M);
    for (size_t j = 0; j < M; ++j) DUsq[j] = U[j] * U[j];
    abs_D_padded(DUsq);
    const auto cap = capillary_state(DU, Ua);

    std::vector<double> plain(M), absd(M), deriv(M);
    for (size_t j = 0; j < M; ++j) {
        const double u1 = U[j], u2 = u1 * u1;
        plain[j] = 0.5 * gm2 * u2 + g * u1 * DU[j] - 0.5 * gm2 * u1 * DUsq[j] + 0.5 * gm2 * u2 * DU[j];
        absd[j] = sg * cap.B[j] + 0.5 * g * u2 + gm2 / 6.0 * u2 * u1;
        deriv[j] = sg * cap.A[j];
    }
    const Spectrum P = truncate(plain), A = truncate(absd), D = truncate(deriv);
    const int h = grid_.n() / 2;
    Spectrum r(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) {
        const double k = grid_.wavenumber(m);
        const size_t i = static_cast<size_t>(m);
        r[i] = (symbol(m) - p_.sigma() * k * k) * u[i] + P[i] + std::abs(k) * A[i] - cplx(0.0, k) * D[i];
    }
    return r;
}

Spectrum BabenkoOperator::capillary(const Spectrum& u) const {
    const double sg = p_.sigma();
    const auto DU = pad(u, kAbsD);
    const auto Ua = pad(u, kDeriv);
    const auto cap = capillary_state(DU, Ua);
    const Spectrum A = truncate(cap.B), D = truncate(cap.A);
    const int h = grid_.n() / 2;
    Spectrum r(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) {
        const double k = grid_.wavenumber(m);
        const size_t i = static_cast<size_t>(m);
        r[i] = sg * (std::abs(k) * A[i] - cplx(0.0, k) * D[i]);
    }
    return r;
}

Spectrum BabenkoOperator::residual_dc(const Spectrum& u) const {
    const int h = grid_.n() / 2;
    Spectrum r(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) {
        const double k = std::abs(grid_.wavenumber(m));
        r[static_cast<size_t>(m)] = (p_.gamma() - 2.0 * c_ * k) * u[static_cast<size_t>(m)];
    }
    return r;
}

double BabenkoOperator::min_jacobian(const Spectrum& u) const {
    const auto DU = pad(u, kAbsD);
    const auto Ua = pad(u, kDeriv);
    double mn = INFINITY;
    for (size_t j = 0; j < DU.size(); ++j) {
        const double d = 1.0 + DU[j];
        mn = std::min(mn, d * d + Ua[j] * Ua[j]);
    }
    return mn;
}

double BabenkoOperator::energy(const Spectrum& u) const {
    const double g = p_.g(), sg = p_.sigma(), gm = p_.gamma();
    const auto U = pad(u, kPlain);
    const auto DU = pad(u, kAbsD);
    const auto Ua = pad(u, kDeriv);
    const size_t M = U.size();
    std::vector<double> DUsq(M);
    for (size_t j = 0; j < M; ++j) DUsq[j] = U[j] * U[j];
    abs_D_padded(DUsq);
    double acc = 0;
    for (size_t j = 0; j < M; ++j) {
        const double u1 = U[j], u2 = u1 * u1, d = DU[j];
        const double Q = -0.5 * gm * u2 - c_ * u1;
        const double DQ = -0.5 * gm * DUsq[j] - c_ * d;
        const double t = 2.0 * d + d * d + Ua[j] * Ua[j];
        if (!(t > -1.0)) throw AmplitudeRegimeError();
        const double sqrtJm1 = std::expm1(0.5 * std::log1p(t));
        acc += DQ * Q + g * u2 * (1.0 + d) + gm * DQ * u2 + gm * gm / 3.0 * u2 * u1 * (1.0 + d) +
               2.0 * sg * (sqrtJm1 - d);
    }
    return 0.5 * acc * grid_.length() / static_cast<double>(M);
}

double BabenkoOperator::momentum(const Spectrum& u) const {
    const double gm = p_.gamma();
    const auto U = pad(u, kPlain);
    const auto DU = pad(u, kAbsD);
    const size_t M = U.size();
    std::vector<double> DUsq(M);
    for (size_t j = 0; j < M; ++j) DUsq[j] = U[j] * U[j];
    abs_D_padded(DUsq);
    double acc = 0;
    for (size_t j = 0; j < M; ++j) {
        const double u1 = U[j], d = DU[j];
        const double DQ = -0.5 * gm * DUsq[j] - c_ * d;
        acc += DQ * u1 + 0.5 * gm * u1 * u1 * (1.0 + d);
    }
    return -acc * grid_.length() / static_cast<double>(M);
}

BabenkoOperator::Linearization BabenkoOperator::linearize(const Spectrum& u) const {
    Linearization L;
    L.op_ = this;
    L.U_ = pad(u, kPlain);
    L.DU_ = pad(u, kAbsD);
    L.Ua_ = pad(u, kDeriv);
    const size_t M = L.U_.size();
    L.DUsq_.resize(M);
    for (size_t j = 0; j < M; ++j) L.DUsq_[j] = L.U_[j] * L.U_[j];
    abs_D_padded(L.DUsq_);
    L.q_ = capillary_state(L.DU_, L.Ua_).q;
    return L;
}

Spectrum BabenkoOperator::Linearization::apply(const Spectrum& v) const {
    const BabenkoOperator& op = *op_;
    const double g = op.p_.g(), sg = op.p_.sigma(), gm = op.p_.gamma();
    const double gm2 = gm * gm;
    const auto V = op.pad(v, kPlain);
    const auto DV = op.pad(v, kAbsD);
    const auto Va = op.pad(v, kDeriv);
    const size_t M = V.size();
    std::vector<double> DUV(M);
    for (size_t j = 0; j < M; ++j) DUV[j] = U_[j] * V[j];
    op.abs_D_padded(DUV);

    std::vector<double> plain(M), absd(M), deriv(M);
    for (size_t j = 0; j < M; ++j) {
        const double u1 = U_[j], d = DU_[j], a = Ua_[j], q = q_[j];
        const double v1 = V[j], dv = DV[j], av = Va[j];
        const double dq = -q * q * q * ((1.0 + d) * dv + a * av);
        plain[j] = gm2 * u1 * v1 + g * (v1 * d + u1 * dv) - 0.5 * gm2 * (v1 * DUsq_[j] + 2.0 * u1 * DUV[j]) +
                   0.5 * gm2 * (2.0 * u1 * v1 * d + u1 * u1 * dv);
        absd[j] = sg * (dv * q + (1.0 + d) * dq) + g * u1 * v1 + 0.5 * gm2 * u1 * u1 * v1;
        deriv[j] = sg * (av * q + a * dq);
    }
    const Spectrum P = op.truncate(plain), A = op.truncate(absd), D = op.truncate(deriv);
    const int h = op.grid_.n() / 2;
    Spectrum r(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) {
        const double k = op.grid_.wavenumber(m);
        const size_t i = static_cast<size_t>(m);
        r[i] = (op.symbol(m) - sg * k * k) * v[i] + P[i] + std::abs(k) * A[i] - cplx(0.0, k) * D[i];
    }
    return r;
}

Spectrum BabenkoOperator::frechet(const Spectrum& u, const Spectrum& v) const {
    return linearize(u).apply(v);
}

Spectrum BabenkoOperator::frechet_fd(const Spectrum& u, const Spectrum& v, double h) const {
    Spectrum up = u, um = u;
    for (size_t i = 0; i < u.size(); ++i) {
        up[i] += h * v[i];
        um[i] -= h * v[i];
    }
    const Spectrum rp = residual(up), rm = residual(um);
    Spectrum out(u.size());
    for (size_t i = 0; i < u.size(); ++i) out[i] = (rp[i] - rm[i]) / (2.0 * h);
    return out;
}

RealField jacobian_J(const RealField& U) {
    const RealField d = abs_D(U);
    const RealField a = d_alpha(U);
    std::vector<double> J(U.values().size());
    for (size_t j = 0; j < J.size(); ++j) {
        const double t = 1.0 + d[j];
        J[j] = t * t + a[j] * a[j];
    }
    return RealField(U.grid(), std::move(J));
}

RealField capillary_terms(const RealField& U, const PhysicalParams& p) {
    const BabenkoOperator op(p, 0.0, U.grid());
    return RealField::from_spectrum(U.grid(), op.capillary(U.spectrum()));
}

RealField capillary_cubic_expansion(const RealField& U, double sigma, bool complete) {
    const auto& grid = U.grid();
    const RealField d = abs_D(U);
    const RealField a = d_alpha(U);
    const RealField daa = d_alpha(a);
    const RealField d2 = abs_D(dealiased_product({d, d}));
    const RealField a3 = d_alpha(dealiased_product({a, a, a}));
    std::vector<double> out(U.values().size());
    for (size_t j = 0; j < out.size(); ++j) out[j] = -sigma * daa[j] - 0.5 * sigma * d2[j] + 0.5 * sigma * a3[j];
    if (complete) {
        const RealField t1 = abs_D(dealiased_product({d, a, a}));
        const RealField t2 = d_alpha(dealiased_product({d, d, a}));
        for (size_t j = 0; j < out.size(); ++j) out[j] += sigma * t1[j] - sigma * t2[j];
    }
    return RealField(grid, std::move(out));
}

RealField babenko_residual(const RealField& U, double c, const PhysicalParams& p) {
    const BabenkoOperator op(p, c, U.grid());
    return RealField::from_spectrum(U.grid(), op.residual(U.spectrum()));
}

RealField babenko_frechet(const RealField& U, double c, const PhysicalParams& p, const RealField& V) {
    const BabenkoOperator op(p, c, U.grid());
    return RealField::from_spectrum(U.grid(), op.frechet(U.spectrum(), V.spectrum()));
}

double energy(const RealField& U, double c, const PhysicalParams& p) {
    return BabenkoOperator(p, c, U.grid()).energy(U.spectrum());
}

double momentum(const RealField& U, double c, const PhysicalParams& p) {
    return BabenkoOperator(p, c, U.grid()).momentum(U.spectrum());
}

} // namespace vortsol
