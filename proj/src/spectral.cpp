#include "vortsol/spectral.hpp"

#include "vortsol/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vortsol {

PeriodicGrid::PeriodicGrid(int n, double length) : n_(n), L_(length) {
    if (n < 16 || (n & (n - 1)) != 0) throw std::invalid_argument("grid size must be a power of two >= 16");
    if (!(length > 0) || !std::isfinite(length)) throw std::invalid_argument("grid length must be positive");
}

std::vector<double> PeriodicGrid::nodes() const {
    std::vector<double> x(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) x[static_cast<size_t>(j)] = node(j);
    return x;
}

double PeriodicGrid::wavenumber(int m) const noexcept {
    const int mm = m <= n_ / 2 ? m : m - n_;
    return 2.0 * std::numbers::pi * mm / L_;
}

double PeriodicGrid::nyquist() const noexcept { return std::numbers::pi * n_ / L_; }

Spectrum forward(const PeriodicGrid& grid, const std::vector<double>& values) {
    const int n = grid.n();
    if (static_cast<int>(values.size()) != n) throw std::invalid_argument("field size does not match grid");
    Spectrum s(static_cast<size_t>(n / 2 + 1));
    fft::r2c(n, values.data(), s.data());
    const double inv = 1.0 / n;
    for (auto& c : s) c *= inv;
    return s;
}

std::vector<double> inverse(const PeriodicGrid& grid, const Spectrum& spec) {
    const int n = grid.n();
    if (static_cast<int>(spec.size()) != n / 2 + 1) throw std::invalid_argument("spectrum size does not match grid");
    std::vector<double> v(static_cast<size_t>(n));
    fft::c2r(n, spec.data(), v.data());
    return v;
}

RealField::RealField(PeriodicGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)), cache_(std::make_shared<Cache>()) {
    if (static_cast<int>(values_.size()) != grid_.n()) throw std::invalid_argument("field size does not match grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("field samples must be finite");
}

RealField RealField::from_spectrum(const PeriodicGrid& grid, const Spectrum& spec) {
    return RealField(grid, inverse(grid, spec));
}

RealField RealField::from_function(const PeriodicGrid& grid, const std::function<double(double)>& f) {
    std::vector<double> v(static_cast<size_t>(grid.n()));
    for (int j = 0; j < grid.n(); ++j) v[static_cast<size_t>(j)] = f(grid.node(j));
    return RealField(grid, std::move(v));
}

const Spectrum& RealField::spectrum() const {
    std::call_once(cache_->once, [this] { cache_->spec = forward(grid_, values_); });
    return cache_->spec;
}

ComplexField::ComplexField(PeriodicGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)), cache_(std::make_shared<Cache>()) {
    if (static_cast<int>(values_.size()) != grid_.n()) throw std::invalid_argument("field size does not match grid");
}

ComplexField::ComplexField(const RealField& f)
    : grid_(f.grid()), values_(f.values().begin(), f.values().end()), cache_(std::make_shared<Cache>()) {}

ComplexField ComplexField::from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& spec) {
    const int n = grid.n();
    if (static_cast<int>(spec.size()) != n) throw std::invalid_argument("spectrum size does not match grid");
    std::vector<cplx> v(static_cast<size_t>(n));
    fft::c2c_backward(n, spec.data(), v.data());
    return ComplexField(grid, std::move(v));
}

const std::vector<cplx>& ComplexField::spectrum() const {
    std::call_once(cache_->once, [this] {
        const int n = grid_.n();
        cache_->spec.resize(static_cast<size_t>(n));
        fft::c2c_forward(n, values_.data(), cache_->spec.data());
        for (auto& c : cache_->spec) c /= static_cast<double>(n);
    });
    return cache_->spec;
}

RealField ComplexField::real() const {
    std::vector<double> v(values_.size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = values_[j].real();
    return RealField(grid_, std::move(v));
}

RealField ComplexField::imag() const {
    std::vector<double> v(values_.size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = values_[j].imag();
    return RealField(grid_, std::move(v));
}

RealField apply_multiplier(const RealField& f, const std::function<cplx(double)>& symbol) {
    const auto& g = f.grid();
    Spectrum s = f.spectrum();
    const int h = g.n() / 2;
    for (int m = 0; m < h; ++m) s[static_cast<size_t>(m)] *= symbol(g.wavenumber(m));
    s[static_cast<size_t>(h)] = 0.0;
    return RealField::from_spectrum(g, s);
}

RealField hilbert(const RealField& f) {
    return apply_multiplier(f, [](double k) { return k == 0 ? cplx(0.0) : cplx(0.0, k > 0 ? -1.0 : 1.0); });
}

RealField abs_D(const RealField& f) {
    return apply_multiplier(f, [](double k) { return cplx(std::abs(k)); });
}

RealField d_alpha(const RealField& f) {
    return apply_multiplier(f, [](double k) { return cplx(0.0, k); });
}

ComplexField proj_neg(const ComplexField& f) {
    const auto& g = f.grid();
    std::vector<cplx> s = f.spectrum();
    const int n = g.n();
    for (int m = 1; m < n; ++m) {
        if (m == n / 2) s[static_cast<size_t>(m)] *= 0.5;
        else if (m < n / 2) s[static_cast<size_t>(m)] = 0.0;
    }
    s[0] *= 0.5;
    return ComplexField::from_spectrum(g, s);
}

ComplexField proj_neg(const RealField& f) { return proj_neg(ComplexField(f)); }

bool window_contains(Window w, double k, double omega, double delta) {
    const double a = std::abs(omega);
    switch (w) {
    case Window::chi_plus: return k > a - delta && k < a + delta;
    case Window::chi_minus: return k > -a - delta && k < -a + delta;
    case Window::chi: return window_contains(Window::chi_plus, k, omega, delta) ||
                             window_contains(Window::chi_minus, k, omega, delta);
    case Window::chi0: return k > -delta && k < delta;
    }
    return false;
}

namespace {
void check_window(double omega, double delta) {
    if (!(delta > 0 && delta < std::abs(omega))) throw std::invalid_argument("window needs 0 < delta < |omega|");
}
} // namespace

ComplexField freq_window(const ComplexField& f, Window w, double omega, double delta, bool complement) {
    check_window(omega, delta);
    const auto& g = f.grid();
    std::vector<cplx> s = f.spectrum();
    for (int m = 0; m < g.n(); ++m) {
        const bool in = window_contains(w, g.wavenumber(m), omega, delta);
        if (in == complement) s[static_cast<size_t>(m)] = 0.0;
    }
    return ComplexField::from_spectrum(g, s);
}

RealField freq_window(const RealField& f, Window w, double omega, double delta, bool complement) {
    check_window(omega, delta);
    if (w == Window::chi_plus || w == Window::chi_minus)
        throw std::invalid_argument("one-sided windows produce complex fields");
    const auto& g = f.grid();
    Spectrum s = f.spectrum();
    for (int m = 0; m <= g.n() / 2; ++m) {
        const bool in = window_contains(w, g.wavenumber(m), omega, delta);
        if (in == complement) s[static_cast<size_t>(m)] = 0.0;
    }
    return RealField::from_spectrum(g, s);
}

RealField dealiased_product(const std::vector<RealField>& factors) {
    const size_t p = factors.size();
    if (p == 0 || p > 5) throw std::invalid_argument("dealiased_product takes 1 to 5 factors");
    const PeriodicGrid& g = factors.front().grid();
    for (const auto& f : factors)
        if (!(f.grid() == g)) throw std::invalid_argument("factors live on different grids");
    const int n = g.n();
    const int h = n / 2;
    int M = static_cast<int>((p + 1) * static_cast<size_t>(n) / 2);
    M += M % 2;
    std::vector<double> prod(static_cast<size_t>(M), 1.0);
    std::vector<cplx> padded(static_cast<size_t>(M / 2 + 1));
    std::vector<double> vals(static_cast<size_t>(M));
    for (const auto& f : factors) {
        std::fill(padded.begin(), padded.end(), cplx(0.0));
        const auto& s = f.spectrum();
        for (int m = 0; m < h; ++m) padded[static_cast<size_t>(m)] = s[static_cast<size_t>(m)];
        fft::c2r(M, padded.data(), vals.data());
        for (int j = 0; j < M; ++j) prod[static_cast<size_t>(j)] *= vals[static_cast<size_t>(j)];
    }
    fft::r2c(M, prod.data(), padded.data());
    Spectrum out(static_cast<size_t>(h + 1), cplx(0.0));
    for (int m = 0; m < h; ++m) out[static_cast<size_t>(m)] = padded[static_cast<size_t>(m)] / static_cast<double>(M);
    return RealField::from_spectrum(g, out);
}

namespace {

double weighted_norm(const RealField& f, const std::function<double(double)>& weight) {
    const auto& g = f.grid();
    const auto& s = f.spectrum();
    const int h = g.n() / 2;
    double acc = weight(0.0) * std::norm(s[0]);
    for (int m = 1; m < h; ++m) acc += 2.0 * weight(g.wavenumber(m)) * std::norm(s[static_cast<size_t>(m)]);
    acc += weight(g.nyquist()) * std::norm(s[static_cast<size_t>(h)]);
    return std::sqrt(g.length() * acc);
}

} // namespace

double norm_l2(const RealField& f) {
    return weighted_norm(f, [](double) { return 1.0; });
}

double norm_h(const RealField& f, double s) {
    return weighted_norm(f, [s](double k) { return std::pow(1.0 + k * k, s); });
}

double norm_E_omega(const RealField& f, double omega, double eps) {
    if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
    const double a = std::abs(omega);
    return weighted_norm(f, [a, eps](double k) {
        const double d = (std::abs(k) - a) / eps;
        return 1.0 + d * d;
    });
}

double inner(const RealField& a, const RealField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
    double acc = 0;
    for (size_t j = 0; j < a.values().size(); ++j) acc += a[j] * b[j];
    return acc * a.grid().spacing();
}

} // namespace vortsol
