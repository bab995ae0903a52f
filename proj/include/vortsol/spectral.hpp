#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

namespace vortsol {

using cplx = std::complex<double>;

class PeriodicGrid {
public:
    PeriodicGrid(int n, double length);

    int n() const noexcept { return n_; }
    double length() const noexcept { return L_; }
    double spacing() const noexcept { return L_ / n_; }
    // (j - n/2) h, so that node(n - j) = -node(j) exactly
    double node(int j) const noexcept { return (j - n_ / 2) * (L_ / n_); }
    std::vector<double> nodes() const;
    // Wavenumber of FFT index m in [0, n); the Nyquist index n/2 maps to +pi n / L.
    double wavenumber(int m) const noexcept;
    double nyquist() const noexcept;

    bool operator==(const PeriodicGrid& o) const noexcept { return n_ == o.n_ && L_ == o.L_; }

private:
    int n_;
    double L_;
};

// Half spectrum c_m = (1/n) sum_j u_j exp(-2 pi i j m / n), m = 0..n/2.
using Spectrum = std::vector<cplx>;

Spectrum forward(const PeriodicGrid& grid, const std::vector<double>& values);
std::vector<double> inverse(const PeriodicGrid& grid, const Spectrum& spec);

class RealField {
public:
    RealField(PeriodicGrid grid, std::vector<double> values);
    static RealField from_spectrum(const PeriodicGrid& grid, const Spectrum& spec);
    static RealField from_function(const PeriodicGrid& grid, const std::function<double(double)>& f);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    double operator[](size_t j) const { return values_[j]; }
    const Spectrum& spectrum() const;

private:
    struct Cache {
        std::once_flag once;
        Spectrum spec;
    };
    PeriodicGrid grid_;
    std::vector<double> values_;
    std::shared_ptr<Cache> cache_;
};

class ComplexField {
public:
    ComplexField(PeriodicGrid grid, std::vector<cplx> values);
    static ComplexField from_spectrum(const PeriodicGrid& grid, const std::vector<cplx>& spec);
    explicit ComplexField(const RealField& f);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    const std::vector<cplx>& values() const noexcept { return values_; }
    // Full spectrum, index m in [0, n), normalized by 1/n.
    const std::vector<cplx>& spectrum() const;
    RealField real() const;
    RealField imag() const;

private:
    struct Cache {
        std::once_flag once;
        std::vector<cplx> spec;
    };
    PeriodicGrid grid_;
    std::vector<cplx> values_;
    std::shared_ptr<Cache> cache_;
};

// Fourier multiplier with symbol s(k); the Nyquist coefficient is dropped.
RealField apply_multiplier(const RealField& f, const std::function<cplx(double)>& symbol);

RealField hilbert(const RealField& f);
RealField abs_D(const RealField& f);
RealField d_alpha(const RealField& f);

// Projection onto negative frequencies: symbol 1 for k < 0, 1/2 at k = 0 and Nyquist, 0 for k > 0.
ComplexField proj_neg(const ComplexField& f);
ComplexField proj_neg(const RealField& f);

enum class Window { chi, chi_plus, chi_minus, chi0 };

bool window_contains(Window w, double k, double omega, double delta);
ComplexField freq_window(const ComplexField& f, Window w, double omega, double delta,
                         bool complement = false);
// Real fields accept only the symmetric windows chi and chi0.
RealField freq_window(const RealField& f, Window w, double omega, double delta,
                      bool complement = false);

// Pointwise product on a padded grid of (p+1)n/2 points, truncated back to n; p <= 5.
RealField dealiased_product(const std::vector<RealField>& factors);

double norm_l2(const RealField& f);
double norm_h(const RealField& f, double s);
double norm_E_omega(const RealField& f, double omega, double eps);
double inner(const RealField& a, const RealField& b);

} // namespace vortsol
