#pragma once

#include <complex>
#include <vector>

namespace vortsol::fft {

using cplx = std::complex<double>;

// Unnormalized FFTW transforms backed by a shared plan cache; safe to call concurrently.
void r2c(int n, const double* in, cplx* out);
void c2r(int n, const cplx* in, double* out);
void c2c_forward(int n, const cplx* in, cplx* out);
void c2c_backward(int n, const cplx* in, cplx* out);

} // namespace vortsol::fft
