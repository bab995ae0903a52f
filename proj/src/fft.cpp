#include "vortsol/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace vortsol::fft {

namespace {

enum class Kind { r2c, c2r, fwd, bwd };

class PlanCache {
public:
    ~PlanCache() {
        for (auto& kv : plans_) fftw_destroy_plan(kv.second);
    }

    fftw_plan get(Kind kind, int n) {
        std::lock_guard<std::mutex> lock(mu_);
        const auto key = std::make_tuple(kind, n);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<double> r(static_cast<size_t>(n));
        std::vector<cplx> c(static_cast<size_t>(n));
        auto* cp = reinterpret_cast<fftw_complex*>(c.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan p = nullptr;
        switch (kind) {
        case Kind::r2c: p = fftw_plan_dft_r2c_1d(n, r.data(), cp, flags); break;
        case Kind::c2r: p = fftw_plan_dft_c2r_1d(n, cp, r.data(), flags | FFTW_PRESERVE_INPUT); break;
        case Kind::fwd: {
            std::vector<cplx> o(static_cast<size_t>(n));
            p = fftw_plan_dft_1d(n, cp, reinterpret_cast<fftw_complex*>(o.data()), FFTW_FORWARD, flags);
            break;
        }
        case Kind::bwd: {
            std::vector<cplx> o(static_cast<size_t>(n));
            p = fftw_plan_dft_1d(n, cp, reinterpret_cast<fftw_complex*>(o.data()), FFTW_BACKWARD, flags);
            break;
        }
        }
        if (!p) throw std::runtime_error("FFTW planning failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<Kind, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* fc(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

} // namespace

void r2c(int n, const double* in, cplx* out) {
    fftw_execute_dft_r2c(cache().get(Kind::r2c, n), const_cast<double*>(in), fc(out));
}

void c2r(int n, const cplx* in, double* out) {
    fftw_execute_dft_c2r(cache().get(Kind::c2r, n), fc(in), out);
}

void c2c_forward(int n, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get(Kind::fwd, n), fc(in), fc(out));
}

void c2c_backward(int n, const cplx* in, cplx* out) {
    fftw_execute_dft(cache().get(Kind::bwd, n), fc(in), fc(out));
}

} // namespace vortsol::fft
