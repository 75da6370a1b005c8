// Thin FFTW wrapper. Plans are cached per (shape, direction) and created under a
// mutex (the FFTW planner is not thread-safe); execution uses the new-array API,
// which is. Transforms are unnormalized, in place.
#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <fftw3.h>

namespace se2cs::fft {

using cplx = std::complex<double>;

namespace detail {

struct PlanCache {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, fftw_plan> plans;  // (rank, n, sign)

    ~PlanCache() {
        for (auto& [key, p] : plans) fftw_destroy_plan(p);
    }
};

inline PlanCache& cache() {
    static PlanCache c;
    return c;
}

inline fftw_plan plan_for(int rank, int n, int sign) {
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto key = std::make_tuple(rank, n, sign);
    if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;
    std::size_t total = rank == 1 ? std::size_t(n) : std::size_t(n) * n;
    std::vector<cplx> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan p = rank == 1 ? fftw_plan_dft_1d(n, buf, buf, sign, flags)
                            : fftw_plan_dft_2d(n, n, buf, buf, sign, flags);
    if (!p) throw std::runtime_error("fft: FFTW failed to create a plan");
    c.plans.emplace(key, p);
    return p;
}

inline void run(int rank, int n, int sign, cplx* data) {
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan_for(rank, n, sign), buf, buf);
}

}  // namespace detail

// out[m] = sum_j in[j] e^{-2 pi i j m / n}
inline void forward(std::vector<cplx>& v) { detail::run(1, int(v.size()), FFTW_FORWARD, v.data()); }
inline void backward(std::vector<cplx>& v) { detail::run(1, int(v.size()), FFTW_BACKWARD, v.data()); }

// Row-major n x n.
inline void forward2(std::vector<cplx>& v, int n) { detail::run(2, n, FFTW_FORWARD, v.data()); }
inline void backward2(std::vector<cplx>& v, int n) { detail::run(2, n, FFTW_BACKWARD, v.data()); }

// Contiguous length-n pointer variants (used for per-pixel columns).
inline void forward(cplx* data, int n) { detail::run(1, n, FFTW_FORWARD, data); }
inline void backward(cplx* data, int n) { detail::run(1, n, FFTW_BACKWARD, data); }

// Signed harmonic index of DFT bin m.
inline int harmonic(int m, int n) { return m < n / 2 ? m : m - n; }

}  // namespace se2cs::fft
