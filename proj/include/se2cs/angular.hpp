// Functions on the circle sampled at phi_j = 2 pi j / n.
#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fft.hpp"

namespace se2cs {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

class AngularSignal {
public:
    explicit AngularSignal(std::vector<cplx> values) : v_(std::move(values)) {
        if (v_.size() < 8 || v_.size() % 2 != 0)
            throw std::invalid_argument("AngularSignal: sample count must be even and >= 8, got " +
                                        std::to_string(v_.size()));
    }

    static AngularSignal zeros(int n) { return AngularSignal(std::vector<cplx>(std::size_t(std::max(n, 0)))); }

    template <class F>
    static AngularSignal sample(int n, F&& f) {
        std::vector<cplx> v(static_cast<std::size_t>(std::max(n, 0)));
        for (int j = 0; j < n; ++j) v[j] = cplx(f(two_pi * j / n));
        return AngularSignal(std::move(v));
    }

    int size() const { return int(v_.size()); }
    double phi(int j) const { return two_pi * j / size(); }
    double weight() const { return two_pi / size(); }
    const cplx& operator[](int j) const { return v_[std::size_t(j)]; }
    const std::vector<cplx>& values() const { return v_; }

    AngularSignal operator*(cplx a) const {
        auto w = v_;
        for (auto& x : w) x *= a;
        return AngularSignal(std::move(w));
    }
    AngularSignal operator+(const AngularSignal& o) const {
        check_same(o);
        auto w = v_;
        for (std::size_t j = 0; j < w.size(); ++j) w[j] += o.v_[j];
        return AngularSignal(std::move(w));
    }
    AngularSignal operator-(const AngularSignal& o) const { return *this + o * cplx(-1.0); }

    void check_same(const AngularSignal& o) const {
        if (o.size() != size())
            throw std::invalid_argument("AngularSignal: size mismatch (" + std::to_string(size()) + " vs " +
                                        std::to_string(o.size()) + ")");
    }

private:
    std::vector<cplx> v_;
};

// (2 pi / n) sum_j s_j
inline cplx quadrature(const AngularSignal& s) {
    cplx acc = 0;
    for (const auto& x : s.values()) acc += x;
    return acc * s.weight();
}

// Conjugate-linear in the first argument.
inline cplx inner_product(const AngularSignal& a, const AngularSignal& b) {
    a.check_same(b);
    cplx acc = 0;
    for (int j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * b[j];
    return acc * a.weight();
}

inline double norm(const AngularSignal& s) { return std::sqrt(std::max(0.0, inner_product(s, s).real())); }

// Fourier coefficients c_m with s(phi) = sum_m c_m e^{i m phi}; bin m holds harmonic fft::harmonic(m, n).
inline std::vector<cplx> harmonics(const AngularSignal& s) {
    auto c = s.values();
    fft::forward(c);
    for (auto& x : c) x /= double(s.size());
    return c;
}

inline AngularSignal from_harmonics(std::vector<cplx> c) {
    fft::backward(c);
    return AngularSignal(std::move(c));
}

// j0(s) = int_0^{2pi} e^{i s cos phi} dphi, periodic rectangle rule with doubling.
inline cplx bessel_j0(cplx s) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
        throw std::domain_error("bessel_j0: non-finite argument");
    if (std::abs(s.imag()) > 700.0)
        throw std::range_error("bessel_j0: |Im s| > 700 overflows double precision");
    const double scale = two_pi * std::exp(std::abs(s.imag()));
    const int n_min = 16 + 2 * int(std::abs(s));
    auto rule = [&](int n) {
        cplx acc = 0;
        for (int j = 0; j < n; ++j) acc += std::exp(cplx(0, 1) * s * std::cos(two_pi * j / n));
        return acc * (two_pi / n);
    };
    int n = 16;
    cplx prev = rule(n);
    for (n = 32; n <= (1 << 20); n *= 2) {
        cplx cur = rule(n);
        if (n >= n_min && std::abs(cur - prev) <= 1e-13 * scale) return cur;
        prev = cur;
    }
    throw std::runtime_error("bessel_j0: quadrature did not converge");
}

// log j0(-i x) = log int e^{x cos phi} dphi, stable for large |x|.
inline double log_bessel_j0_imag(double x) {
    if (!std::isfinite(x)) throw std::domain_error("log_bessel_j0_imag: non-finite argument");
    const double a = std::abs(x);
    auto rule = [&](int n) {
        double acc = 0;
        for (int j = 0; j < n; ++j) acc += std::exp(a * (std::cos(two_pi * j / n) - 1.0));
        return acc * (two_pi / n);
    };
    const int n_min = 16 + 2 * int(a);
    double prev = rule(16);
    for (int n = 32; n <= (1 << 22); n *= 2) {
        double cur = rule(n);
        if (n >= n_min && std::abs(cur - prev) <= 1e-14 * cur) return a + std::log(cur);
        prev = cur;
    }
    throw std::runtime_error("log_bessel_j0_imag: quadrature did not converge");
}

// phi -> s(phi - theta). Index shift on grid multiples, trigonometric interpolation otherwise
// (Nyquist mode split symmetrically, i.e. multiplied by cos(n theta / 2)).
inline AngularSignal rotate(const AngularSignal& s, double theta) {
    const int n = s.size();
    const double k = theta / s.weight();
    const double kr = std::round(k);
    if (std::abs(k - kr) <= 1e-12 * std::max(1.0, std::abs(k))) {
        long shift = long(std::fmod(kr, double(n)));
        if (shift < 0) shift += n;
        std::vector<cplx> w(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) w[std::size_t((j + shift) % n)] = s[j];
        return AngularSignal(std::move(w));
    }
    auto c = harmonics(s);
    for (int m = 0; m < n; ++m) {
        if (m == n / 2) {
            c[m] *= std::cos(0.5 * n * theta);
            continue;
        }
        c[m] *= std::exp(cplx(0, -fft::harmonic(m, n) * theta));
    }
    return from_harmonics(std::move(c));
}

// d/dphi via the multiplier i m; Nyquist zeroed. Caller guarantees band limitation.
inline AngularSignal spectral_derivative(const AngularSignal& s) {
    const int n = s.size();
    auto c = harmonics(s);
    for (int m = 0; m < n; ++m) c[m] *= (m == n / 2) ? cplx(0) : cplx(0, fft::harmonic(m, n));
    return from_harmonics(std::move(c));
}

// CSV: header row, phi,re[,im]; LF endings.
inline void write_csv(std::ostream& os, const AngularSignal& s, bool with_imag = true) {
    os << (with_imag ? "phi,re,im\n" : "phi,re\n");
    char buf[96];
    for (int j = 0; j < s.size(); ++j) {
        if (with_imag)
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", s.phi(j), s[j].real(), s[j].imag());
        else
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", s.phi(j), s[j].real());
        os << buf;
    }
}

}  // namespace se2cs
