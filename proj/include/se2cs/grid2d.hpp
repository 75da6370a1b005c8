// Periodic square fields, the unitary FFT, ring sampling / synthesis and the
// Bessel smoothing f -> f_Omega.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "angular.hpp"
#include "fft.hpp"

namespace se2cs {

struct Grid {
    int n = 256;
    double h = 1.0;

    double length() const { return n * h; }
    // Sample i sits at x = i h; literal formulas use the centred representative.
    double coord(int i) const { return h * (i < n / 2 ? i : i - n); }
    double dk() const { return two_pi / length(); }
    double ring_bins(double omega) const { return omega * length() / two_pi; }
    double omega_for_bins(double bins) const { return two_pi * bins / length(); }

    void validate() const {
        if (n < 32 || (n & (n - 1)) != 0)
            throw std::invalid_argument("grid: N must be a power of two >= 32, got " + std::to_string(n));
        if (!(h > 0) || !std::isfinite(h)) throw std::invalid_argument("grid: spacing h must be positive");
    }
    void check_ring(double omega) const {
        const double r = ring_bins(omega);
        if (!(omega > 0) || r < 2.0 || r > n / 2 - 2.0)
            throw std::invalid_argument("ring radius " + std::to_string(r) + " bins outside resolvable band [2, " +
                                        std::to_string(n / 2 - 2) + "]");
    }
    bool operator==(const Grid&) const = default;
};

class Field2D {
public:
    Field2D() = default;
    explicit Field2D(Grid g) : g_(g) {
        g_.validate();
        v_.assign(std::size_t(g.n) * g.n, cplx(0));
    }
    Field2D(Grid g, std::vector<cplx> values) : g_(g), v_(std::move(values)) {
        g_.validate();
        if (v_.size() != std::size_t(g.n) * g.n) throw std::invalid_argument("Field2D: value count != N*N");
    }
    template <class F>
    static Field2D sample(Grid g, F&& f) {
        Field2D out(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) out(i, j) = cplx(f(g.coord(i), g.coord(j)));
        return out;
    }

    const Grid& grid() const { return g_; }
    int n() const { return g_.n; }
    double h() const { return g_.h; }
    cplx& operator()(int i, int j) { return v_[std::size_t(i) * g_.n + j]; }
    const cplx& operator()(int i, int j) const { return v_[std::size_t(i) * g_.n + j]; }
    std::vector<cplx>& values() { return v_; }
    const std::vector<cplx>& values() const { return v_; }

    Field2D& operator+=(const Field2D& o) {
        same(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
        return *this;
    }
    Field2D& operator-=(const Field2D& o) {
        same(o);
        for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
        return *this;
    }
    Field2D& operator*=(cplx a) {
        for (auto& x : v_) x *= a;
        return *this;
    }
    friend Field2D operator+(Field2D a, const Field2D& b) { return a += b; }
    friend Field2D operator-(Field2D a, const Field2D& b) { return a -= b; }
    friend Field2D operator*(Field2D a, cplx s) { return a *= s; }
    friend Field2D operator*(cplx s, Field2D a) { return a *= s; }

    void same(const Field2D& o) const {
        if (!(o.g_ == g_)) throw std::invalid_argument("Field2D: grid mismatch");
    }

private:
    Grid g_;
    std::vector<cplx> v_;
};

// L2 norm with the h^2 area element.
inline double l2_norm(const Field2D& f) {
    double acc = 0;
    for (const auto& x : f.values()) acc += std::norm(x);
    return std::sqrt(acc) * f.h();
}

inline double max_abs(const Field2D& f) {
    double m = 0;
    for (const auto& x : f.values()) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs_imag(const Field2D& f) {
    double m = 0;
    for (const auto& x : f.values()) m = std::max(m, std::abs(x.imag()));
    return m;
}

inline Field2D real_part(Field2D f) {
    for (auto& x : f.values()) x = x.real();
    return f;
}

// ||a - b|| / ||b||
inline double relative_l2(const Field2D& a, const Field2D& b) {
    a.same(b);
    double num = 0, den = 0;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        num += std::norm(a.values()[k] - b.values()[k]);
        den += std::norm(b.values()[k]);
    }
    return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

// Spectrum on the lattice k_m = (2 pi / L) m, m in [-N/2, N/2).
struct Spectrum2D {
    int n = 0;
    double dk = 0;
    std::vector<cplx> values;

    double wavenumber(int m) const { return dk * fft::harmonic(m, n); }
    cplx& operator()(int i, int j) { return values[std::size_t(i) * n + j]; }
    const cplx& operator()(int i, int j) const { return values[std::size_t(i) * n + j]; }
};

// F f(k) = (1/2pi) int e^{-ik.x} f(x) dx  ->  (h^2/2pi) sum f e^{-ik.x}
inline Spectrum2D fft2(const Field2D& f) {
    Spectrum2D s{f.n(), f.grid().dk(), f.values()};
    fft::forward2(s.values, s.n);
    const double c = f.h() * f.h() / two_pi;
    for (auto& x : s.values) x *= c;
    return s;
}

inline Field2D ifft2(const Spectrum2D& s) {
    const double h = two_pi / (s.n * s.dk);
    auto v = s.values;
    fft::backward2(v, s.n);
    const double c = two_pi / (double(s.n) * s.n * h * h);
    for (auto& x : v) x *= c;
    return Field2D(Grid{s.n, h}, std::move(v));
}

struct RingSignal {
    double omega;
    AngularSignal samples;
};

namespace detail {

// Keys cubic convolution kernel, a = -1/2.
inline double keys(double t) {
    t = std::abs(t);
    if (t < 1) return (1.5 * t - 2.5) * t * t + 1.0;
    if (t < 2) return ((-0.5 * t + 2.5) * t - 4.0) * t + 2.0;
    return 0.0;
}

inline cplx bicubic(const Spectrum2D& s, double u, double v) {
    const int iu = int(std::floor(u)), iv = int(std::floor(v));
    cplx acc = 0;
    for (int a = -1; a <= 2; ++a) {
        const double wa = keys(u - (iu + a));
        const int ia = ((iu + a) % s.n + s.n) % s.n;
        for (int b = -1; b <= 2; ++b) {
            const int ib = ((iv + b) % s.n + s.n) % s.n;
            acc += wa * keys(v - (iv + b)) * s(ia, ib);
        }
    }
    return acc;
}

inline std::vector<double> ring_angles(int n_phi) {
    std::vector<double> a(static_cast<std::size_t>(n_phi));
    for (int j = 0; j < n_phi; ++j) a[j] = two_pi * j / n_phi;
    return a;
}

}  // namespace detail

// f^hat sampled on |k| = omega by bicubic interpolation of the lattice spectrum.
// Accurate when the spectrum is smooth on the scale of one bin.
inline RingSignal ring_extract(const Field2D& f, double omega, int n_phi = 256) {
    f.grid().check_ring(omega);
    const auto s = fft2(f);
    std::vector<cplx> r(static_cast<std::size_t>(std::max(n_phi, 0)));
    for (int j = 0; j < n_phi; ++j) {
        const double phi = two_pi * j / n_phi;
        r[j] = detail::bicubic(s, omega * std::cos(phi) / s.dk, omega * std::sin(phi) / s.dk);
    }
    return {omega, AngularSignal(std::move(r))};
}

// Sums of plane waves sum_j c_j e^{i omega n(a_j).x} over a fixed set of directions a_j,
// evaluated as a rank-|a| product A1 diag(c) A2^T.
class PlaneWaveBasis {
public:
    PlaneWaveBasis(Grid g, double omega, const std::vector<double>& angles)
        : g_(g), a1_(g.n, Eigen::Index(angles.size())), a2_(g.n, Eigen::Index(angles.size())) {
        g_.validate();
        for (Eigen::Index j = 0; j < Eigen::Index(angles.size()); ++j) {
            const double c = omega * std::cos(angles[j]), s = omega * std::sin(angles[j]);
            for (int i = 0; i < g.n; ++i) {
                const double x = g.coord(i);
                a1_(i, j) = std::polar(1.0, c * x);
                a2_(i, j) = std::polar(1.0, s * x);
            }
        }
    }

    std::size_t size() const { return std::size_t(a1_.cols()); }
    const Grid& grid() const { return g_; }

    Field2D sum(const std::vector<cplx>& coeffs) const {
        if (coeffs.size() != size()) throw std::invalid_argument("PlaneWaveBasis: coefficient count mismatch");
        Eigen::Map<const Eigen::VectorXcd> d(coeffs.data(), Eigen::Index(coeffs.size()));
        // Column-major (A2 D A1^T)(j,i) has the memory layout of row-major F(i,j).
        Eigen::MatrixXcd t = a2_ * d.asDiagonal() * a1_.transpose();
        Field2D out(g_);
        std::copy(t.data(), t.data() + t.size(), out.values().begin());
        return out;
    }

    // (h^2 / 2pi) sum_x f(x) e^{-i omega n(a_j).x} for every direction j (exact DTFT on the ring).
    std::vector<cplx> analyze(const Field2D& f) const {
        if (!(f.grid() == g_)) throw std::invalid_argument("PlaneWaveBasis: grid mismatch");
        Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> fm(
            f.values().data(), g_.n, g_.n);
        Eigen::MatrixXcd b = a1_.adjoint() * fm;  // (j, i2)
        std::vector<cplx> out(size());
        const double c = g_.h * g_.h / two_pi;
        for (Eigen::Index j = 0; j < b.rows(); ++j) {
            cplx acc = 0;
            for (int i = 0; i < g_.n; ++i) acc += b(j, i) * std::conj(a2_(i, j));
            out[std::size_t(j)] = acc * c;
        }
        return out;
    }

private:
    Grid g_;
    Eigen::MatrixXcd a1_, a2_;
};

// x -> (1/2pi) int r(phi) e^{i omega n(phi).x} dphi, whose spectrum is r(phi) (1/omega) delta(|k| - omega).
inline Field2D ring_synthesize(const RingSignal& r, Grid g) {
    g.validate();
    g.check_ring(r.omega);
    const int n_phi = r.samples.size();
    PlaneWaveBasis basis(g, r.omega, detail::ring_angles(n_phi));
    std::vector<cplx> c(r.samples.values());
    for (auto& x : c) x *= r.samples.weight() / two_pi;
    return basis.sum(c);
}

// Class density of a ring-supported field (inverse of ring_synthesize): Gaussian window of
// width s, exact DTFT on the ring, then per-harmonic deconvolution of the von Mises kernel
// K(psi) = e^{-kappa (1 - cos psi)}, kappa = s^2 omega^2. Harmonics attenuated below 1e-4 are dropped.
inline RingSignal ring_analyze(const Field2D& f, double omega, int n_phi = 256) {
    const Grid g = f.grid();
    g.check_ring(omega);
    AngularSignal::zeros(n_phi);  // validates n_phi
    const double s = std::min(g.length() / 12.0, (n_phi / 2 - 1) / (4.3 * omega));
    const double kappa = s * s * omega * omega;

    int n_eval = n_phi;
    while (n_eval < 2 * int(std::ceil(8.6 * std::sqrt(kappa))) + 2) n_eval *= 2;
    int n_kernel = 256;
    while (n_kernel < std::max(4 * n_eval, int(32 * std::sqrt(kappa)) + 64)) n_kernel *= 2;

    Field2D wf(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double x = g.coord(i), y = g.coord(j);
            wf(i, j) = f(i, j) * std::exp(-(x * x + y * y) / (2 * s * s));
        }
    auto ring = PlaneWaveBasis(g, omega, detail::ring_angles(n_eval)).analyze(wf);
    fft::forward(ring);

    std::vector<cplx> kern(static_cast<std::size_t>(n_kernel));
    for (int j = 0; j < n_kernel; ++j) kern[j] = std::exp(-kappa * (1.0 - std::cos(two_pi * j / n_kernel)));
    fft::forward(kern);
    auto khat = [&](int m) { return kern[std::size_t((m + n_kernel) % n_kernel)].real() * two_pi / n_kernel; };

    const double k0 = khat(0);
    std::vector<cplx> rho(static_cast<std::size_t>(n_phi), cplx(0));
    for (int m = -(n_phi / 2 - 1); m <= n_phi / 2 - 1; ++m) {
        const double km = khat(m);
        if (km < 1e-4 * k0) continue;
        const cplx gm = ring[std::size_t((m + n_eval) % n_eval)] / double(n_eval);
        rho[std::size_t((m + n_phi) % n_phi)] = two_pi * gm / (s * s * km);
    }
    return {omega, from_harmonics(std::move(rho))};
}

// P_Omega f = f_Omega = f * j0(omega |.|) / (2pi)^2
inline Field2D bessel_smooth(const Field2D& f, double omega, int n_phi = 256) {
    return ring_synthesize(ring_extract(f, omega, n_phi), f.grid());
}

inline double h_omega_norm(const Field2D& f, double omega, int n_phi = 256) {
    return norm(ring_extract(f, omega, n_phi).samples);
}

// f(x - a) for lattice shifts a = (di h, dj h).
inline Field2D translate(const Field2D& f, int di, int dj) {
    Field2D out(f.grid());
    const int n = f.n();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = f(((i - di) % n + n) % n, ((j - dj) % n + n) % n);
    return out;
}

// f(r_{-k pi/2} x): exact lattice rotation by k quarter turns.
inline Field2D rotate_quarter(const Field2D& f, int k) {
    const int n = f.n();
    Field2D out = f;
    for (int t = 0; t < ((k % 4) + 4) % 4; ++t) {
        Field2D r(f.grid());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r(i, j) = out(j, (n - i) % n);
        out = std::move(r);
    }
    return out;
}

// Fraction of spectral power (DC excluded) inside |k| in omega (1 +- rel_width), after separable
// Hann apodisation centred on x = 0 (literal fields are not periodic on the box).
inline double spectrum_ring_fraction(const Field2D& f, double omega, double rel_width) {
    if (!(rel_width > 0 && rel_width <= 0.5)) throw std::invalid_argument("spectrum_ring_fraction: rel_width must lie in (0, 0.5]");
    if (!(omega > 0)) throw std::invalid_argument("spectrum_ring_fraction: omega must be positive");
    const Grid g = f.grid();
    std::vector<double> w(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) w[i] = std::pow(std::cos(pi * g.coord(i) / g.length()), 2);
    Field2D a(g);
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) a(i, j) = f(i, j) * w[i] * w[j];
    const auto s = fft2(a);
    double in = 0, total = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            if (i == 0 && j == 0) continue;
            const double k = std::hypot(s.wavenumber(i), s.wavenumber(j));
            const double p = std::norm(s(i, j));
            total += p;
            if (std::abs(k - omega) <= rel_width * omega) in += p;
        }
    return total > 0 ? in / total : 0.0;
}

}  // namespace se2cs
