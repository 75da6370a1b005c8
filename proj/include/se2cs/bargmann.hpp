// The SE(2)-Bargmann transform Phi -> <Pi(q,theta) u, Phi>, its Fourier-side kernel,
// isometry, inversion and the CR check.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "angular.hpp"
#include "grid2d.hpp"
#include "parallel.hpp"
#include "se2.hpp"

namespace se2cs {

// F(q1, q2, theta_t), theta_t = 2 pi t / n_theta, stored as theta-major slices.
class SE2Field {
public:
    SE2Field(Grid g, int n_theta, double lambda, double omega)
        : g_(g), lambda_(lambda), omega_(omega), slices_(std::size_t(std::max(n_theta, 0))) {
        g.validate();
        if (n_theta < 8 || n_theta % 2 != 0)
            throw std::invalid_argument("SE2Field: n_theta must be even and >= 8, got " + std::to_string(n_theta));
        for (auto& s : slices_) s = Field2D(g);
    }

    const Grid& grid() const { return g_; }
    int n_theta() const { return int(slices_.size()); }
    double lambda() const { return lambda_; }
    double omega() const { return omega_; }
    double theta(int t) const { return two_pi * t / n_theta(); }
    Field2D& slice(int t) { return slices_[std::size_t(t)]; }
    const Field2D& slice(int t) const { return slices_[std::size_t(t)]; }

    AngularSignal profile(int i, int j) const {
        std::vector<cplx> v(slices_.size());
        for (std::size_t t = 0; t < v.size(); ++t) v[t] = slices_[t](i, j);
        return AngularSignal(std::move(v));
    }

private:
    Grid g_;
    double lambda_, omega_;
    std::vector<Field2D> slices_;
};

// G(phi_j, theta_t), phi-major.
struct RingTheta {
    int n_phi;
    int n_theta;
    std::vector<cplx> values;

    cplx& operator()(int j, int t) { return values[std::size_t(j) * n_theta + t]; }
    const cplx& operator()(int j, int t) const { return values[std::size_t(j) * n_theta + t]; }
};

namespace detail {
inline void check_lambda_omega(double lambda, double omega) {
    if (lambda < 0 || !(omega > 0)) throw std::invalid_argument("transform: need lambda >= 0 and omega > 0");
    if (2.0 * lambda * omega > 700.0) throw std::range_error("transform: lambda*omega beyond the bessel_j0 overflow range");
}
}  // namespace detail

// N e^{log_scale} int e^{i omega n(phi).q} e^{lambda omega cos(phi - theta)} Phi(phi) dphi, the exponent
// assembled before exponentiation so that tiny/huge prefactors do not under/overflow.
inline SE2Field transform_scaled(const AngularSignal& phi, double lambda, double omega, Grid g, int n_theta,
                                 double log_scale) {
    g.validate();
    g.check_ring(omega);
    detail::check_lambda_omega(lambda, omega);
    SE2Field out(g, n_theta, lambda, omega);
    const int n_phi = phi.size();
    const double lo = lambda * omega;
    const double log_n = log_fiducial_norm(lo) + log_scale;
    PlaneWaveBasis basis(g, omega, detail::ring_angles(n_phi));
    detail::parallel_for(n_theta, [&](int t) {
        const double th = out.theta(t);
        std::vector<cplx> c(static_cast<std::size_t>(n_phi));
        for (int j = 0; j < n_phi; ++j) c[j] = phi.weight() * std::exp(lo * std::cos(phi.phi(j) - th) + log_n) * phi[j];
        out.slice(t) = basis.sum(c);
    });
    return out;
}

inline SE2Field transform(const AngularSignal& phi, double lambda, double omega, Grid g, int n_theta = 64) {
    return transform_scaled(phi, lambda, omega, g, n_theta, 0.0);
}

// G(phi, theta) = N e^{lambda omega cos(theta - phi)} Phi(phi)
inline RingTheta fourier_side(const AngularSignal& phi, double lambda, double omega, int n_theta = 64) {
    detail::check_lambda_omega(lambda, omega);
    if (n_theta < 1) throw std::invalid_argument("fourier_side: n_theta must be positive");
    const double lo = lambda * omega;
    const double log_n = log_fiducial_norm(lo);
    RingTheta g{phi.size(), n_theta, std::vector<cplx>(std::size_t(phi.size()) * n_theta)};
    for (int j = 0; j < phi.size(); ++j)
        for (int t = 0; t < n_theta; ++t)
            g(j, t) = std::exp(lo * std::cos(two_pi * t / n_theta - phi.phi(j)) + log_n) * phi[j];
    return g;
}

// | ||G||^2 - ||Phi||^2 | / ||Phi||^2 on the (phi, theta) lattice.
inline double isometry_defect(const AngularSignal& phi, double lambda, double omega, int n_theta = 64) {
    const double p2 = inner_product(phi, phi).real();
    if (p2 == 0) return 0.0;
    const auto g = fourier_side(phi, lambda, omega, n_theta);
    double g2 = 0;
    for (const auto& x : g.values) g2 += std::norm(x);
    g2 *= phi.weight() * (two_pi / n_theta);
    return std::abs(g2 - p2) / p2;
}

// Phi(phi) = N int dtheta e^{lambda omega cos(phi - theta)} G(phi, theta), with G read off each slice
// by class extraction (a slice is 2 pi ring_synthesize(G(., theta))).
inline AngularSignal inverse_transform(const SE2Field& f, int n_phi = 256) {
    const double lo = f.lambda() * f.omega();
    const double log_n = log_fiducial_norm(lo);
    const int nt = f.n_theta();
    std::vector<AngularSignal> g(static_cast<std::size_t>(nt), AngularSignal::zeros(n_phi));
    detail::parallel_for(nt, [&](int t) { g[std::size_t(t)] = ring_analyze(f.slice(t), f.omega(), n_phi).samples; });
    std::vector<cplx> out(static_cast<std::size_t>(n_phi), cplx(0));
    for (int j = 0; j < n_phi; ++j) {
        const double ph = two_pi * j / n_phi;
        cplx acc = 0;
        for (int t = 0; t < nt; ++t) acc += std::exp(lo * std::cos(ph - f.theta(t)) + log_n) * g[std::size_t(t)][j];
        out[j] = acc * (1.0 / nt);  // (2 pi / n_theta) * (1 / 2 pi)
    }
    return AngularSignal(std::move(out));
}

// Value of F at an arbitrary theta by trigonometric interpolation in theta.
inline Field2D theta_interpolate(const SE2Field& f, double theta) {
    const int nt = f.n_theta();
    const double k = theta / (two_pi / nt);
    const double kr = std::round(k);
    if (std::abs(k - kr) <= 1e-12 * std::max(1.0, std::abs(k))) {
        const int t = int(((long(kr) % nt) + nt) % nt);
        return f.slice(t);
    }
    std::vector<double> w(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        const double d = theta - f.theta(t);
        double acc = 1.0 + std::cos(0.5 * nt * d);
        for (int m = 1; m < nt / 2; ++m) acc += 2.0 * std::cos(m * d);
        w[t] = acc / nt;
    }
    Field2D out(f.grid());
    for (int t = 0; t < nt; ++t) {
        const auto& s = f.slice(t);
        for (std::size_t p = 0; p < s.values().size(); ++p) out.values()[p] += w[t] * s.values()[p];
    }
    return out;
}

struct CrParts {
    double residual;
    double x2_norm;
    double x1_norm;
};

// Relative L2 norm of (X2 + i sign lambda X1) F. X1 = -sin t d/dq1 + cos t d/dq2 by centred
// differences, X2 = d/dtheta spectrally. The two rows/columns straddling the periodic seam
// are excluded (literal fields are not periodic on the box).
inline CrParts cr_residual_signed(const SE2Field& f, double sign) {
    const int n = f.grid().n, nt = f.n_theta();
    const double h = f.grid().h, lam = f.lambda();
    auto seam = [n](int i) { return i == n / 2 - 1 || i == n / 2; };
    double r2 = 0, x2n = 0, x1n = 0;
    std::vector<cplx> prof(static_cast<std::size_t>(nt)), d2(static_cast<std::size_t>(nt));
    std::vector<double> st(static_cast<std::size_t>(nt)), ct(static_cast<std::size_t>(nt));
    for (int t = 0; t < nt; ++t) {
        st[t] = std::sin(f.theta(t));
        ct[t] = std::cos(f.theta(t));
    }
    for (int i = 0; i < n; ++i) {
        if (seam(i)) continue;
        for (int j = 0; j < n; ++j) {
            if (seam(j)) continue;
            for (int t = 0; t < nt; ++t) prof[t] = f.slice(t)(i, j);
            d2 = prof;
            fft::forward(d2.data(), nt);
            for (int m = 0; m < nt; ++m) d2[m] *= (m == nt / 2) ? cplx(0) : cplx(0, fft::harmonic(m, nt)) / double(nt);
            fft::backward(d2.data(), nt);
            for (int t = 0; t < nt; ++t) {
                const auto& s = f.slice(t);
                const cplx d1 = (s((i + 1) % n, j) - s((i - 1 + n) % n, j)) / (2 * h);
                const cplx dq2 = (s(i, (j + 1) % n) - s(i, (j - 1 + n) % n)) / (2 * h);
                const cplx x1 = -st[t] * d1 + ct[t] * dq2;
                r2 += std::norm(d2[t] + cplx(0, sign * lam) * x1);
                x2n += std::norm(d2[t]);
                x1n += std::norm(x1);
            }
        }
    }
    const double den = std::sqrt(x2n) + lam * std::sqrt(x1n);
    return {den > 0 ? std::sqrt(r2) / den : 0.0, std::sqrt(x2n), std::sqrt(x1n)};
}

// Sign s in (X2 + i s lambda X1) that annihilates transform outputs, fixed once by a self-test.
inline double cr_sign() {
    static const double s = [] {
        const Grid g{64, 1.0};
        const double omega = 0.25, lambda = 4.0;
        auto phi = AngularSignal::sample(64, [](double p) { return std::exp(cplx(0, p)) + 0.5 * std::cos(2 * p); });
        const auto f = transform(phi, lambda, omega, g, 32);
        const double plus = cr_residual_signed(f, +1.0).residual;
        const double minus = cr_residual_signed(f, -1.0).residual;
        return plus <= minus ? +1.0 : -1.0;
    }();
    return s;
}

inline double cr_residual(const SE2Field& f) { return cr_residual_signed(f, cr_sign()).residual; }

struct MembershipReport {
    std::vector<double> ring_fraction;  // per theta slice
    double min_ring_fraction;
    double cr;
    bool ring_pass;
    bool cr_pass;
    bool pass;
};

// H_Omega part: per-slice spectral power fraction in the annulus |k| in omega (1 +- w),
// w = max(0.1, 3 bins / R); CR part: cr_residual.
inline MembershipReport membership_test(const SE2Field& f, double tol) {
    MembershipReport r;
    const double w = std::min(0.5, std::max(0.1, 3.0 / f.grid().ring_bins(f.omega())));
    r.ring_fraction.resize(std::size_t(f.n_theta()));
    detail::parallel_for(f.n_theta(), [&](int t) {
        const auto& s = f.slice(t);
        r.ring_fraction[std::size_t(t)] = max_abs(s) == 0 ? 1.0 : spectrum_ring_fraction(s, f.omega(), w);
    });
    r.min_ring_fraction = 1.0;
    for (double x : r.ring_fraction) r.min_ring_fraction = std::min(r.min_ring_fraction, x);
    r.cr = cr_residual(f);
    r.ring_pass = r.min_ring_fraction >= 1.0 - tol;
    r.cr_pass = r.cr <= tol;
    r.pass = r.ring_pass && r.cr_pass;
    return r;
}

}  // namespace se2cs
