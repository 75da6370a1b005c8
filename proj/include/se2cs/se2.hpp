// SE(2): group law, integral curves of X1 + k X2, the representation on L2(S1),
// its algebra and the minimal-uncertainty fiducial states.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "angular.hpp"

namespace se2cs {

inline double wrap_angle(double t) {
    double r = std::fmod(t, two_pi);
    if (r < 0) r += two_pi;
    return r >= two_pi ? 0.0 : r;
}

struct GroupElement {
    std::array<double, 2> q{0.0, 0.0};
    double theta = 0.0;

    GroupElement() = default;
    GroupElement(double q1, double q2, double th) : q{q1, q2}, theta(wrap_angle(th)) {}

    static GroupElement identity() { return {}; }
};

inline std::array<double, 2> rotate_vec(double th, const std::array<double, 2>& v) {
    const double c = std::cos(th), s = std::sin(th);
    return {c * v[0] - s * v[1], s * v[0] + c * v[1]};
}

// (q', t') . (q, t) = (q' + r_t' q, t' + t)
inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
    const auto rq = rotate_vec(a.theta, b.q);
    return {a.q[0] + rq[0], a.q[1] + rq[1], a.theta + b.theta};
}

inline GroupElement inverse(const GroupElement& g) {
    const auto rq = rotate_vec(-g.theta, g.q);
    return {-rq[0], -rq[1], -g.theta};
}

namespace detail {
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
    return std::sin(x) / x;
}
}  // namespace detail

// Integral curve of X1 + k X2 (X1 = -sin t d/dq1 + cos t d/dq2, X2 = d/dt) through base.
// Written with sinc so that k -> 0 is continuous and k = 0 is the straight segment.
inline GroupElement exp_flow(const GroupElement& base, double t, double k) {
    const double half = 0.5 * k * t;
    const double mid = base.theta + half;
    const double len = t * detail::sinc(half);
    return {base.q[0] - len * std::sin(mid), base.q[1] + len * std::cos(mid), base.theta + k * t};
}

// Pi(q, t) u (phi) = e^{-i omega (q1 cos(phi - phi0) + q2 sin(phi - phi0))} u(phi - t)
inline AngularSignal represent(double omega, double phi0, const GroupElement& g, const AngularSignal& u) {
    const auto r = rotate(u, g.theta);
    std::vector<cplx> v(r.values());
    for (int j = 0; j < r.size(); ++j) {
        const double a = r.phi(j) - phi0;
        v[j] *= std::polar(1.0, -omega * (g.q[0] * std::cos(a) + g.q[1] * std::sin(a)));
    }
    return AngularSignal(std::move(v));
}

struct FiducialState {
    double lambda;
    double omega;
    double phi0;
    AngularSignal signal;
};

// log N with N = j0(-2 i lambda omega)^{-1/2}
inline double log_fiducial_norm(double lambda_omega) { return -0.5 * log_bessel_j0_imag(2.0 * lambda_omega); }

inline FiducialState fiducial(double lambda, double omega, double phi0, int n_phi = 128) {
    if (lambda < 0 || !(omega > 0)) throw std::invalid_argument("fiducial: need lambda >= 0 and omega > 0");
    const double lo = lambda * omega;
    if (2.0 * lo > 700.0) throw std::range_error("fiducial: lambda*omega beyond the bessel_j0 overflow range");
    const double log_n = log_fiducial_norm(lo);
    auto s = AngularSignal::sample(n_phi, [&](double phi) { return std::exp(lo * std::cos(phi - phi0) + log_n); });
    return {lambda, omega, phi0, std::move(s)};
}

// The algebra operators in their usual form: i omega sin(phi - phi0) and d/dphi. (The derivatives of
// represent() along exp_flow are their negatives.)
inline AngularSignal algebra_x1(double omega, double phi0, const AngularSignal& u) {
    std::vector<cplx> v(u.values());
    for (int j = 0; j < u.size(); ++j) v[j] *= cplx(0, omega * std::sin(u.phi(j) - phi0));
    return AngularSignal(std::move(v));
}

inline AngularSignal algebra_x2(const AngularSignal& u) { return spectral_derivative(u); }

// || (d/dphi + lambda omega sin(phi - phi0)) s ||
inline double uncertainty_residual(const AngularSignal& s, double lambda_omega, double phi0) {
    const auto d = spectral_derivative(s);
    std::vector<cplx> r(d.values());
    for (int j = 0; j < s.size(); ++j) r[j] += lambda_omega * std::sin(s.phi(j) - phi0) * s[j];
    return norm(AngularSignal(std::move(r)));
}

inline double uncertainty_residual(const FiducialState& f) {
    return uncertainty_residual(f.signal, f.lambda * f.omega, f.phi0);
}

}  // namespace se2cs
