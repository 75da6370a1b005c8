// Gabor analysis on R^2, the classical Bargmann transform and its bridge to the
// SE(2) transform at fixed |p|.
#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "bargmann.hpp"
#include "grid2d.hpp"
#include "rng.hpp"

namespace se2cs {

struct GaborAtom {
    double sigma;
    std::array<double, 2> q{0, 0};
    std::array<double, 2> p{0, 0};

    static double normalization(double sigma) { return 1.0 / (sigma * std::sqrt(pi)); }

    // M e^{i p.(x - q)} e^{-|x - q|^2 / 2 sigma^2}, x - q taken periodically.
    Field2D realize(Grid g) const {
        check(g);
        const double m = normalization(sigma), L = g.length();
        auto wrap = [L](double d) { return d - L * std::round(d / L); };
        Field2D out(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                const double d1 = wrap(i * g.h - q[0]), d2 = wrap(j * g.h - q[1]);
                out(i, j) = m * std::polar(std::exp(-(d1 * d1 + d2 * d2) / (2 * sigma * sigma)), p[0] * d1 + p[1] * d2);
            }
        return out;
    }

    void check(const Grid& g) const {
        if (!(sigma >= 4 * g.h - 1e-12 && sigma <= g.length() / 8 + 1e-12))
            throw std::invalid_argument("Gabor sigma " + std::to_string(sigma) + " outside resolvable range [4h, L/8] = [" +
                                        std::to_string(4 * g.h) + ", " + std::to_string(g.length() / 8) + "]");
    }
};

struct PhaseSpaceSlice {
    Field2D values;  // over q
    double sigma;
    std::array<double, 2> p;
};

// F(q, p) = <psi_{q,p}, f> for all lattice q by FFT correlation; the transform of f is reused
// across p.
class GaborAnalyzer {
public:
    GaborAnalyzer(const Field2D& f, double sigma) : g_(f.grid()), sigma_(sigma), fhat_(f.values()) {
        GaborAtom{sigma}.check(g_);
        fft::forward2(fhat_, g_.n);
    }

    PhaseSpaceSlice analyze(std::array<double, 2> p) const {
        const int n = g_.n;
        const double m = GaborAtom::normalization(sigma_) * g_.h * g_.h;
        std::vector<cplx> k(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double y1 = g_.coord(i), y2 = g_.coord(j);
                k[std::size_t(i) * n + j] = m * std::polar(std::exp(-(y1 * y1 + y2 * y2) / (2 * sigma_ * sigma_)), p[0] * y1 + p[1] * y2);
            }
        fft::forward2(k, n);
        const double inv = 1.0 / (double(n) * n);
        for (std::size_t a = 0; a < k.size(); ++a) k[a] *= fhat_[a] * inv;
        fft::backward2(k, n);
        return {Field2D(g_, std::move(k)), sigma_, p};
    }

    // e^{sigma^2 |p|^2 / 2} F(q, p)
    PhaseSpaceSlice bargmann(std::array<double, 2> p) const {
        auto s = analyze(p);
        s.values *= std::exp(0.5 * sigma_ * sigma_ * (p[0] * p[0] + p[1] * p[1]));
        return s;
    }

private:
    Grid g_;
    double sigma_;
    std::vector<cplx> fhat_;
};

inline PhaseSpaceSlice gabor_analyze(const Field2D& f, double sigma, std::array<double, 2> p) {
    return GaborAnalyzer(f, sigma).analyze(p);
}

inline PhaseSpaceSlice bargmann_h2(const Field2D& f, double sigma, std::array<double, 2> p) {
    return GaborAnalyzer(f, sigma).bargmann(p);
}

// (q1, p1) evaluation slice: q2 = lattice index q2_index, p = p_center + (k dp, 0), k = -(n_p/2)..
struct HolomorphySlice {
    int q2_index = 0;
    std::array<double, 2> p_center{0, 0};
    double dp = 0;
    int n_p = 3;
};

// Relative norm of (d/dp1 + i sigma^2 d/dq1) B f on the slice: centred differences in p, spectral
// derivative in q (the slice is periodic and band-limited in q), so the residual is O(dp^2).
// weighted = false evaluates the unweighted F(q, p) instead (negative control).
inline double holomorphy_residual(const Field2D& f, double sigma, const HolomorphySlice& sl, bool weighted = true) {
    if (sl.n_p < 3) throw std::invalid_argument("holomorphy_residual: need at least 3 p samples");
    if (!(sl.dp > 0)) throw std::invalid_argument("holomorphy_residual: dp must be positive");
    const Grid g = f.grid();
    const int n = g.n, j0 = ((sl.q2_index % n) + n) % n;
    GaborAnalyzer an(f, sigma);
    std::vector<std::vector<cplx>> rows;
    for (int k = 0; k < sl.n_p; ++k) {
        const std::array<double, 2> p{sl.p_center[0] + (k - sl.n_p / 2) * sl.dp, sl.p_center[1]};
        const auto s = weighted ? an.bargmann(p) : an.analyze(p);
        std::vector<cplx> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) row[i] = s.values(i, j0);
        rows.push_back(std::move(row));
    }
    double r2 = 0, dp2 = 0, dq2 = 0;
    for (int k = 1; k + 1 < sl.n_p; ++k) {
        std::vector<cplx> dq(rows[k]);
        fft::forward(dq);
        for (int m = 0; m < n; ++m) dq[m] *= m == n / 2 ? cplx(0) : cplx(0, g.dk() * fft::harmonic(m, n) / n);
        fft::backward(dq);
        for (int i = 0; i < n; ++i) {
            const cplx dp = (rows[k + 1][i] - rows[k - 1][i]) / (2 * sl.dp);
            r2 += std::norm(dp + cplx(0, sigma * sigma) * dq[i]);
            dp2 += std::norm(dp);
            dq2 += std::norm(dq[i]);
        }
    }
    const double den = std::sqrt(dp2) + sigma * sigma * std::sqrt(dq2);
    return den > 0 ? std::sqrt(r2) / den : 0.0;
}

// B^{H2} f over (q, theta) at fixed |p|, as an SE2Field with lambda = sigma^2 |p|.
inline SE2Field bargmann_ring_field(const Field2D& f, double sigma, double p_mag, int n_theta = 64) {
    SE2Field out(f.grid(), n_theta, sigma * sigma * p_mag, p_mag);
    GaborAnalyzer an(f, sigma);
    detail::parallel_for(n_theta, [&](int t) {
        const double th = out.theta(t);
        out.slice(t) = an.bargmann({p_mag * std::cos(th), p_mag * std::sin(th)}).values;
    });
    return out;
}

inline double cr_restriction_residual(const Field2D& f, double sigma, double p_mag, int n_theta = 64) {
    if (!(p_mag > 0)) throw std::invalid_argument("cr_restriction_residual: |p| must be positive");
    return cr_residual(bargmann_ring_field(f, sigma, p_mag, n_theta));
}

// Interior mask for comparisons between periodic (FFT) and literal routes.
inline std::vector<char> interior_mask(const Grid& g, double margin) {
    std::vector<char> m(static_cast<std::size_t>(g.n) * g.n);
    const double lim = g.length() / 2 - margin;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            m[std::size_t(i) * g.n + j] = std::abs(g.coord(i)) < lim && std::abs(g.coord(j)) < lim;
    return m;
}

struct BridgeReport {
    double defect = 0;           // relative L2 discrepancy after scaling by the derived c
    cplx best_fit = 0;           // least-squares scale between the routes
    double log_c_derived = 0;    // sigma sqrt(j0(-2i lambda omega)) / sqrt(pi) e^{-sigma^2 omega^2 / 2}
    double log_c_printed = 0;    // sqrt(j0(-2i lambda omega)) / (sigma sqrt(pi)) e^{-sigma^2 omega^2 / 2}
    double ratio_derived = 0;    // |best_fit| / c_derived
    double ratio_printed = 0;    // |best_fit| / c_printed
    bool log_scaled = false;
};

// B^{H2} f_Omega (q, p) versus c B_Omega^lambda [f^]^Omega (q, theta), lambda = sigma^2 |p|, p = |p| n(theta).
// Both routes are compared on the interior |q_i| < L/2 - 6 sigma. For sigma omega > 6 the routes are
// compared without the e^{sigma^2 |p|^2 / 2} weight, which is folded into the exponent of the SE(2) side.
inline BridgeReport teo_bridge(const Field2D& f, double sigma, double omega, double p_mag, int n_theta = 64,
                               int n_phi = 256) {
    const Grid g = f.grid();
    g.check_ring(omega);
    GaborAtom{sigma}.check(g);
    if (!(p_mag > 0)) throw std::invalid_argument("teo_bridge: |p| must be positive");
    BridgeReport rep;
    const double lambda = sigma * sigma * p_mag, lo = lambda * omega;
    rep.log_scaled = sigma * omega > 6.0;
    const double log_j0 = log_bessel_j0_imag(2.0 * lo);
    rep.log_c_derived = std::log(sigma) + 0.5 * log_j0 - 0.5 * std::log(pi) - 0.5 * sigma * sigma * omega * omega;
    rep.log_c_printed = rep.log_c_derived - 2.0 * std::log(sigma);

    const auto ring = ring_extract(f, omega, n_phi);
    const auto f_omega = ring_synthesize(ring, g);
    const double weight_log = 0.5 * sigma * sigma * p_mag * p_mag;
    const auto right = transform_scaled(ring.samples, lambda, omega, g, n_theta, rep.log_scaled ? -weight_log : 0.0);
    GaborAnalyzer an(f_omega, sigma);
    const auto mask = interior_mask(g, 6 * sigma);

    cplx rl = 0;
    double rr = 0, ll = 0;
    std::vector<Field2D> left(static_cast<std::size_t>(n_theta));
    detail::parallel_for(n_theta, [&](int t) {
        const double th = right.theta(t);
        const std::array<double, 2> p{p_mag * std::cos(th), p_mag * std::sin(th)};
        left[std::size_t(t)] = rep.log_scaled ? an.analyze(p).values : an.bargmann(p).values;
    });
    for (int t = 0; t < n_theta; ++t)
        for (std::size_t a = 0; a < mask.size(); ++a) {
            if (!mask[a]) continue;
            const cplx L = left[std::size_t(t)].values()[a], R = right.slice(t).values()[a];
            rl += std::conj(R) * L;
            rr += std::norm(R);
            ll += std::norm(L);
        }
    if (ll == 0) return rep;
    rep.best_fit = rr > 0 ? rl / rr : cplx(0);
    rep.ratio_derived = std::abs(rep.best_fit) * std::exp(-rep.log_c_derived);
    rep.ratio_printed = std::abs(rep.best_fit) * std::exp(-rep.log_c_printed);
    const double c = std::exp(rep.log_c_derived);
    double d2 = 0;
    for (int t = 0; t < n_theta; ++t)
        for (std::size_t a = 0; a < mask.size(); ++a)
            if (mask[a]) d2 += std::norm(left[std::size_t(t)].values()[a] - c * right.slice(t).values()[a]);
    rep.defect = std::sqrt(d2 / ll);
    return rep;
}

inline double teo_bridge_defect(const Field2D& f, double sigma, double omega, double p_mag, int n_theta = 64,
                                int n_phi = 256) {
    return teo_bridge(f, sigma, omega, p_mag, n_theta, n_phi).defect;
}

struct DiagramReport {
    double defect = 0;          // with the requested factor
    cplx best_fit = 0;          // least-squares ratio (P_Omega B f) / (B P_Omega f)
    double defect_at_best = 0;
};

// P_Omega applied in q to B^{H2} f (., p) versus factor x B^{H2} (P_Omega f)(., p), p = |p| n(theta_t).
inline DiagramReport diagram(const Field2D& f, double sigma, double omega, double p_mag, double factor = 2.0,
                             int n_theta = 8, int n_phi = 256) {
    const Grid g = f.grid();
    g.check_ring(omega);
    GaborAtom{sigma}.check(g);
    DiagramReport rep;
    GaborAnalyzer an_f(f, sigma), an_s(bessel_smooth(f, omega, n_phi), sigma);
    const auto mask = interior_mask(g, 6 * sigma);
    std::vector<Field2D> a(static_cast<std::size_t>(n_theta)), b(static_cast<std::size_t>(n_theta));
    detail::parallel_for(n_theta, [&](int t) {
        const double th = two_pi * t / n_theta;
        const std::array<double, 2> p{p_mag * std::cos(th), p_mag * std::sin(th)};
        a[std::size_t(t)] = bessel_smooth(an_f.bargmann(p).values, omega, n_phi);
        b[std::size_t(t)] = an_s.bargmann(p).values;
    });
    cplx ba = 0;
    double bb = 0, aa = 0;
    for (int t = 0; t < n_theta; ++t)
        for (std::size_t k = 0; k < mask.size(); ++k)
            if (mask[k]) {
                const cplx A = a[std::size_t(t)].values()[k], B = b[std::size_t(t)].values()[k];
                ba += std::conj(B) * A;
                bb += std::norm(B);
                aa += std::norm(A);
            }
    if (aa == 0) return rep;
    rep.best_fit = bb > 0 ? ba / bb : cplx(0);
    double d_f = 0, d_b = 0;
    for (int t = 0; t < n_theta; ++t)
        for (std::size_t k = 0; k < mask.size(); ++k)
            if (mask[k]) {
                const cplx A = a[std::size_t(t)].values()[k], B = b[std::size_t(t)].values()[k];
                d_f += std::norm(A - factor * B);
                d_b += std::norm(A - rep.best_fit * B);
            }
    rep.defect = std::sqrt(d_f / aa);
    rep.defect_at_best = std::sqrt(d_b / aa);
    return rep;
}

inline double diagram_defect(const Field2D& f, double sigma, double omega, double p_mag, double factor = 2.0,
                             int n_theta = 8, int n_phi = 256) {
    return diagram(f, sigma, omega, p_mag, factor, n_theta, n_phi).defect;
}

// Localised random test field: `count` Gaussian packets of width `width` centred in |x_i| < L/4,
// wavevectors with |k| in omega (1 +- 0.3), random complex amplitudes. Its spectrum is smooth
// on the scale of a bin, so ring sampling is accurate.
inline Field2D random_packet_field(Grid g, double omega, std::uint64_t seed, int count = 12, double width = 0) {
    g.validate();
    if (width <= 0) width = g.length() / 16;
    Rng rng(seed);
    Field2D out(g);
    for (int c = 0; c < count; ++c) {
        const double x0 = rng.uniform(-0.25, 0.25) * g.length(), y0 = rng.uniform(-0.25, 0.25) * g.length();
        const double kk = omega * rng.uniform(0.7, 1.3), ka = rng.uniform(0, two_pi);
        const cplx amp(rng.normal(), rng.normal());
        const double k1 = kk * std::cos(ka), k2 = kk * std::sin(ka);
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j) {
                const double d1 = g.coord(i) - x0, d2 = g.coord(j) - y0;
                out(i, j) += amp * std::polar(std::exp(-(d1 * d1 + d2 * d2) / (2 * width * width)), k1 * g.coord(i) + k2 * g.coord(j));
            }
    }
    return out;
}

}  // namespace se2cs
