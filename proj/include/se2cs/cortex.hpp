// Generative model of V1 activity: random phases, random-wave images, coherent fields,
// activity maps and orientation preference maps.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bargmann.hpp"
#include "grid2d.hpp"
#include "rng.hpp"

namespace se2cs {

// Phases phi_j at angles pi j / n on [0, pi).
struct PhaseNoise {
    std::uint64_t seed = 0;
    std::vector<double> phases;

    int size() const { return int(phases.size()); }
    double angle(int j) const { return pi * j / size(); }
};

inline PhaseNoise sample_phases(std::uint64_t seed, int n) {
    if (n < 16) throw std::invalid_argument("sample_phases: n must be >= 16, got " + std::to_string(n));
    Rng rng(seed);
    PhaseNoise pn{seed, std::vector<double>(std::size_t(n))};
    for (auto& p : pn.phases) p = two_pi * rng.uniform();
    return pn;
}

// e^{i phi_phi} on [0, 2pi) with phi_{phi + pi} = -phi_phi (2n samples).
inline AngularSignal extended(const PhaseNoise& pn) {
    const int n = pn.size();
    std::vector<cplx> v(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
        v[j] = std::polar(1.0, pn.phases[j]);
        v[j + n] = std::polar(1.0, -pn.phases[j]);
    }
    return AngularSignal(std::move(v));
}

namespace detail {
inline std::vector<double> half_angles(const PhaseNoise& pn) {
    std::vector<double> a(static_cast<std::size_t>(pn.size()));
    for (int j = 0; j < pn.size(); ++j) a[j] = pn.angle(j);
    return a;
}

// Re sum_j (pi/n) kernel_j cos(omega n_j.x + phi_j)
template <class K>
Field2D half_ring_sum(const PhaseNoise& pn, double omega, Grid g, K&& kernel) {
    g.validate();
    g.check_ring(omega);
    const int n = pn.size();
    std::vector<cplx> c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) c[j] = (pi / n) * kernel(pn.angle(j)) * std::polar(1.0, pn.phases[j]);
    return real_part(PlaneWaveBasis(g, omega, half_angles(pn)).sum(c));
}
}  // namespace detail

// f(x) = int_0^pi cos(omega x.n(phi) + phi_phi) dphi
inline Field2D random_wave_image(const PhaseNoise& pn, double omega, Grid g) {
    return detail::half_ring_sum(pn, omega, g, [](double) { return 1.0; });
}

// F(q, theta) = int_0^{2pi} e^{i omega q.n(phi)} e^{lambda omega cos(phi - theta)} e^{i phi_phi} dphi,
// the transform of the extended phases without the fiducial normalisation N.
inline SE2Field coherent_field(const PhaseNoise& pn, double lambda, double omega, Grid g, int n_theta = 64) {
    return transform_scaled(extended(pn), lambda, omega, g, n_theta, -log_fiducial_norm(lambda * omega));
}

inline double v_potential(double phi, double lambda_omega) {
    return std::cosh(lambda_omega * std::cos(phi)) - std::cosh(lambda_omega * std::sin(phi));
}

// A_theta = Re(F(theta) - F(theta + pi/2))
inline Field2D activity_map(const SE2Field& f, double theta) {
    return real_part(theta_interpolate(f, theta) - theta_interpolate(f, theta + 0.5 * pi));
}

// A_theta(q) = int_0^pi cos(omega q.n(phi) + phi_phi) V(phi - theta) dphi
inline Field2D activity_map_direct(const PhaseNoise& pn, double lambda, double omega, double theta, Grid g) {
    const double lo = lambda * omega;
    return detail::half_ring_sum(pn, omega, g, [&](double a) { return v_potential(a - theta, lo); });
}

// A_alpha(q) = int_0^pi cos(omega q.n(phi) + phi_phi) cos(2 (phi - alpha)) dphi
inline Field2D empirical_activity(const PhaseNoise& pn, double omega, double alpha, Grid g) {
    return detail::half_ring_sum(pn, omega, g, [&](double a) { return std::cos(2 * (a - alpha)); });
}

struct ActivityStack {
    std::vector<Field2D> maps;  // alpha_j = pi j / n_alpha
    double lambda = 0;
    double omega = 0;

    int n_alpha() const { return int(maps.size()); }
    double alpha(int j) const { return pi * j / n_alpha(); }
};

inline ActivityStack activity_stack(const SE2Field& f, int n_alpha = 16) {
    ActivityStack s{std::vector<Field2D>(std::size_t(std::max(n_alpha, 0))), f.lambda(), f.omega()};
    detail::parallel_for(n_alpha, [&](int j) { s.maps[std::size_t(j)] = activity_map(f, pi * j / n_alpha); });
    return s;
}

inline ActivityStack empirical_stack(const PhaseNoise& pn, double omega, Grid g, int n_alpha = 16) {
    ActivityStack s{std::vector<Field2D>(std::size_t(std::max(n_alpha, 0))), 0.0, omega};
    detail::parallel_for(n_alpha, [&](int j) { s.maps[std::size_t(j)] = empirical_activity(pn, omega, pi * j / n_alpha, g); });
    return s;
}

struct OrientationMap {
    Grid grid;
    double omega = 0;
    std::vector<double> values;        // [0, pi)
    std::vector<double> confidence;    // |resultant| / max |resultant|
    std::vector<std::uint8_t> flagged; // zero resultant (pinwheel centres, degenerate input)

    double operator()(int i, int j) const { return values[std::size_t(i) * grid.n + j]; }
};

namespace detail {
// theta = arg(z) / 2 mod pi, flag |z| <= 1e-10 scale.
inline OrientationMap orientation_from_resultant(Grid g, double omega, const std::vector<cplx>& z,
                                                 const std::vector<double>& scale) {
    OrientationMap om{g, omega, std::vector<double>(z.size()), std::vector<double>(z.size()),
                      std::vector<std::uint8_t>(z.size())};
    double zmax = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double m = std::abs(z[k]);
        if (m <= 1e-10 * scale[k] || m == 0) {
            om.flagged[k] = 1;
            continue;
        }
        double th = 0.5 * std::arg(z[k]);
        if (th < 0) th += pi;
        if (th >= pi) th -= pi;
        om.values[k] = th;
        zmax = std::max(zmax, m);
    }
    for (std::size_t k = 0; k < z.size(); ++k)
        om.confidence[k] = (om.flagged[k] || zmax == 0) ? 0.0 : std::abs(z[k]) / zmax;
    return om;
}
}  // namespace detail

// theta(q) = 1/2 arg int_0^pi e^{2 i alpha} A_alpha(q) dalpha
inline OrientationMap orientation_from_activities(const ActivityStack& s) {
    if (s.n_alpha() < 8) throw std::invalid_argument("orientation_from_activities: need n_alpha >= 8");
    const Grid g = s.maps.front().grid();
    const std::size_t np = s.maps.front().values().size();
    std::vector<cplx> z(np, cplx(0));
    std::vector<double> scale(np, 0.0);
    const double w = pi / s.n_alpha();
    for (int j = 0; j < s.n_alpha(); ++j) {
        const cplx e = std::polar(w, 2 * s.alpha(j));
        const auto& m = s.maps[std::size_t(j)].values();
        for (std::size_t k = 0; k < np; ++k) {
            z[k] += e * m[k].real();
            scale[k] += w * std::abs(m[k].real());
        }
    }
    return detail::orientation_from_resultant(g, s.omega, z, scale);
}

// A_alpha(q) = Re(e^{-2 i alpha} e^{2 i theta(q)}) = cos(2 (theta - alpha))
inline Field2D activities_from_orientation(const OrientationMap& om, double alpha) {
    Field2D out(om.grid);
    for (std::size_t k = 0; k < om.values.size(); ++k) out.values()[k] = std::cos(2 * (om.values[k] - alpha));
    return out;
}

inline ActivityStack stack_from_orientation(const OrientationMap& om, int n_alpha = 16) {
    ActivityStack s{{}, 0.0, om.omega};
    for (int j = 0; j < n_alpha; ++j) s.maps.push_back(activities_from_orientation(om, pi * j / n_alpha));
    return s;
}

// theta(q) = 1/2 arg int_0^pi e^{2 i phi} cos(omega q.n(phi) + phi_phi) dphi. The cosine is split
// into e^{+i...} over the directions phi and e^{-i...} over the opposite directions phi + pi.
inline OrientationMap orientation_random_phase(const PhaseNoise& pn, double omega, Grid g) {
    g.validate();
    g.check_ring(omega);
    const int n = pn.size();
    std::vector<double> ang(static_cast<std::size_t>(2 * n));
    std::vector<cplx> c(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) {
        ang[j] = pn.angle(j);
        ang[j + n] = pn.angle(j) + pi;
        c[j] = (pi / (2.0 * n)) * std::polar(1.0, 2 * pn.angle(j) + pn.phases[j]);
        c[j + n] = (pi / (2.0 * n)) * std::polar(1.0, 2 * pn.angle(j) - pn.phases[j]);
    }
    const auto z = PlaneWaveBasis(g, omega, ang).sum(c);
    const auto img = random_wave_image(pn, omega, g);
    std::vector<double> scale(z.values().size());
    for (std::size_t k = 0; k < scale.size(); ++k) scale[k] = std::max(std::abs(img.values()[k]), pi / n);
    return detail::orientation_from_resultant(g, omega, z.values(), scale);
}

// e^{2 i theta(q)}
inline Field2D orientation_field(const OrientationMap& om) {
    Field2D out(om.grid);
    for (std::size_t k = 0; k < om.values.size(); ++k) out.values()[k] = std::polar(1.0, 2 * om.values[k]);
    return out;
}

// Smallest angle between orientations (mod pi).
inline double orientation_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), pi);
    return std::min(d, pi - d);
}

// Model OPM: coherent field -> activity stack -> vector sum.
inline OrientationMap model_opm(const PhaseNoise& pn, double lambda, double omega, Grid g, int n_theta = 64,
                                int n_alpha = 16) {
    return orientation_from_activities(activity_stack(coherent_field(pn, lambda, omega, g, n_theta), n_alpha));
}

// Pearson correlation of real parts.
inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.empty()) throw std::invalid_argument("correlation: size mismatch");
    double ma = 0, mb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= double(a.size());
    mb /= double(b.size());
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ab += (a[k] - ma) * (b[k] - mb);
        aa += (a[k] - ma) * (a[k] - ma);
        bb += (b[k] - mb) * (b[k] - mb);
    }
    return (aa > 0 && bb > 0) ? ab / std::sqrt(aa * bb) : 0.0;
}

inline double correlation(const Field2D& a, const Field2D& b) {
    std::vector<double> x(a.values().size()), y(b.values().size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = a.values()[k].real();
    for (std::size_t k = 0; k < y.size(); ++k) y[k] = b.values()[k].real();
    return correlation(x, y);
}

// Hue = theta / pi around the colour circle, full saturation, value = confidence. RGB, row-major.
inline std::vector<std::uint8_t> orientation_rgb(const OrientationMap& om) {
    std::vector<std::uint8_t> rgb(om.values.size() * 3);
    for (std::size_t k = 0; k < om.values.size(); ++k) {
        const double hue = om.values[k] / pi * 6.0, v = om.confidence[k];
        const int sector = int(hue) % 6;
        const double f = hue - std::floor(hue);
        std::array<double, 3> c{};
        switch (sector) {
            case 0: c = {1, f, 0}; break;
            case 1: c = {1 - f, 1, 0}; break;
            case 2: c = {0, 1, f}; break;
            case 3: c = {0, 1 - f, 1}; break;
            case 4: c = {f, 0, 1}; break;
            default: c = {1, 0, 1 - f}; break;
        }
        for (int ch = 0; ch < 3; ++ch) rgb[3 * k + ch] = std::uint8_t(std::lround(255.0 * v * c[ch]));
    }
    return rgb;
}

}  // namespace se2cs
