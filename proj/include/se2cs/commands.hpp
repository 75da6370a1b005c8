// Command implementations behind the se2cs executable: run configuration, the
// verification suites and the generators. Kept free of argument parsing so that
// tests can drive them directly.
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "se2cs.hpp"

namespace se2cs::cli {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Tolerances {
    double isometry = 1e-10;
    double two_route = 1e-12;
    double linearity = 1e-12;
    double inversion = 1e-3;
    double cr = 2e-2;
    double cr_fine = 1e-2;
    double cr_order_lo = 3.5;
    double cr_order_hi = 4.5;
    double cr_noise = 0.5;
    double membership = 5e-2;
    double uncertainty = 1e-8;
    double homomorphism = 1e-10;
    double gabor = 1e-8;
    double holomorphy = 5e-3;
    double holomorphy_control = 0.1;
    double cr_restriction = 5e-2;
    double bridge = 5e-2;
    double bridge_scale = 2e-2;
    double diagram = 5e-2;
    double activity_route = 1e-9;
    double symmetry = 1e-10;
    double color = 1e-10;
    double v_corr = 0.99;
    double emp_corr = 0.99;
    double ring_fraction = 0.8;
};

struct RunConfig {
    int n = 256;
    double h = 1.0;
    double ring_bins = 16;
    double lambda_omega = 1.0;
    double sigma = 8.0;                   // in units of h
    std::optional<double> omega;          // overrides ring_bins when set
    std::optional<double> p;              // |p| for bridge checks; defaults to omega
    std::optional<std::uint64_t> seed;
    int n_phi = 256;
    int n_theta = 64;
    int n_alpha = 16;
    double rel_width = 0.15;
    std::vector<double> theta_deg{0.0, 90.0};
    std::string out;
    std::string raw;
    std::string in;
    Tolerances tol;

    Grid grid() const { return Grid{n, h}; }
    double omega_value() const { return omega ? *omega : grid().omega_for_bins(ring_bins); }
    double lambda() const { return lambda_omega / omega_value(); }
    double p_value() const { return p ? *p : omega_value(); }
    double sigma_value() const { return sigma * h; }
    std::uint64_t seed_or(std::uint64_t fallback) const { return seed ? *seed : fallback; }

    // Re-validates every module invariant the commands rely on.
    void validate() const {
        if (n < 32 || (n & (n - 1)) != 0) throw ConfigError("n: grid size must be a power of two >= 32, got " + std::to_string(n));
        if (!(h > 0)) throw ConfigError("spacing: grid spacing h must be positive");
        const double r = grid().ring_bins(omega_value());
        if (!(omega_value() > 0) || r < 2.0 || r > n / 2 - 2.0)
            throw ConfigError("ring radius " + io::format_double(r) + " bins outside resolvable band [2, " +
                              std::to_string(n / 2 - 2) + "] (ring-bins / omega)");
        if (n_phi < 32 || n_phi % 4 != 0) throw ConfigError("n-phi must be a multiple of 4 and >= 32, got " + std::to_string(n_phi));
        if (n_theta < 8 || n_theta % 4 != 0)
            throw ConfigError("n-theta must be a multiple of 4 and >= 8 (theta + pi/2 must be a grid point), got " +
                              std::to_string(n_theta));
        if (n_alpha < 8) throw ConfigError("n-alpha must be >= 8, got " + std::to_string(n_alpha));
        if (!(lambda_omega >= 0) || 2 * lambda_omega > 700) throw ConfigError("lambda-omega must lie in [0, 350]");
        if (!(sigma >= 4.0) || sigma * h > n * h / 8.0)
            throw ConfigError("sigma must lie in [4, N/8] grid units (Gabor envelope resolvable and untruncated)");
        if (p && !(*p > 0)) throw ConfigError("p must be positive");
        if (!(rel_width > 0 && rel_width <= 0.5)) throw ConfigError("rel-width must lie in (0, 0.5]");
        if (2.0 * sigma_value() * sigma_value() * p_value() * omega_value() > 700)
            throw ConfigError("sigma^2 |p| omega beyond the bessel_j0 overflow range");
    }
};

enum class Check { le, ge, range, info };

struct Row {
    std::string name;
    double value;
    Check check;
    double lo = 0;  // tolerance (le / ge) or lower bound (range)
    double hi = 0;

    bool pass() const {
        switch (check) {
            case Check::le: return value <= lo;
            case Check::ge: return value >= lo;
            case Check::range: return value >= lo && value <= hi;
            default: return true;
        }
    }
    std::string tolerance() const {
        char buf[64];
        switch (check) {
            case Check::le: std::snprintf(buf, sizeof buf, "<= %.3e", lo); break;
            case Check::ge: std::snprintf(buf, sizeof buf, ">= %.3e", lo); break;
            case Check::range: std::snprintf(buf, sizeof buf, "[%.3g, %.3g]", lo, hi); break;
            default: std::snprintf(buf, sizeof buf, "-"); break;
        }
        return buf;
    }
    std::string status() const { return check == Check::info ? "INFO" : (pass() ? "PASS" : "FAIL"); }
};

inline void print_table(std::ostream& os, const std::vector<Row>& rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-52s %14s %22s  %6s\n", "property", "value", "tolerance", "result");
    os << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-52s %14.6e %22s  %6s\n", r.name.c_str(), r.value, r.tolerance().c_str(),
                      r.status().c_str());
        os << buf;
    }
}

inline bool all_pass(const std::vector<Row>& rows) {
    return std::all_of(rows.begin(), rows.end(), [](const Row& r) { return r.pass(); });
}

// ---------------------------------------------------------------- test data

// sum_{|m| <= order} c_m e^{i m phi}, c_m complex normal.
inline AngularSignal random_bandlimited(int n_phi, int order, Rng& rng) {
    std::vector<cplx> c(std::size_t(2 * order + 1));
    for (auto& x : c) x = cplx(rng.normal(), rng.normal());
    return AngularSignal::sample(n_phi, [&](double p) {
        cplx acc = 0;
        for (int m = -order; m <= order; ++m) acc += c[std::size_t(m + order)] * std::exp(cplx(0, m * p));
        return acc;
    });
}

inline Field2D white_noise(Grid g, Rng& rng) {
    Field2D f(g);
    for (auto& x : f.values()) x = cplx(rng.normal(), rng.normal());
    return f;
}

inline double max_abs_diff(const Field2D& a, const Field2D& b) {
    double m = 0;
    for (std::size_t k = 0; k < a.values().size(); ++k) m = std::max(m, std::abs(a.values()[k] - b.values()[k]));
    return m;
}

// max |a - b| / max |b|
inline double max_relative_diff(const Field2D& a, const Field2D& b) {
    const double d = max_abs_diff(a, b), s = max_abs(b);
    return s > 0 ? d / s : d;
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---------------------------------------------------------------- properties

// Battery: 11 single harmonics e^{i m phi}, m = 0..10, and 9 random combinations up to order 10.
inline std::vector<AngularSignal> isometry_battery(int n_phi, std::uint64_t seed) {
    std::vector<AngularSignal> b;
    for (int m = 0; m <= 10; ++m) b.push_back(AngularSignal::sample(n_phi, [m](double p) { return std::exp(cplx(0, m * p)); }));
    Rng rng(seed);
    for (int k = 0; k < 9; ++k) b.push_back(random_bandlimited(n_phi, 1 + k, rng));
    return b;
}

inline double isometry_battery_defect(std::uint64_t seed, double omega, int n_phi = 64, int n_theta = 64) {
    double worst = 0;
    for (const double lo : {0.5, 1.0, 2.0})
        for (const auto& phi : isometry_battery(n_phi, seed)) worst = std::max(worst, isometry_defect(phi, lo / omega, omega, n_theta));
    return worst;
}

// max over probes |F(q, theta) - <Pi(q, theta) u, Phi>| / max |F|
inline double two_route_defect(const SE2Field& f, const AngularSignal& phi, Rng& rng, int probes = 48) {
    const auto u = fiducial(f.lambda(), f.omega(), 0.0, phi.size()).signal;
    double worst = 0, scale = 0;
    for (int t = 0; t < f.n_theta(); ++t) scale = std::max(scale, max_abs(f.slice(t)));
    const Grid g = f.grid();
    for (int k = 0; k < probes; ++k) {
        const int i = int(rng.uniform() * g.n), j = int(rng.uniform() * g.n), t = int(rng.uniform() * f.n_theta());
        const GroupElement e(g.coord(i), g.coord(j), f.theta(t));
        const cplx direct = inner_product(represent(f.omega(), 0.0, e, u), phi);
        worst = std::max(worst, std::abs(direct - f.slice(t)(i, j)));
    }
    return scale > 0 ? worst / scale : worst;
}

// CR residuals of transform(fiducial) at (N=128, h=1) and (N=256, h=1/2), omega = 0.4, lambda omega = 1.
struct CrOrder {
    double coarse, fine, ratio;
};
inline CrOrder cr_order(int n_phi = 256, int n_theta = 64) {
    const double omega = 0.4, lambda = 1.0 / omega;
    const auto u = fiducial(lambda, omega, 0.0, n_phi).signal;
    const double a = cr_residual(transform(u, lambda, omega, Grid{128, 1.0}, n_theta));
    const double b = cr_residual(transform(u, lambda, omega, Grid{256, 0.5}, n_theta));
    return {a, b, a / b};
}

inline double homomorphism_defect(Rng& rng) {
    const double omega = 0.7;
    const auto u = random_bandlimited(128, 6, rng);
    double worst = 0;
    for (int k = 0; k < 5; ++k) {
        const GroupElement g1(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0, two_pi));
        const GroupElement g2(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0, two_pi));
        const auto lhs = represent(omega, 0.3, g1, represent(omega, 0.3, g2, u));
        const auto rhs = represent(omega, 0.3, compose(g1, g2), u);
        worst = std::max(worst, norm(lhs - rhs) / norm(u));
    }
    return worst;
}

// Direct quadrature <psi_{q,p}, f> against the FFT route at random lattice q.
inline double gabor_direct_defect(const Field2D& f, double sigma, std::array<double, 2> p, Rng& rng, int probes = 5) {
    const auto slice = gabor_analyze(f, sigma, p);
    const Grid g = f.grid();
    double worst = 0;
    for (int k = 0; k < probes; ++k) {
        const int i = int(rng.uniform() * g.n), j = int(rng.uniform() * g.n);
        const auto atom = GaborAtom{sigma, {i * g.h, j * g.h}, p}.realize(g);
        cplx acc = 0;
        for (std::size_t a = 0; a < atom.values().size(); ++a) acc += std::conj(atom.values()[a]) * f.values()[a];
        acc *= g.h * g.h;
        worst = std::max(worst, std::abs(acc - slice.values(i, j)) / std::max(max_abs(slice.values), 1e-300));
    }
    return worst;
}

// max_j | route(modelconstr)/2 - route(model) | / max | model |, at grid angles.
inline double activity_route_defect(const PhaseNoise& pn, double lambda, double omega, Grid g, int n_theta) {
    const auto f = coherent_field(pn, lambda, omega, g, n_theta);
    double worst = 0;
    for (const int t : {0, 3, n_theta / 8, n_theta / 4 + 1}) {
        const double th = f.theta(t);
        const auto a = activity_map(f, th) * cplx(0.5);
        const auto b = activity_map_direct(pn, lambda, omega, th, g);
        worst = std::max(worst, max_relative_diff(a, b));
    }
    return worst;
}

struct SymmetryDefects {
    double antisymmetry, periodicity;
};
inline SymmetryDefects stack_symmetries(const SE2Field& f) {
    SymmetryDefects d{0, 0};
    const int nt = f.n_theta();
    for (int t = 0; t < nt / 2; ++t) {
        const double th = f.theta(t);
        const auto a = activity_map(f, th);
        const double s = std::max(max_abs(a), 1e-300);
        d.antisymmetry = std::max(d.antisymmetry, max_abs_diff(activity_map(f, th + 0.5 * pi), a * cplx(-1.0)) / s);
        d.periodicity = std::max(d.periodicity, max_abs_diff(activity_map(f, th + pi), a) / s);
    }
    return d;
}

// Round trip on a random smooth orientation map (values in [0, pi)).
inline double color_round_trip_defect(Grid g, Rng& rng, int n_alpha) {
    OrientationMap om{g, 1.0, std::vector<double>(std::size_t(g.n) * g.n), std::vector<double>(std::size_t(g.n) * g.n, 1.0),
                      std::vector<std::uint8_t>(std::size_t(g.n) * g.n, 0)};
    for (auto& v : om.values) v = rng.uniform(0, pi);
    const auto back = orientation_from_activities(stack_from_orientation(om, n_alpha));
    double worst = 0;
    for (std::size_t k = 0; k < om.values.size(); ++k) worst = std::max(worst, orientation_distance(back.values[k], om.values[k]));
    return worst;
}

inline double v_cos2_correlation(double lambda_omega, int n = 256) {
    std::vector<double> v(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        v[j] = v_potential(two_pi * j / n, lambda_omega);
        c[j] = std::cos(2 * two_pi * j / n);
    }
    return correlation(v, c);
}

inline double opm_ring_fraction(std::uint64_t seed, const RunConfig& c) {
    const auto pn = sample_phases(seed, c.n_phi / 2);
    const auto om = model_opm(pn, c.lambda(), c.omega_value(), c.grid(), c.n_theta, c.n_alpha);
    return spectrum_ring_fraction(orientation_field(om), c.omega_value(), 0.15);
}

// ---------------------------------------------------------------- suites

inline std::vector<Row> bargmann_rows(const RunConfig& c) {
    std::vector<Row> rows;
    const Grid g = c.grid();
    const double omega = c.omega_value(), lambda = c.lambda();
    Rng rng(c.seed_or(1));

    rows.push_back({"isometry defect (20 signals x 3 lambda.omega)", isometry_battery_defect(c.seed_or(1), omega), Check::le, c.tol.isometry});

    const auto phi = random_bandlimited(c.n_phi, 6, rng);
    const auto phi2 = random_bandlimited(c.n_phi, 4, rng);
    const auto f = transform(phi, lambda, omega, g, c.n_theta);
    rows.push_back({"transform two-route equality", two_route_defect(f, phi, rng), Check::le, c.tol.two_route});

    {
        const cplx a(0.7, -1.3), b(-0.4, 0.2);
        const auto lhs = transform(phi * a + phi2 * b, lambda, omega, g, c.n_theta);
        const auto f2 = transform(phi2, lambda, omega, g, c.n_theta);
        double worst = 0, scale = 0;
        for (int t = 0; t < c.n_theta; ++t) {
            worst = std::max(worst, max_abs_diff(lhs.slice(t), f.slice(t) * a + f2.slice(t) * b));
            scale = std::max(scale, max_abs(lhs.slice(t)));
        }
        rows.push_back({"transform linearity", worst / scale, Check::le, c.tol.linearity});
    }

    {
        const auto back = inverse_transform(f, c.n_phi);
        rows.push_back({"inversion round trip (relative L2)", norm(back - phi) / norm(phi), Check::le, c.tol.inversion});
    }

    rows.push_back({"CR residual of transform (config grid)", cr_residual(f), Check::le, c.tol.cr});
    const auto order = cr_order(c.n_phi, c.n_theta);
    rows.push_back({"CR residual, omega h = 0.2 (N=256)", order.fine, Check::le, c.tol.cr_fine});
    rows.push_back({"CR second-order ratio under h-halving", order.ratio, Check::range, c.tol.cr_order_lo, c.tol.cr_order_hi});

    {
        SE2Field noise(Grid{128, 1.0}, c.n_theta, lambda, omega);
        for (int t = 0; t < c.n_theta; ++t) noise.slice(t) = white_noise(noise.grid(), rng);
        rows.push_back({"CR residual of white noise (negative control)", cr_residual(noise), Check::ge, c.tol.cr_noise});
    }

    {
        const auto m = membership_test(f, c.tol.membership);
        rows.push_back({"membership: min ring fraction of slices", m.min_ring_fraction, Check::ge, 1.0 - c.tol.membership});
    }
    return rows;
}

inline std::vector<Row> se2_rows(const RunConfig& c) {
    std::vector<Row> rows;
    Rng rng(c.seed_or(1) + 11);
    rows.push_back({"fiducial uncertainty residual (lambda.omega=1)", uncertainty_residual(fiducial(1.0, 1.0, 0.0, 128)), Check::le,
                    c.tol.uncertainty});
    rows.push_back({"representation homomorphism", homomorphism_defect(rng), Check::le, c.tol.homomorphism});
    return rows;
}

inline std::vector<Row> bridge_rows(const RunConfig& c) {
    std::vector<Row> rows;
    const Grid g = c.grid();
    const double omega = c.omega_value(), sigma = c.sigma_value(), p = c.p_value();
    Rng rng(c.seed_or(1) + 23);
    const auto f = random_packet_field(g, omega, c.seed_or(1) + 29);

    rows.push_back({"Gabor FFT route vs direct quadrature", gabor_direct_defect(f, sigma, {0.8 * omega, -0.3 * omega}, rng),
                    Check::le, c.tol.gabor});
    {
        // sigma = 4h and dp = one bin keep the centred p-difference error resolved.
        const Grid gh{128, c.h};
        const double s = 4.0 * c.h, p0 = 0.1 / c.h;
        const auto atom = GaborAtom{s, {3 * c.h, -2 * c.h}, {p0, 0.0}}.realize(gh);
        rows.push_back({"holomorphy residual (Gabor atom, N=128)", holomorphy_residual(atom, s, {0, {p0, 0.0}, gh.dk(), 3}),
                        Check::le, c.tol.holomorphy});
        const double pc = 0.5 / s;
        const auto atom2 = GaborAtom{s, {3 * c.h, -2 * c.h}, {pc, 0.0}}.realize(gh);
        rows.push_back({"holomorphy, unweighted F (negative control)",
                        holomorphy_residual(atom2, s, {0, {pc, 0.0}, gh.dk(), 3}, false), Check::ge, c.tol.holomorphy_control});
    }
    {
        const auto pn = sample_phases(c.seed_or(1) + 31, c.n_phi / 2);
        const auto img = random_wave_image(pn, omega, g);
        rows.push_back({"CR restriction residual (random waves, |p|=omega)", cr_restriction_residual(img, sigma, omega, c.n_theta),
                        Check::le, c.tol.cr_restriction});
    }
    const auto br = teo_bridge(f, sigma, omega, p, c.n_theta, c.n_phi);
    rows.push_back({"bridge defect (derived constant c)", br.defect, Check::le, c.tol.bridge});
    rows.push_back({"bridge |best-fit / derived c - 1|", std::abs(br.ratio_derived - 1.0), Check::le, c.tol.bridge_scale});
    rows.push_back({"bridge best-fit / closed form c without sigma^2", br.ratio_printed, Check::info});
    const auto dg = diagram(f, sigma, omega, p, 1.0, 8, c.n_phi);
    rows.push_back({"diagram defect (factor 1)", dg.defect, Check::le, c.tol.diagram});
    rows.push_back({"diagram best-fit route ratio (factor-2 form)", std::abs(dg.best_fit), Check::info});
    return rows;
}

inline std::vector<Row> cortex_rows(const RunConfig& c) {
    std::vector<Row> rows;
    const Grid g = c.grid();
    const double omega = c.omega_value(), lambda = c.lambda();
    const auto pn = sample_phases(c.seed_or(1), c.n_phi / 2);
    Rng rng(c.seed_or(1) + 41);

    rows.push_back({"activity route equality (factor 2)", activity_route_defect(pn, lambda, omega, g, c.n_theta), Check::le, c.tol.activity_route});
    const auto f = coherent_field(pn, lambda, omega, g, c.n_theta);
    const auto sym = stack_symmetries(f);
    rows.push_back({"activity antisymmetry A(t+pi/2) = -A(t)", sym.antisymmetry, Check::le, c.tol.symmetry});
    rows.push_back({"activity pi-periodicity A(t+pi) = A(t)", sym.periodicity, Check::le, c.tol.symmetry});
    rows.push_back({"color-coding round trip", color_round_trip_defect(Grid{64, 1.0}, rng, c.n_alpha), Check::le, c.tol.color});
    rows.push_back({"corr(V at lambda.omega=1, cos 2phi)", v_cos2_correlation(1.0), Check::ge, c.tol.v_corr});
    {
        const double th = pi / 5;
        const auto emp = empirical_activity(pn, omega, th, g);
        const auto dir = activity_map_direct(pn, 1.0 / omega, omega, th, g);
        rows.push_back({"corr(empirical, direct activity), lambda.omega=1", correlation(emp, dir), Check::ge, c.tol.emp_corr});
    }
    {
        std::vector<double> fr;
        for (std::uint64_t s = 0; s < 3; ++s) fr.push_back(opm_ring_fraction(c.seed_or(1) + s, c));
        rows.push_back({"OPM ring fraction, median of 3 seeds (w=0.15)", median(fr), Check::ge, c.tol.ring_fraction});
    }
    {
        const auto a = model_opm(pn, 0.8 / omega, omega, g, c.n_theta, c.n_alpha);
        const auto b = model_opm(pn, 1.2 / omega, omega, g, c.n_theta, c.n_alpha);
        std::vector<double> d(a.values.size());
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = orientation_distance(a.values[k], b.values[k]);
        rows.push_back({"OPM median |dtheta|, lambda.omega 0.8 vs 1.2", median(d), Check::info});
    }
    return rows;
}

// ---------------------------------------------------------------- commands

inline int run_suite(std::ostream& os, const RunConfig& c, const std::vector<std::vector<Row> (*)(const RunConfig&)>& parts,
                     const char* title) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows;
    for (auto part : parts) {
        auto r = part(c);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: N=%d R=%g omega=%.6g lambda.omega=%g sigma=%gh seed=%llu\n", title, c.n,
                  c.grid().ring_bins(c.omega_value()), c.omega_value(), c.lambda_omega, c.sigma,
                  static_cast<unsigned long long>(c.seed_or(1)));
    os << buf;
    print_table(os, rows);
    const bool ok = all_pass(rows);
    std::snprintf(buf, sizeof buf, "%zu properties, %s, %.1f s\n", rows.size(), ok ? "all passed" : "FAILURES", secs);
    os << buf;
    return ok ? 0 : 1;
}

inline int cmd_verify(const RunConfig& c, std::ostream& os) {
    c.validate();
    return run_suite(os, c, {se2_rows, bargmann_rows, bridge_rows, cortex_rows}, "verify");
}

inline int cmd_verify_bargmann(const RunConfig& c, std::ostream& os) {
    c.validate();
    return run_suite(os, c, {bargmann_rows}, "verify-bargmann");
}

// With c.raw set, also exports the phase-space slice B f(., p), p = (|p|, 0), of the test field as F2D1.
inline int cmd_verify_bridge(const RunConfig& c, std::ostream& os) {
    c.validate();
    const int rc = run_suite(os, c, {bridge_rows}, "verify-bridge");
    if (!c.raw.empty()) {
        const auto f = random_packet_field(c.grid(), c.omega_value(), c.seed_or(1) + 29);
        io::write_f2d(c.raw, bargmann_h2(f, c.sigma_value(), {c.p_value(), 0.0}).values, true);
        os << "wrote " << c.raw << "\n";
    }
    return rc;
}

inline std::uint64_t require_seed(const RunConfig& c) {
    if (!c.seed) throw ConfigError("seed is required for randomized outputs (--seed)");
    return *c.seed;
}

inline std::string seed_comment(const RunConfig& c) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "seed=%llu N=%d omega=%.17g lambda_omega=%.17g",
                  static_cast<unsigned long long>(*c.seed), c.n, c.omega_value(), c.lambda_omega);
    return buf;
}

inline int cmd_gen_opm(const RunConfig& c, std::ostream& os) {
    c.validate();
    const auto seed = require_seed(c);
    if (c.out.empty()) throw ConfigError("out: output path required");
    const auto pn = sample_phases(seed, c.n_phi / 2);
    const auto om = model_opm(pn, c.lambda(), c.omega_value(), c.grid(), c.n_theta, c.n_alpha);
    const auto z = orientation_field(om);
    std::vector<std::filesystem::path> written;
    try {
        io::write_ppm(c.out, c.n, c.n, orientation_rgb(om), seed_comment(c));
        written.push_back(c.out);
        if (!c.raw.empty()) io::write_f2d(c.raw, z, true);
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        throw;
    }
    const double frac = spectrum_ring_fraction(z, c.omega_value(), 0.15);
    char buf[256];
    std::snprintf(buf, sizeof buf, "gen-opm seed=%llu omega=%.6g lambda_omega=%g ring_fraction=%.4f out=%s\n",
                  static_cast<unsigned long long>(seed), c.omega_value(), c.lambda_omega, frac, c.out.c_str());
    os << buf;
    return 0;
}

// One PGM per angle (shared symmetric scaling) plus a contact-sheet PPM. c.out is the path prefix.
inline int cmd_gen_activity(const RunConfig& c, std::ostream& os) {
    c.validate();
    const auto seed = require_seed(c);
    if (c.out.empty()) throw ConfigError("out: output prefix required");
    if (c.theta_deg.empty()) throw ConfigError("theta: at least one angle required");
    const auto pn = sample_phases(seed, c.n_phi / 2);
    const auto f = coherent_field(pn, c.lambda(), c.omega_value(), c.grid(), c.n_theta);
    std::vector<Field2D> maps;
    double m = 0;
    for (double deg : c.theta_deg) {
        maps.push_back(activity_map(f, deg * pi / 180.0));
        m = std::max(m, max_abs(maps.back()));
    }
    if (m == 0) m = 1;
    std::vector<std::filesystem::path> written;
    const int n = c.n, k = int(maps.size());
    std::vector<std::uint8_t> sheet(std::size_t(n) * n * k * 3);
    try {
        for (int a = 0; a < k; ++a) {
            char name[64];
            std::snprintf(name, sizeof name, "_theta%g.pgm", c.theta_deg[a]);
            const std::filesystem::path p = c.out + name;
            io::write_pgm(p, maps[a], -m, m, seed_comment(c),
                          {{"seed", std::to_string(seed)}, {"theta_deg", io::format_double(c.theta_deg[a])}});
            written.push_back(p);
            written.push_back(std::filesystem::path(p.string() + ".meta"));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double t = (maps[a](i, j).real() + m) / (2 * m);
                    const auto v = std::uint8_t(std::lround(255.0 * std::clamp(t, 0.0, 1.0)));
                    const std::size_t px = (std::size_t(i) * n * k + std::size_t(a) * n + j) * 3;
                    sheet[px] = sheet[px + 1] = sheet[px + 2] = v;
                }
        }
        io::write_ppm(c.out + "_sheet.ppm", n * k, n, sheet, seed_comment(c));
    } catch (...) {
        std::error_code ec;
        for (const auto& p : written) std::filesystem::remove(p, ec);
        throw;
    }
    char buf[256];
    std::snprintf(buf, sizeof buf, "gen-activity seed=%llu omega=%.6g lambda_omega=%g maps=%d max_abs=%.6g prefix=%s\n",
                  static_cast<unsigned long long>(seed), c.omega_value(), c.lambda_omega, k, m, c.out.c_str());
    os << buf;
    return 0;
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& os) {
    if (c.in.empty()) throw ConfigError("in: input F2D1 path required");
    const auto f = io::read_f2d(c.in);
    RunConfig cc = c;
    cc.n = f.n();
    cc.h = f.h();
    cc.validate();
    const double frac = spectrum_ring_fraction(f, cc.omega_value(), c.rel_width);
    char buf[256];
    std::snprintf(buf, sizeof buf, "spectrum in=%s N=%d omega=%.6g rel_width=%g ring_fraction=%.6f\n", c.in.c_str(), f.n(),
                  cc.omega_value(), c.rel_width, frac);
    os << buf;
    return 0;
}

}  // namespace se2cs::cli
