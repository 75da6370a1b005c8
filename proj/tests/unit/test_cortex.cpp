#include <gtest/gtest.h>

#include <cmath>

#include "se2cs/cortex.hpp"

using namespace se2cs;

namespace {

const Grid kGrid{128, 1.0};
const double kOmega = kGrid.omega_for_bins(10);

PhaseNoise zero_phases(int n) { return PhaseNoise{0, std::vector<double>(std::size_t(n), 0.0)}; }

double max_diff(const Field2D& a, const Field2D& b) { return max_abs(a - b); }

}  // namespace

TEST(Phases, Deterministic) {
    const auto a = sample_phases(42, 64), b = sample_phases(42, 64);
    EXPECT_EQ(a.phases, b.phases);
    EXPECT_THROW(sample_phases(1, 8), std::invalid_argument);
}

TEST(Phases, UniformDeciles) {
    const auto pn = sample_phases(7, 1000000);
    std::vector<int> bins(10, 0);
    for (double p : pn.phases) {
        ASSERT_GE(p, 0.0);
        ASSERT_LT(p, two_pi);
        ++bins[std::size_t(std::min(9, int(p / two_pi * 10)))];
    }
    const double mean = 1e5, sd = std::sqrt(1e6 * 0.1 * 0.9);
    double chi2 = 0;
    for (int b : bins) {
        EXPECT_LT(std::abs(b - mean), 4 * sd);
        chi2 += (b - mean) * (b - mean) / mean;
    }
    EXPECT_LT(chi2, 27.9);  // chi-square, 9 dof, p = 0.001
}

TEST(Phases, SeedsDiffer) {
    const auto a = sample_phases(1, 1000), b = sample_phases(2, 1000);
    int same = 0;
    for (int j = 0; j < 1000; ++j) same += a.phases[j] == b.phases[j];
    EXPECT_LE(same, 10);
}

TEST(Phases, Extension) {
    const auto pn = sample_phases(3, 16);
    const auto e = extended(pn);
    ASSERT_EQ(e.size(), 32);
    for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(e[j + 16] - std::conj(e[j])), 0.0, 1e-15);
}

TEST(RandomWaves, ZeroPhasesAtOrigin) {
    const auto img = random_wave_image(zero_phases(64), kOmega, kGrid);
    EXPECT_NEAR(img(0, 0).real(), pi, 1e-13);
}

TEST(RandomWaves, RealAndRingConcentrated) {
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16);
    const auto img = random_wave_image(sample_phases(5, 128), omega, g);
    EXPECT_LT(max_abs_imag(img), 1e-13);
    EXPECT_GT(spectrum_ring_fraction(img, omega, 0.1), 0.9);
}

TEST(CoherentField, FlatFiducialIsThetaIndependent) {
    const auto f = coherent_field(sample_phases(2, 32), 0.0, kOmega, kGrid, 16);
    double var = 0;
    for (int t = 1; t < 16; ++t) var = std::max(var, max_diff(f.slice(t), f.slice(0)));
    EXPECT_LT(var, 1e-10);
    EXPECT_LT(max_abs(activity_map(f, 0.3)), 1e-10);
}

TEST(CoherentField, PassesMembership) {
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16);
    const auto m = membership_test(coherent_field(sample_phases(9, 128), 1.0 / omega, omega, g, 32), 5e-2);
    EXPECT_TRUE(m.pass) << m.min_ring_fraction << " " << m.cr;
}

TEST(CoherentField, LinearInAmplitudes) {
    const auto pn = zero_phases(32);
    const double lambda = 1.0 / kOmega;
    const auto f = coherent_field(pn, lambda, kOmega, kGrid, 8);
    const auto f2 = transform_scaled(extended(pn) * cplx(2.0), lambda, kOmega, kGrid, 8, -log_fiducial_norm(1.0));
    for (int t = 0; t < 8; ++t) EXPECT_LT(max_diff(f2.slice(t), f.slice(t) * cplx(2.0)), 1e-12 * max_abs(f.slice(t)));
}

TEST(VPotential, Values) {
    EXPECT_NEAR(v_potential(pi / 4, 1.3), 0.0, 1e-15);
    EXPECT_NEAR(v_potential(0.0, 1.0), std::cosh(1.0) - 1.0, 1e-15);
    EXPECT_NEAR(v_potential(0.0, 1.0), 0.543081, 1e-6);
    // series: cosh(a cos) - cosh(a sin) = sum_k a^{2k} (cos^{2k} - sin^{2k}) / (2k)!
    const double a = 1.0, ph = 0.3;
    double s = 0, fact = 1;
    for (int k = 1; k < 15; ++k) {
        fact *= (2 * k - 1) * (2 * k);
        s += std::pow(a, 2 * k) * (std::pow(std::cos(ph), 2 * k) - std::pow(std::sin(ph), 2 * k)) / fact;
    }
    EXPECT_NEAR(v_potential(ph, a), s, 1e-15);
    for (double p : {0.1, 0.7, 2.0}) EXPECT_NEAR(v_potential(p + pi / 2, 0.8), -v_potential(p, 0.8), 1e-15);
}

TEST(Activity, SymmetriesOfGeneratedStack) {
    const double lambda = 1.0 / kOmega;
    const auto f = coherent_field(sample_phases(4, 64), lambda, kOmega, kGrid, 32);
    for (int t = 0; t < 32; t += 3) {
        const auto a = activity_map(f, f.theta(t));
        const double s = max_abs(a);
        EXPECT_LT(max_diff(activity_map(f, f.theta(t) + pi / 2), a * cplx(-1.0)), 1e-10 * s);
        EXPECT_LT(max_diff(activity_map(f, f.theta(t) + pi), a), 1e-10 * s);
    }
    // off-grid angles go through theta interpolation and keep the symmetries
    const auto a = activity_map(f, 0.123);
    EXPECT_LT(max_diff(activity_map(f, 0.123 + pi / 2), a * cplx(-1.0)), 1e-10 * max_abs(a));
}

TEST(Activity, DirectRouteIsHalf) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto pn = sample_phases(seed, 64);
        const double lambda = 1.0 / kOmega;
        const auto f = coherent_field(pn, lambda, kOmega, kGrid, 32);
        for (int t : {0, 5, 11}) {
            const auto a = activity_map(f, f.theta(t)) * cplx(0.5);
            const auto b = activity_map_direct(pn, lambda, kOmega, f.theta(t), kGrid);
            EXPECT_LT(max_diff(a, b) / max_abs(b), 1e-9);
        }
    }
}

TEST(Activity, DirectDegenerateCases) {
    EXPECT_EQ(max_abs(activity_map_direct(sample_phases(1, 32), 0.0, kOmega, 0.4, kGrid)), 0.0);
    const auto a = activity_map_direct(zero_phases(64), 1.0 / kOmega, kOmega, 0.0, kGrid);
    EXPECT_NEAR(a(0, 0).real(), 0.0, 1e-13);
}

TEST(Activity, EmpiricalApproximatesModel) {
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16);
    const auto pn = sample_phases(12, 128);
    const auto emp = empirical_activity(pn, omega, 0.4, g);
    const auto dir = activity_map_direct(pn, 1.0 / omega, omega, 0.4, g);
    EXPECT_GT(correlation(emp, dir), 0.99);
    EXPECT_LT(max_diff(empirical_activity(pn, omega, 3 * pi / 4, g), empirical_activity(pn, omega, pi / 4, g) * cplx(-1.0)), 1e-12);
    EXPECT_NEAR(empirical_activity(zero_phases(64), omega, 0.0, g)(0, 0).real(), 0.0, 1e-13);
}

TEST(Orientation, RoundTripThroughActivities) {
    Rng rng(3);
    const Grid g{64, 1.0};
    OrientationMap om{g, 1.0, std::vector<double>(64 * 64), std::vector<double>(64 * 64, 1.0), std::vector<std::uint8_t>(64 * 64, 0)};
    for (auto& v : om.values) v = rng.uniform(0, pi);
    const auto back = orientation_from_activities(stack_from_orientation(om, 16));
    double worst = 0;
    for (std::size_t k = 0; k < om.values.size(); ++k) worst = std::max(worst, orientation_distance(back.values[k], om.values[k]));
    EXPECT_LT(worst, 1e-10);
    EXPECT_THROW(orientation_from_activities(stack_from_orientation(om, 4)), std::invalid_argument);
}

TEST(Orientation, ActivitiesAtPreferredAndOrthogonal) {
    const Grid g{32, 1.0};
    OrientationMap om{g, 1.0, std::vector<double>(32 * 32, 0.7), std::vector<double>(32 * 32, 1.0), std::vector<std::uint8_t>(32 * 32, 0)};
    EXPECT_NEAR(activities_from_orientation(om, 0.7)(3, 4).real(), 1.0, 1e-15);
    EXPECT_NEAR(activities_from_orientation(om, 0.7 + pi / 2)(3, 4).real(), -1.0, 1e-15);
}

TEST(Orientation, NegationShiftsByQuarterTurn) {
    const double lambda = 1.0 / kOmega;
    auto s = activity_stack(coherent_field(sample_phases(6, 64), lambda, kOmega, kGrid, 32), 16);
    const auto a = orientation_from_activities(s);
    for (auto& m : s.maps) m *= cplx(-1.0);
    const auto b = orientation_from_activities(s);
    double worst = 0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        if (!a.flagged[k]) worst = std::max(worst, orientation_distance(b.values[k], a.values[k] + pi / 2));
    EXPECT_LT(worst, 1e-12);
}

TEST(Orientation, ConstantStackIsAllFlagged) {
    ActivityStack s{std::vector<Field2D>(16, Field2D::sample(Grid{32, 1.0}, [](double x, double) { return cplx(1.0 + x); })), 0, 1};
    const auto om = orientation_from_activities(s);
    for (auto f : om.flagged) EXPECT_EQ(f, 1);
    for (auto c : om.confidence) EXPECT_EQ(c, 0.0);
}

TEST(Orientation, RandomPhaseRouteMatchesStackRoute) {
    const auto pn = sample_phases(8, 64);
    const auto a = orientation_random_phase(pn, kOmega, kGrid);
    const auto b = orientation_from_activities(empirical_stack(pn, kOmega, kGrid, 16));
    double worst = 0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        if (!a.flagged[k] && !b.flagged[k]) worst = std::max(worst, orientation_distance(a.values[k], b.values[k]));
    EXPECT_LT(worst, 0.05);
    const auto again = orientation_random_phase(pn, kOmega, kGrid);
    EXPECT_EQ(again.values, a.values);
}

TEST(Orientation, ModelMapRingFraction) {
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16);
    const auto om = model_opm(sample_phases(1, 128), 1.0 / omega, omega, g, 64, 16);
    EXPECT_GE(spectrum_ring_fraction(orientation_field(om), omega, 0.15), 0.8);
    EXPECT_GT(spectrum_ring_fraction(orientation_field(orientation_random_phase(sample_phases(1, 128), omega, g)), omega, 0.15), 0.8);
}

TEST(Orientation, Distance) {
    EXPECT_NEAR(orientation_distance(0.1, pi - 0.1), 0.2, 1e-15);
    EXPECT_NEAR(orientation_distance(0.0, pi / 2), pi / 2, 1e-15);
}

TEST(Correlation, Basics) {
    const std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8}, c{4, 3, 2, 1};
    EXPECT_NEAR(correlation(a, b), 1.0, 1e-15);
    EXPECT_NEAR(correlation(a, c), -1.0, 1e-15);
    EXPECT_THROW(correlation(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST(Color, HueAndValue) {
    const Grid g{32, 1.0};
    OrientationMap om{g, 1.0, std::vector<double>(32 * 32, 0.0), std::vector<double>(32 * 32, 1.0), std::vector<std::uint8_t>(32 * 32, 0)};
    om.values[1] = pi / 3;  // hue 1/3: green
    om.confidence[2] = 0.0;
    const auto rgb = orientation_rgb(om);
    EXPECT_EQ(rgb[0], 255);
    EXPECT_EQ(rgb[1], 0);
    EXPECT_EQ(rgb[2], 0);
    EXPECT_EQ(rgb[3], 0);
    EXPECT_EQ(rgb[4], 255);
    EXPECT_EQ(rgb[5], 0);
    EXPECT_EQ(rgb[6] + rgb[7] + rgb[8], 0);
}
