#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "se2cs/commands.hpp"

using namespace se2cs;
using namespace se2cs::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / (std::string("se2cs_cmd_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunConfig small() {
    RunConfig c;
    c.n = 64;
    c.ring_bins = 8;
    c.n_phi = 64;
    c.n_theta = 16;
    c.seed = 3;
    return c;
}

std::string expect_config_error(const RunConfig& c) {
    try {
        c.validate();
    } catch (const ConfigError& e) {
        return e.what();
    }
    ADD_FAILURE() << "no ConfigError";
    return "";
}

}  // namespace

TEST(RunConfig, DefaultsValid) {
    RunConfig c;
    EXPECT_NO_THROW(c.validate());
    EXPECT_EQ(c.n, 256);
    EXPECT_EQ(c.ring_bins, 16);
    EXPECT_EQ(c.n_phi, 256);
    EXPECT_EQ(c.n_theta, 64);
    EXPECT_EQ(c.n_alpha, 16);
    EXPECT_NEAR(c.omega_value(), two_pi * 16 / 256, 1e-15);
    EXPECT_NEAR(c.lambda() * c.omega_value(), 1.0, 1e-15);
    EXPECT_FALSE(c.seed.has_value());
}

TEST(RunConfig, SpecificMessages) {
    RunConfig c;
    c.ring_bins = 1;
    EXPECT_NE(expect_config_error(c).find("ring radius"), std::string::npos);
    c = RunConfig{};
    c.n = 100;
    EXPECT_NE(expect_config_error(c).find("power of two"), std::string::npos);
    c = RunConfig{};
    c.n_theta = 18;
    EXPECT_NE(expect_config_error(c).find("n-theta"), std::string::npos);
    c = RunConfig{};
    c.sigma = 2;
    EXPECT_NE(expect_config_error(c).find("sigma"), std::string::npos);
    c = RunConfig{};
    c.n_alpha = 4;
    EXPECT_NE(expect_config_error(c).find("n-alpha"), std::string::npos);
    c = RunConfig{};
    c.rel_width = 0.9;
    EXPECT_NE(expect_config_error(c).find("rel-width"), std::string::npos);
    c = RunConfig{};
    c.omega = 3.2;  // 130 bins > N/2 - 2
    EXPECT_NE(expect_config_error(c).find("ring radius"), std::string::npos);
}

TEST(Row, Checks) {
    EXPECT_TRUE((Row{"a", 1e-11, Check::le, 1e-10}.pass()));
    EXPECT_FALSE((Row{"a", 1e-9, Check::le, 1e-10}.pass()));
    EXPECT_TRUE((Row{"a", 0.9, Check::ge, 0.5}.pass()));
    EXPECT_FALSE((Row{"a", 5.0, Check::range, 3.5, 4.5}.pass()));
    EXPECT_TRUE((Row{"a", 1e9, Check::info}.pass()));
    EXPECT_EQ((Row{"a", 1e9, Check::info}.status()), "INFO");
}

TEST(Table, FixedFormat) {
    std::ostringstream os;
    print_table(os, {{"alpha", 1.5e-11, Check::le, 1e-10}, {"beta", 0.2, Check::ge, 0.5}});
    std::istringstream is(os.str());
    std::string header, l1, l2;
    std::getline(is, header);
    std::getline(is, l1);
    std::getline(is, l2);
    EXPECT_EQ(header.size(), l1.size());
    EXPECT_EQ(l1.size(), l2.size());
    EXPECT_NE(l1.find("1.500000e-11"), std::string::npos);
    EXPECT_EQ(l1.substr(l1.size() - 4), "PASS");
    EXPECT_EQ(l2.substr(l2.size() - 4), "FAIL");
}

TEST(Helpers, Median) {
    EXPECT_EQ(median({3, 1, 2}), 2);
    EXPECT_EQ(median({4, 1, 2, 3}), 2.5);
}

TEST(Helpers, IsometryBattery) {
    const auto b = isometry_battery(64, 1);
    EXPECT_EQ(b.size(), 20u);
    EXPECT_LT(isometry_battery_defect(1, 1.0), 1e-10);
}

TEST(Helpers, ActivityRouteAndSymmetries) {
    const Grid g{64, 1.0};
    const double omega = g.omega_for_bins(8);
    const auto pn = sample_phases(2, 32);
    EXPECT_LT(activity_route_defect(pn, 1.0 / omega, omega, g, 16), 1e-9);
    const auto s = stack_symmetries(coherent_field(pn, 1.0 / omega, omega, g, 16));
    EXPECT_LT(s.antisymmetry, 1e-10);
    EXPECT_LT(s.periodicity, 1e-10);
    EXPECT_GT(v_cos2_correlation(1.0), 0.99);
}

TEST(Suites, SmallBargmannSuitePasses) {
    auto c = small();
    std::ostringstream os;
    const auto rows = bargmann_rows(c);
    EXPECT_GE(rows.size(), 8u);
    for (const auto& r : rows)
        if (r.name.find("CR residual of transform") == std::string::npos) EXPECT_TRUE(r.pass()) << r.name << " " << r.value;
}

TEST(Commands, VerifyTighteningFails) {
    auto c = small();
    c.tol.isometry = 1e-15;
    std::ostringstream os;
    EXPECT_EQ(cmd_verify_bargmann(c, os), 1);
    EXPECT_NE(os.str().find("FAIL"), std::string::npos);
}

TEST(Commands, ConfigErrorsThrow) {
    auto c = small();
    c.ring_bins = 1;
    std::ostringstream os;
    EXPECT_THROW(cmd_verify(c, os), ConfigError);
    c = small();
    c.seed.reset();
    c.out = "x.ppm";
    EXPECT_THROW(cmd_gen_opm(c, os), ConfigError);
}

TEST(Commands, GenOpmDeterministicAndRingStructured) {
    TempDir d;
    RunConfig c;
    c.seed = 42;
    c.out = (d.path / "a.ppm").string();
    c.raw = (d.path / "a.f2d").string();
    std::ostringstream os;
    ASSERT_EQ(cmd_gen_opm(c, os), 0);
    c.out = (d.path / "b.ppm").string();
    c.raw = (d.path / "b.f2d").string();
    ASSERT_EQ(cmd_gen_opm(c, os), 0);
    EXPECT_EQ(io::read_file(d.path / "a.ppm"), io::read_file(d.path / "b.ppm"));
    EXPECT_EQ(io::read_file(d.path / "a.f2d"), io::read_file(d.path / "b.f2d"));
    EXPECT_NE(os.str().find("seed=42"), std::string::npos);
    const auto img = io::read_pnm(d.path / "a.ppm");
    ASSERT_FALSE(img.comments.empty());
    EXPECT_NE(img.comments[0].find("seed=42"), std::string::npos);

    RunConfig s;
    s.in = c.raw;
    std::ostringstream so;
    ASSERT_EQ(cmd_spectrum(s, so), 0);
    const auto pos = so.str().find("ring_fraction=");
    ASSERT_NE(pos, std::string::npos);
    EXPECT_GE(std::stod(so.str().substr(pos + 14)), 0.8);
}

TEST(Commands, GenActivityOrthogonalAnglesAreNegated) {
    TempDir d;
    auto c = small();
    c.theta_deg = {20.0, 110.0};
    c.out = (d.path / "act").string();
    std::ostringstream os;
    ASSERT_EQ(cmd_gen_activity(c, os), 0);
    const auto a = io::read_pnm(d.path / "act_theta20.pgm"), b = io::read_pnm(d.path / "act_theta110.pgm");
    ASSERT_EQ(a.data.size(), b.data.size());
    int worst = 0;
    for (std::size_t k = 0; k < a.data.size(); k += 2) {
        const int va = (std::uint8_t(a.data[k]) << 8) | std::uint8_t(a.data[k + 1]);
        const int vb = (std::uint8_t(b.data[k]) << 8) | std::uint8_t(b.data[k + 1]);
        worst = std::max(worst, std::abs(va + vb - 65535));
    }
    EXPECT_LE(worst, 1);
    EXPECT_TRUE(fs::exists(d.path / "act_sheet.ppm"));
    EXPECT_EQ(io::read_meta(d.path / "act_theta20.pgm.meta").at("seed"), "3");
}

TEST(Commands, SpectrumNeedsInput) {
    RunConfig c;
    std::ostringstream os;
    EXPECT_THROW(cmd_spectrum(c, os), ConfigError);
    c.in = "/nonexistent/x.f2d";
    EXPECT_THROW(cmd_spectrum(c, os), std::runtime_error);
}
