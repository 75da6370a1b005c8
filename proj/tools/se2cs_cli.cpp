// se2cs: verification suites and figure generators.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "se2cs/commands.hpp"

namespace {

using se2cs::cli::RunConfig;

void add_grid_options(CLI::App* app, RunConfig& c) {
    app->add_option("--n", c.n, "grid size N (power of two)")->capture_default_str();
    app->add_option("--spacing", c.h, "grid spacing h")->capture_default_str();
    app->add_option("--ring-bins", c.ring_bins, "ring radius R in bins, omega = 2 pi R / L")->capture_default_str();
    app->add_option("--omega", c.omega, "ring frequency (overrides --ring-bins)");
    app->add_option("--lambda-omega", c.lambda_omega, "lambda * omega")->capture_default_str();
    app->add_option("--seed", c.seed, "random seed");
    app->add_option("--n-phi", c.n_phi, "angular samples")->capture_default_str();
    app->add_option("--n-theta", c.n_theta, "theta samples of SE(2) fields")->capture_default_str();
    app->add_option("--n-alpha", c.n_alpha, "orientations per activity stack")->capture_default_str();
}

void add_tolerances(CLI::App* app, se2cs::cli::Tolerances& t) {
    app->add_option("--tol-isometry", t.isometry)->capture_default_str();
    app->add_option("--tol-two-route", t.two_route)->capture_default_str();
    app->add_option("--tol-linearity", t.linearity)->capture_default_str();
    app->add_option("--tol-inversion", t.inversion)->capture_default_str();
    app->add_option("--tol-cr", t.cr)->capture_default_str();
    app->add_option("--tol-cr-fine", t.cr_fine)->capture_default_str();
    app->add_option("--tol-cr-noise", t.cr_noise, "lower bound for the white-noise control")->capture_default_str();
    app->add_option("--tol-membership", t.membership)->capture_default_str();
    app->add_option("--tol-uncertainty", t.uncertainty)->capture_default_str();
    app->add_option("--tol-homomorphism", t.homomorphism)->capture_default_str();
    app->add_option("--tol-gabor", t.gabor)->capture_default_str();
    app->add_option("--tol-holomorphy", t.holomorphy)->capture_default_str();
    app->add_option("--min-holomorphy-control", t.holomorphy_control)->capture_default_str();
    app->add_option("--tol-cr-restriction", t.cr_restriction)->capture_default_str();
    app->add_option("--tol-bridge", t.bridge)->capture_default_str();
    app->add_option("--tol-bridge-scale", t.bridge_scale)->capture_default_str();
    app->add_option("--tol-diagram", t.diagram)->capture_default_str();
    app->add_option("--tol-activity-route", t.activity_route)->capture_default_str();
    app->add_option("--tol-symmetry", t.symmetry)->capture_default_str();
    app->add_option("--tol-color", t.color)->capture_default_str();
    app->add_option("--min-v-corr", t.v_corr)->capture_default_str();
    app->add_option("--min-empirical-corr", t.emp_corr)->capture_default_str();
    app->add_option("--min-ring-fraction", t.ring_fraction)->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SE(2) coherent-state transforms and the V1 activity model"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file (flags override)");
    app.set_help_all_flag("--help-all", "help for every subcommand");

    // Options live on the top-level app and subcommands fall through to it, so plain
    // key=value config files apply to every subcommand.
    RunConfig c;
    add_grid_options(&app, c);
    app.add_option("--sigma", c.sigma, "Gabor width in units of h (bridge checks)")->capture_default_str();
    app.add_option("--p", c.p, "|p| for the bridge checks (default omega)");
    app.add_option("--theta", c.theta_deg, "gen-activity angles in degrees")->capture_default_str();
    app.add_option("--rel-width", c.rel_width, "spectrum annulus half-width relative to omega")->capture_default_str();
    app.add_option("--out", c.out, "output path (gen-opm) or prefix (gen-activity)");
    app.add_option("--raw", c.raw, "F2D1 export: e^{2 i theta(q)} (gen-opm) or a phase-space slice (verify-bridge)");
    app.add_option("--in", c.in, "F2D1 input (spectrum)");
    add_tolerances(&app, c.tol);

    int (*run)(const RunConfig&, std::ostream&) = nullptr;
    auto sub = [&](const char* name, const char* desc, int (*fn)(const RunConfig&, std::ostream&)) {
        auto* s = app.add_subcommand(name, desc)->fallthrough();
        s->callback([&run, fn] { run = fn; });
        return s;
    };
    sub("verify", "run every property suite", se2cs::cli::cmd_verify);
    sub("verify-bargmann", "isometry, inversion and CR properties of the SE(2) transform", se2cs::cli::cmd_verify_bargmann);
    sub("verify-bridge", "Gabor/Bargmann analysis against the SE(2) transform [--sigma --omega --p --seed --raw]",
        se2cs::cli::cmd_verify_bridge);
    sub("gen-opm", "orientation preference map as a color PPM [--seed --out --raw]", se2cs::cli::cmd_gen_opm);
    sub("gen-activity", "activity maps as PGMs plus a contact-sheet PPM [--seed --theta --out]",
        se2cs::cli::cmd_gen_activity);
    sub("spectrum", "ring fraction of an F2D1 field [--in --ring-bins|--omega --rel-width]", se2cs::cli::cmd_spectrum);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        return run(c, std::cout);
    } catch (const se2cs::cli::ConfigError& e) {
        std::cerr << "se2cs: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "se2cs: configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "se2cs: error: " << e.what() << "\n";
        return 1;
    }
}
