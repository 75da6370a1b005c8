// Model orientation preference map from random phases; writes opm.ppm.
#include <cstdio>
#include <cstdlib>

#include "se2cs/se2cs.hpp"

using namespace se2cs;

int main(int argc, char** argv) {
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 42;
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16);

    const auto pn = sample_phases(seed, 128);
    const auto om = model_opm(pn, 1.0 / omega, omega, g);
    io::write_ppm("opm.ppm", g.n, g.n, orientation_rgb(om), "seed=" + std::to_string(seed));

    std::size_t pinwheels = 0;
    for (auto f : om.flagged) pinwheels += f;
    std::printf("seed %llu: ring fraction %.3f, %zu flagged pixels -> opm.ppm\n", static_cast<unsigned long long>(seed),
                spectrum_ring_fraction(orientation_field(om), omega, 0.15), pinwheels);
    return 0;
}
