// Transform a band-limited circle function to SE(2) and back.
#include <cstdio>

#include "se2cs/se2cs.hpp"

using namespace se2cs;

int main() {
    const Grid g{256, 1.0};
    const double omega = g.omega_for_bins(16), lambda = 1.0 / omega;

    auto phi = AngularSignal::sample(256, [](double p) { return std::exp(cplx(0, 3 * p)) + 0.5 * std::cos(p); });
    const auto f = transform(phi, lambda, omega, g, 64);
    const auto back = inverse_transform(f, 256);

    std::printf("isometry defect     %.3e\n", isometry_defect(phi, lambda, omega, 64));
    std::printf("inversion error     %.3e\n", norm(back - phi) / norm(phi));
    std::printf("CR residual         %.3e\n", cr_residual(f));
    return 0;
}
