// Bit-reproducible randomness: std::mt19937_64 (fully specified by the standard) with
// explicit transforms instead of the implementation-defined std distributions.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace se2cs {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // [0, 1) with 53 random bits
    double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Box-Muller, one draw per call
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace se2cs
