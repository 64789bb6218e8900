// rng.hpp: deterministic random streams shared by all samplers.
//
// Every draw is built from mt19937_64 output through fixed arithmetic, so a
// given seed reproduces the same chain on any platform.  Substreams give
// replicates and parallel chains independent, reproducible generators.
#pragma once

#include <cstdint>
#include <random>

namespace sepqr {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    // Independent stream derived from this stream's seed and an index.
    RandomStream substream(std::uint64_t index) const;

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double uniform();

    // Standard normal via Box-Muller (cosine branch only, two uniforms per draw).
    double normal();

    double normal(double mean, double sd);

    // Gamma(shape, scale) by Marsaglia-Tsang; shape < 1 handled by the
    // boost-and-power identity in log space.
    double gamma(double shape, double scale = 1.0);

    double exponential(double rate);

    double beta(double a, double b);

    // 1 / Gamma(shape, rate): inverse gamma with density
    // rate^shape / Gamma(shape) x^{-shape-1} exp(-rate / x).
    double inverse_gamma(double shape, double rate);

    double student_t(double dof);

    // Inverse-CDF truncated normal on (lower, upper).
    double truncated_normal(double mean, double sd, double lower, double upper);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace sepqr
