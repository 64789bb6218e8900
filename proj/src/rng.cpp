#include "sepqr/rng.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace sepqr {

namespace {

// splitmix64, used only to spread seeds for substreams.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double normal_quantile(double p) {
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RandomStream RandomStream::substream(std::uint64_t index) const {
    return RandomStream(mix64(seed_ ^ mix64(index + 0x51ed270b9f112b35ULL)));
}

double RandomStream::uniform() {
    const std::uint64_t bits = engine_() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RandomStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double RandomStream::normal(double mean, double sd) {
    return mean + sd * normal();
}

double RandomStream::gamma(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw std::invalid_argument("gamma: shape and scale must be positive");
    }
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a + 1) * U^{1/a}; combine in log space so tiny
        // shapes underflow to 0 gracefully instead of producing NaN.
        const double g = gamma(shape + 1.0, 1.0);
        const double u = uniform();
        return scale * std::exp(std::log(g) + std::log(u) / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return scale * d * v;
        }
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return scale * d * v;
        }
    }
}

double RandomStream::exponential(double rate) {
    if (!(rate > 0.0)) {
        throw std::invalid_argument("exponential: rate must be positive");
    }
    return -std::log(uniform()) / rate;
}

double RandomStream::beta(double a, double b) {
    const double x = gamma(a, 1.0);
    const double y = gamma(b, 1.0);
    return x / (x + y);
}

double RandomStream::inverse_gamma(double shape, double rate) {
    return 1.0 / gamma(shape, 1.0 / rate);
}

double RandomStream::student_t(double dof) {
    if (!(dof > 0.0)) {
        throw std::invalid_argument("student_t: dof must be positive");
    }
    const double z = normal();
    const double v = gamma(0.5 * dof, 2.0);
    return z / std::sqrt(v / dof);
}

double RandomStream::truncated_normal(double mean, double sd, double lower, double upper) {
    if (!(sd > 0.0) || !(lower < upper)) {
        throw std::invalid_argument("truncated_normal: need sd > 0 and lower < upper");
    }
    const double plo = normal_cdf((lower - mean) / sd);
    const double phi = normal_cdf((upper - mean) / sd);
    const double u = uniform();
    const double p = plo + u * (phi - plo);
    double x = mean + sd * normal_quantile(p);
    // Inverse-CDF rounding can land exactly on a bound when the window is in
    // a far tail; nudge inside so callers can rely on the open interval.
    if (x <= lower) x = std::nextafter(lower, upper);
    if (x >= upper) x = std::nextafter(upper, lower);
    return x;
}

}  // namespace sepqr
