#include "sepqr/gig.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sepqr {

namespace {

// Mode of the two-parameter kernel z^{lambda-1} exp{-omega (z + 1/z) / 2};
// the lambda < 1 form avoids cancellation.
double gig_mode(double lambda, double omega) {
    if (lambda >= 1.0) {
        return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) + (lambda - 1.0)) / omega;
    }
    return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) + (1.0 - lambda));
}

// Ratio-of-uniforms without mode shift; valid for lambda >= 1 or moderate omega.
double gig_rou_noshift(double lambda, double omega, RandomStream& rng) {
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = gig_mode(lambda, omega);
    const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
    const double ym = (std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega) + (lambda + 1.0)) / omega;
    const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);
    for (;;) {
        const double u = um * rng.uniform();
        const double v = rng.uniform();
        const double x = u / v;
        if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) {
            return x;
        }
    }
}

// Ratio-of-uniforms with the region shifted to the mode; needed once lambda or
// omega grows, where the unshifted region becomes too thin.
double gig_rou_shift(double lambda, double omega, RandomStream& rng) {
    const double t = 0.5 * (lambda - 1.0);
    const double s = 0.25 * omega;
    const double xm = gig_mode(lambda, omega);
    const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

    // Bounding rectangle in u: roots of x^3 + a x^2 + b x + c, the stationary
    // points of (x - xm)^2 * kernel(x).
    const double a = -2.0 * (lambda + 1.0) / omega - xm;
    const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
    const double c = xm;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const double fi = std::acos(-q / (2.0 * std::sqrt(-p * p * p / 27.0)));
    const double fak = 2.0 * std::sqrt(-p / 3.0);
    const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
    const double y2 = fak * std::cos(fi / 3.0 + 4.0 * M_PI / 3.0) - a / 3.0;

    const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
    const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

    for (;;) {
        const double u = uminus + rng.uniform() * (uplus - uminus);
        const double v = rng.uniform();
        const double x = u / v + xm;
        if (x > 0.0 && std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) {
            return x;
        }
    }
}

// Three-piece hat (constant, x^{lambda-1}, exponential tail) for
// 0 <= lambda < 1 with small omega, where ratio-of-uniforms degenerates.
double gig_three_piece(double lambda, double omega, RandomStream& rng) {
    const double xm = gig_mode(lambda, omega);
    const double x0 = omega / (1.0 - lambda);

    const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
    const double a0 = k0 * x0;

    double k1;
    double a1;
    double k2;
    double a2;
    if (x0 >= 2.0 / omega) {
        k1 = 0.0;
        a1 = 0.0;
        k2 = std::pow(x0, lambda - 1.0);
        a2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
    } else {
        k1 = std::exp(-omega);
        a1 = (lambda == 0.0)
                 ? k1 * std::log(2.0 / (omega * omega))
                 : k1 / lambda * (std::pow(2.0 / omega, lambda) - std::pow(x0, lambda));
        k2 = std::pow(2.0 / omega, lambda - 1.0);
        a2 = k2 * 2.0 * std::exp(-1.0) / omega;
    }
    const double atot = a0 + a1 + a2;

    for (;;) {
        double v = atot * rng.uniform();
        double x;
        double hx;
        if (v <= a0) {
            x = x0 * v / a0;
            hx = k0;
        } else if ((v -= a0) <= a1) {
            if (lambda == 0.0) {
                x = omega * std::exp(std::exp(omega) * v);
                hx = k1 / x;
            } else {
                x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
                hx = k1 * std::pow(x, lambda - 1.0);
            }
        } else {
            v -= a1;
            const double edge = std::max(x0, 2.0 / omega);
            x = -2.0 / omega * std::log(std::exp(-omega / 2.0 * edge) - omega / (2.0 * k2) * v);
            hx = k2 * std::exp(-omega / 2.0 * x);
        }
        const double u = rng.uniform() * hx;
        if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) {
            return x;
        }
    }
}

// Draw from the two-parameter kernel with lambda >= 0, omega > 0.
double gig_standard(double lambda, double omega, RandomStream& rng) {
    if (lambda > 2.0 || omega > 3.0) {
        return gig_rou_shift(lambda, omega, rng);
    }
    if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
        return gig_rou_noshift(lambda, omega, rng);
    }
    return gig_three_piece(lambda, omega, rng);
}

}  // namespace

void GigParams::validate() const {
    if (!std::isfinite(p) || !(chi >= 0.0) || !(psi >= 0.0)) {
        throw std::domain_error("GigParams: need finite p and chi, psi >= 0");
    }
    if (chi == 0.0 && !(p > 0.0)) {
        throw std::domain_error("GigParams: chi = 0 requires p > 0");
    }
    if (psi == 0.0 && !(p < 0.0)) {
        throw std::domain_error("GigParams: psi = 0 requires p < 0");
    }
}

double gig_log_kernel(double x, const GigParams& params) {
    params.validate();
    if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
    double value = (params.p - 1.0) * std::log(x);
    if (params.chi > 0.0) value -= 0.5 * params.chi / x;
    if (params.psi > 0.0) value -= 0.5 * params.psi * x;
    return value;
}

double gig_sample(const GigParams& params, RandomStream& rng) {
    params.validate();
    if (params.chi == 0.0) {
        return rng.gamma(params.p, 2.0 / params.psi);
    }
    if (params.psi == 0.0) {
        return rng.inverse_gamma(-params.p, params.chi / 2.0);
    }
    const double scale = std::sqrt(params.chi / params.psi);
    const double omega = std::sqrt(params.chi * params.psi);
    if (!(omega > 0.0)) {
        // chi * psi underflowed; the exact limit law is indistinguishable.
        return (params.p > 0.0) ? rng.gamma(params.p, 2.0 / params.psi)
                                : rng.inverse_gamma(-params.p, params.chi / 2.0);
    }
    if (params.p >= 0.0) {
        return scale * gig_standard(params.p, omega, rng);
    }
    return scale / gig_standard(-params.p, omega, rng);
}

}  // namespace sepqr
