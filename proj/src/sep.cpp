#include "sepqr/sep.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace sepqr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_kep(double alpha) {
    return -std::log(2.0) - std::log(alpha) / alpha - std::lgamma(1.0 + 1.0 / alpha);
}

// (|y - mu| / (2 c sigma))^alpha without overflow for small alpha.
double power_term(double absdev, double c, double sigma, double alpha) {
    if (absdev == 0.0) return 0.0;
    const double r = absdev / (2.0 * c * sigma);
    if (alpha == 1.0) return r;
    if (alpha == 2.0) return r * r;
    return std::exp(alpha * std::log(r));
}

}  // namespace

void SepParams::validate() const {
    if (!std::isfinite(mu) || !(sigma > 0.0) || !(alpha > 0.0) || !(alpha <= 2.0) ||
        !(tau > 0.0) || !(tau < 1.0)) {
        throw std::domain_error("SepParams: need finite mu, sigma > 0, alpha in (0,2], tau in (0,1)");
    }
}

double sep_log_pdf(double y, const SepParams& params) {
    params.validate();
    if (!std::isfinite(y)) {
        throw std::domain_error("sep_log_pdf: y must be finite");
    }
    const double c = (y <= params.mu) ? params.tau : 1.0 - params.tau;
    const double t = power_term(std::fabs(y - params.mu), c, params.sigma, params.alpha);
    return log_kep(params.alpha) - std::log(params.sigma) - t / params.alpha;
}

double sep_cdf(double y, const SepParams& params) {
    params.validate();
    if (std::isnan(y)) {
        throw std::domain_error("sep_cdf: y must not be NaN");
    }
    if (y == -std::numeric_limits<double>::infinity()) return 0.0;
    if (y == std::numeric_limits<double>::infinity()) return 1.0;
    const double inv_alpha = 1.0 / params.alpha;
    if (y <= params.mu) {
        const double t = power_term(params.mu - y, params.tau, params.sigma, params.alpha);
        return params.tau * boost::math::gamma_q(inv_alpha, t * inv_alpha);
    }
    const double t = power_term(y - params.mu, 1.0 - params.tau, params.sigma, params.alpha);
    return 1.0 - (1.0 - params.tau) * boost::math::gamma_q(inv_alpha, t * inv_alpha);
}

double sep_quantile(double p, const SepParams& params) {
    params.validate();
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("sep_quantile: p must lie in (0,1)");
    }
    if (p == params.tau) return params.mu;
    const double inv_alpha = 1.0 / params.alpha;
    if (p < params.tau) {
        const double x = boost::math::gamma_q_inv(inv_alpha, p / params.tau);
        const double r = (x == 0.0) ? 0.0 : std::exp(std::log(params.alpha * x) * inv_alpha);
        return params.mu - 2.0 * params.tau * params.sigma * r;
    }
    const double x = boost::math::gamma_p_inv(inv_alpha, (p - params.tau) / (1.0 - params.tau));
    const double r = (x == 0.0) ? 0.0 : std::exp(std::log(params.alpha * x) * inv_alpha);
    return params.mu + 2.0 * (1.0 - params.tau) * params.sigma * r;
}

Eigen::VectorXd sep_sample(const SepParams& params, int n, RandomStream& rng) {
    params.validate();
    if (n < 1) {
        throw std::domain_error("sep_sample: n must be >= 1");
    }
    const double inv_alpha = 1.0 / params.alpha;
    Eigen::VectorXd out(n);
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        const double g = rng.gamma(inv_alpha, 1.0);
        const double x = (g == 0.0) ? 0.0 : std::exp(std::log(params.alpha * g) * inv_alpha);
        out[i] = (u <= params.tau) ? params.mu - 2.0 * params.tau * params.sigma * x
                                   : params.mu + 2.0 * (1.0 - params.tau) * params.sigma * x;
    }
    return out;
}

double sep_log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                          double sigma, double alpha, double tau) {
    if (y.size() != mu.size()) {
        throw std::invalid_argument("sep_log_likelihood: y and mu sizes differ");
    }
    if (!(sigma > 0.0) || !(alpha > 0.0) || !(alpha <= 2.0) || !(tau > 0.0) || !(tau < 1.0)) {
        return kNegInf;
    }
    const double inv_alpha = 1.0 / alpha;
    const double base = log_kep(alpha) - std::log(sigma);
    double total = 0.0;
    for (Eigen::Index t = 0; t < y.size(); ++t) {
        const double m = mu[t];
        if (!std::isfinite(m)) return kNegInf;
        const double c = (y[t] <= m) ? tau : 1.0 - tau;
        total += base - power_term(std::fabs(y[t] - m), c, sigma, alpha) * inv_alpha;
    }
    return std::isfinite(total) ? total : kNegInf;
}

}  // namespace sepqr
