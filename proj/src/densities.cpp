#include "sepqr/densities.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/erf.hpp>

namespace sepqr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;

}  // namespace

double normal_log_pdf(double x, double mean, double sd) {
    if (!(sd > 0.0)) {
        throw std::domain_error("normal_log_pdf: sd must be positive");
    }
    const double z = (x - mean) / sd;
    return -0.5 * kLogTwoPi - std::log(sd) - 0.5 * z * z;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double normal_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("normal_quantile: p must lie in (0,1)");
    }
    return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double gamma_log_pdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::domain_error("gamma_log_pdf: shape and rate must be positive");
    }
    if (!(x > 0.0)) return kNegInf;
    return shape * std::log(rate) - std::lgamma(shape) + (shape - 1.0) * std::log(x) - rate * x;
}

double inverse_gamma_log_pdf(double x, double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0)) {
        throw std::domain_error("inverse_gamma_log_pdf: shape and rate must be positive");
    }
    if (!(x > 0.0)) return kNegInf;
    return shape * std::log(rate) - std::lgamma(shape) - (shape + 1.0) * std::log(x) - rate / x;
}

double beta_log_pdf(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::domain_error("beta_log_pdf: a and b must be positive");
    }
    if (!(x > 0.0) || !(x < 1.0)) return kNegInf;
    const double log_norm = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    return log_norm + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x);
}

double exponential_log_pdf(double x, double rate) {
    if (!(rate > 0.0)) {
        throw std::domain_error("exponential_log_pdf: rate must be positive");
    }
    if (!(x >= 0.0)) return kNegInf;
    return std::log(rate) - rate * x;
}

double truncated_normal_log_pdf(double x, double mean, double sd, double lower, double upper) {
    if (!(sd > 0.0) || !(lower < upper)) {
        throw std::domain_error("truncated_normal_log_pdf: need sd > 0 and lower < upper");
    }
    const double mass = normal_cdf((upper - mean) / sd) - normal_cdf((lower - mean) / sd);
    if (!(mass > 0.0)) {
        throw std::domain_error("truncated_normal_log_pdf: truncation interval carries no mass");
    }
    if (x < lower || x > upper) return kNegInf;
    return normal_log_pdf(x, mean, sd) - std::log(mass);
}

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::domain_error("student_t_quantile: p must lie in (0,1)");
    }
    return boost::math::quantile(boost::math::students_t(dof), p);
}

double mvnormal_log_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                        const Eigen::LLT<Eigen::MatrixXd>& chol) {
    if (x.size() != mean.size()) {
        throw std::invalid_argument("mvnormal_log_pdf: dimension mismatch");
    }
    const Eigen::VectorXd z = chol.matrixL().solve(x - mean);
    const double log_det_half = chol.matrixLLT().diagonal().array().log().sum();
    return -0.5 * static_cast<double>(x.size()) * kLogTwoPi - log_det_half - 0.5 * z.squaredNorm();
}

double mvlaplace_log_kernel(const Eigen::VectorXd& theta, double h,
                            const Eigen::MatrixXd& penalty) {
    if (penalty.rows() != theta.size() || penalty.cols() != theta.size()) {
        throw std::invalid_argument("mvlaplace_log_kernel: penalty dimension mismatch");
    }
    if (!(h > 0.0)) {
        throw std::domain_error("mvlaplace_log_kernel: h must be positive");
    }
    const double quad = theta.dot(penalty * theta);
    return static_cast<double>(theta.size()) * std::log(h) - h * std::sqrt(std::max(quad, 0.0));
}

}  // namespace sepqr
