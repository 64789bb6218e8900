// densities.hpp: scalar log densities and small distribution helpers used by
// the priors, the independence proposals, and the tests.
#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>

namespace sepqr {

double normal_log_pdf(double x, double mean, double sd);

double normal_cdf(double x);

double normal_quantile(double p);

// shape-rate parametrization: rate^shape / Gamma(shape) x^{shape-1} e^{-rate x}.
double gamma_log_pdf(double x, double shape, double rate);

double inverse_gamma_log_pdf(double x, double shape, double rate);

double beta_log_pdf(double x, double a, double b);

double exponential_log_pdf(double x, double rate);

// Includes the -log(Phi((upper-m)/s) - Phi((lower-m)/s)) normalizer; the alpha
// proposal is an independence sampler whose truncation mass changes as its
// moments adapt, so the normalizer cannot be dropped.
double truncated_normal_log_pdf(double x, double mean, double sd, double lower, double upper);

double student_t_quantile(double p, double dof);

// N(x; mean, Sigma) with Sigma supplied through its Cholesky factorization.
double mvnormal_log_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                        const Eigen::LLT<Eigen::MatrixXd>& chol);

// theta-dependent part of the multivariate Laplace log prior:
// dim(theta) * log(h) - h * sqrt(theta' penalty theta).  The penalty is
// rank-deficient, so the full normalizer does not exist; Metropolis ratios
// only ever need this kernel.
double mvlaplace_log_kernel(const Eigen::VectorXd& theta, double h,
                            const Eigen::MatrixXd& penalty);

}  // namespace sepqr
