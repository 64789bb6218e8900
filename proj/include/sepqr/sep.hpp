// sep.hpp: skew exponential power distribution.
//
// Parametrized so that mu is the tau-th quantile for every shape alpha in
// (0, 2].  alpha = 1 gives the asymmetric-Laplace-shaped density used by
// standard Bayesian quantile regression, alpha = 2 with tau = 0.5 collapses
// to Normal(mu, sigma^2).
#pragma once

#include <Eigen/Dense>

#include "sepqr/rng.hpp"

namespace sepqr {

struct SepParams {
    double mu = 0.0;
    double sigma = 1.0;
    double alpha = 1.0;
    double tau = 0.5;

    // Throws std::domain_error unless sigma > 0, 0 < alpha <= 2, 0 < tau < 1
    // and mu is finite.
    void validate() const;
};

double sep_log_pdf(double y, const SepParams& params);

double sep_cdf(double y, const SepParams& params);

// Inverse CDF; p = tau returns mu exactly.
double sep_quantile(double p, const SepParams& params);

// Exact draws via the gamma transform: U ~ Uniform(0,1), G ~ Gamma(1/alpha, 1),
// X = (alpha G)^{1/alpha}; left branch when U <= tau.
Eigen::VectorXd sep_sample(const SepParams& params, int n, RandomStream& rng);

// Sum of sep_log_pdf(y[t] - location shift) over observations with the shape
// constants computed once.  mu holds the per-observation location (linear
// predictor).  Returns -inf when any parameter or observation is out of range
// instead of throwing, so samplers can reject bad proposals.
double sep_log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& mu,
                          double sigma, double alpha, double tau);

}  // namespace sepqr
