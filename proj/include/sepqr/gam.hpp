// gam.hpp: the additive-model extension of the linear sampler.  Each smooth
// term is a centered P-spline block with a group-lasso prior: theta_j given
// phi_j is Gaussian with precision penalty / phi_j (rank-deficient, improper),
// phi_j has the Gamma((m+1)/2, h_sq_j/2) mixing law that marginalizes the
// block to a multivariate Laplace, and h_sq_j carries an inverse-gamma prior.
//
// The linear sampler is the zero-smooth special case of this engine, so the
// two samplers share every code path.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sepqr/linear.hpp"
#include "sepqr/spline.hpp"

namespace sepqr {

struct SmoothSpec {
    Eigen::VectorXd z;
    int interior_knots = 20;
    int order = 4;
    int delta = 2;
    std::string name;  // label prefix; empty picks s1, s2, ...
};

struct GamModelSpec {
    Eigen::MatrixXd x;  // parametric columns, normally including an intercept
    std::vector<SmoothSpec> smooths;
    Eigen::VectorXd y;
    double tau = 0.5;
    PriorHyper prior;
    SamplerSettings sampler;

    void validate() const;
};

// Validated spec plus the constructed spline blocks; immutable while
// sampling and shareable across chains.
struct GamWorkspace {
    GamModelSpec spec;
    std::vector<SplineBlock> blocks;
    std::vector<std::string> block_names;
};

GamWorkspace prepare_gam(const GamModelSpec& spec);

// x beta + sum_j basis_j theta_j, assembled in block order.  Every
// likelihood evaluation goes through this one function so cached values
// replay bit-for-bit.
Eigen::VectorXd gam_predictor(const GamWorkspace& ws, const Eigen::VectorXd& beta,
                              const std::vector<Eigen::VectorXd>& thetas);

double gam_log_likelihood(const Eigen::VectorXd& beta,
                          const std::vector<Eigen::VectorXd>& thetas, double sigma,
                          double alpha, const GamWorkspace& ws);

// Independence Gaussian proposal for the whole j-th coefficient block; the
// prior enters only through the quadratic form -theta' penalty theta /
// (2 phi_j), whose theta-independent factors cancel in the ratio.
MetropolisResult img_step_theta_block(std::size_t j, ChainState& state,
                                      const VectorProposal& proposal,
                                      const GamWorkspace& ws, RandomStream& rng);

// phi_j ~ GIG(1/2, theta' penalty theta, h_sq_j); returns the new value.
double gibbs_update_phi(std::size_t j, ChainState& state, const GamWorkspace& ws,
                        RandomStream& rng);

// h_sq_j ~ GIG((m + 1 - smooth_shape)/2, smooth_rate, phi_j), the full
// conditional the hierarchy actually implies (the Gaussian-block exponent
// m/2 and the mixing shape (m+1)/2 both feed the power of h_sq).
double gibbs_update_h_sq(std::size_t j, ChainState& state, const GamWorkspace& ws,
                         RandomStream& rng);

// theta_init carries the starting block coefficients (normally the initial
// proposal means); beta, sigma and alpha are drawn as in the linear model
// with the same bounded retry loop.
ChainState init_gam_state(const GamWorkspace& ws,
                          const std::vector<Eigen::VectorXd>& theta_init,
                          RandomStream& rng);

// Linear-part moments as in initial_linear_proposal; each block proposal is
// centered on a sequential penalized least-squares fit of the running
// residual with covariance 0.1 (penalty + I)^{-1}.
AdaptiveProposal initial_gam_proposal(const GamWorkspace& ws);

// Everything one sweep does, in order: beta step, sigma step, alpha step
// (unless fixed), lasso Gibbs block, then per smooth block the theta step
// and the phi / h_sq Gibbs draws, then proposal adaptation with step
// 1/(C sqrt(i + 1)).
struct IterationRecord {
    MetropolisResult beta;
    MetropolisResult sigma;
    MetropolisResult alpha;
    bool alpha_stepped = false;
    std::vector<MetropolisResult> theta;
};

IterationRecord gam_iteration(ChainState& state, AdaptiveProposal& proposal,
                              const GamWorkspace& ws, long i, RandomStream& rng);

PosteriorDraws run_gam_sampler(const GamModelSpec& spec);

}  // namespace sepqr
