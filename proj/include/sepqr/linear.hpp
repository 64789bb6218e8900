// linear.hpp: adaptive independence-Metropolis-within-Gibbs sampler for the
// linear quantile regression model with skew-exponential-power errors and a
// Bayesian lasso prior on the coefficients.
//
// Per sweep: joint Gaussian independence proposal for beta, a log-scale
// normal proposal for sigma, a truncated-normal proposal on (0,2) for the
// shape alpha (skipped when fixed_alpha pins it), exact Gibbs draws for the
// lasso mixing variables, then Robbins-Monro adaptation of every proposal
// with step size 1/(C sqrt(i)).
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "sepqr/draws.hpp"
#include "sepqr/rng.hpp"

namespace sepqr {

// Hyperparameters shared by the linear and additive samplers.
struct PriorHyper {
    double lasso_shape = 0.1;    // Gamma shape on each gamma_sq
    double lasso_rate = 0.1;     // Gamma rate on each gamma_sq
    double sigma_shape = 0.001;  // inverse-gamma shape on sigma
    double sigma_rate = 0.001;   // inverse-gamma rate on sigma
    double alpha_a = 2.0;        // Beta(a, b) prior on alpha / 2
    double alpha_b = 2.0;
    double smooth_shape = 0.001;  // inverse-gamma shape on each h_sq (smooths only)
    double smooth_rate = 0.001;

    void validate() const;
};

struct SamplerSettings {
    long iterations = 50000;
    long burn_in = 10000;
    std::uint64_t seed = 1;
    double adapt_scale = 10.0;          // C in the adaptation step 1/(C sqrt(i))
    std::optional<double> fixed_alpha;  // pin the shape; 1 = asymmetric Laplace
    int max_init_attempts = 100;

    void validate() const;
};

struct LinearModelSpec {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
    double tau = 0.5;
    PriorHyper prior;
    SamplerSettings sampler;

    void validate() const;
};

// Current position of one chain.  theta/phi/h_sq hold one entry per smooth
// block and stay empty for the linear model.  log_lik caches the model
// log-likelihood at the current position; the Metropolis steps keep it in
// sync so it is always the value the canonical predictor assembly produces.
struct ChainState {
    Eigen::VectorXd beta;
    double sigma = 1.0;
    double alpha = 1.0;
    Eigen::VectorXd omega;
    Eigen::VectorXd gamma_sq;
    std::vector<Eigen::VectorXd> theta;
    Eigen::VectorXd phi;
    Eigen::VectorXd h_sq;
    double log_lik = 0.0;
};

// Gaussian independence proposal for one coefficient block.  cov always
// holds the last matrix that factorized; draw/log_density use chol_lower.
struct VectorProposal {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
    Eigen::MatrixXd chol_lower;

    // Factorizes cov; throws std::runtime_error when it is not positive
    // definite.
    static VectorProposal make(Eigen::VectorXd mean, const Eigen::MatrixXd& cov);

    Eigen::VectorXd draw(RandomStream& rng) const;
    double log_density(const Eigen::VectorXd& x) const;
};

struct ScalarProposal {
    double mean = 0.0;
    double var = 1.0;

    double draw(RandomStream& rng) const;
};

// Proposal moments for every Metropolis block, adapted once per sweep.
struct AdaptiveProposal {
    VectorProposal beta;
    ScalarProposal sigma_log;  // proposal lives on log(sigma)
    ScalarProposal alpha;      // truncated to (0,2) when drawing
    std::vector<VectorProposal> theta;  // one per smooth block
};

// One Metropolis decision.  log_ratio is the uncapped log acceptance ratio,
// log_u the log uniform it was compared against, proposed the proposed block
// (a 1-vector holding sigma or alpha for the scalar steps).
struct MetropolisResult {
    bool accepted = false;
    double log_ratio = 0.0;
    double log_u = 0.0;
    Eigen::VectorXd proposed;
};

// Diminishing step size 1/(c sqrt(i)) for i >= 1.
double adapt_step_size(long i, double c = 10.0);

// Moment recursions applied after completing iteration i (so the step size
// is 1/(c sqrt(i + 1))): mean += step * v and cov += step * v v' with the
// innovation v taken against the old mean.  The covariance candidate gets a
// 1e-10 diagonal floor and is kept only if it factorizes; otherwise the
// previous valid matrix stays.
void adapt_vector_proposal(VectorProposal& proposal, const Eigen::VectorXd& x, long i, double c);
void adapt_scalar_proposal(ScalarProposal& proposal, double x, long i, double c);
void adapt(AdaptiveProposal& proposal, const ChainState& state, long i, double c);

double linear_log_likelihood(const Eigen::VectorXd& beta, double sigma, double alpha,
                             const LinearModelSpec& spec);

// Joint log prior of (beta | omega), omega, gamma_sq, sigma and alpha;
// -inf outside the support, never an exception.
double log_prior(const ChainState& state, const LinearModelSpec& spec);

MetropolisResult img_step_beta(ChainState& state, const VectorProposal& proposal,
                               const LinearModelSpec& spec, RandomStream& rng);
MetropolisResult img_step_sigma(ChainState& state, const ScalarProposal& proposal,
                                const LinearModelSpec& spec, RandomStream& rng);
MetropolisResult img_step_alpha(ChainState& state, const ScalarProposal& proposal,
                                const LinearModelSpec& spec, RandomStream& rng);

// Exact draws from the full conditionals of the lasso layer: first
// omega_j ~ GIG(1/2, beta_j^2, gamma_sq_j) for every j, then
// gamma_sq_j ~ Gamma(shape lasso_shape + 1, rate lasso_rate + omega_j / 2).
void gibbs_update_lasso(ChainState& state, const LinearModelSpec& spec, RandomStream& rng);

// Random overdispersed start: beta_j ~ N(0,1), sigma from its prior, alpha/2
// from its prior (unless fixed), redrawn until the likelihood is finite (at
// most max_init_attempts times, then std::runtime_error).
ChainState init_linear_state(const LinearModelSpec& spec, RandomStream& rng);

// Least-squares center for beta with 0.1 I covariance; sigma proposal
// centered on the log residual MAD with variance 0.25; alpha proposal at
// (1, 0.25).
AdaptiveProposal initial_linear_proposal(const LinearModelSpec& spec);

PosteriorDraws run_linear_sampler(const LinearModelSpec& spec);

}  // namespace sepqr
