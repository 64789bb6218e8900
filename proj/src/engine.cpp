// engine.cpp: one adaptive independence-Metropolis-within-Gibbs engine backs
// both public samplers; run_linear_sampler delegates to the additive loop
// with zero smooth blocks, so the reduction is exact by construction.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sepqr/densities.hpp"
#include "sepqr/gam.hpp"
#include "sepqr/gig.hpp"
#include "sepqr/linear.hpp"
#include "sepqr/sep.hpp"

namespace sepqr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogTwoPi = 1.8378770664093454835606594728112;
constexpr double kLogTwo = 0.69314718055994530941723212145818;

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double residual_mad(const Eigen::VectorXd& r) {
    std::vector<double> v(r.data(), r.data() + r.size());
    const double center = median_of(v);
    for (double& x : v) {
        x = std::abs(x - center);
    }
    return median_of(std::move(v));
}

// beta-dependent part of the prior: independent N(0, omega_j) coordinates.
double gaussian_conditional_log_prior(const Eigen::VectorXd& beta, const Eigen::VectorXd& omega) {
    double total = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        total += normal_log_pdf(beta[j], 0.0, std::sqrt(omega[j]));
    }
    return total;
}

// Shared independence-Metropolis step for one coefficient block.  mu_of maps
// the block to the full linear predictor, log_prior_of to the block-dependent
// prior factor.  The uniform for the accept decision is always consumed, so a
// fixed stream replays the same way whatever the ratio.
MetropolisResult mh_vector_step(Eigen::VectorXd& coef, double& cached_ll,
                                const VectorProposal& proposal, const Eigen::VectorXd& y,
                                double sigma, double alpha, double tau,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& mu_of,
                                const std::function<double(const Eigen::VectorXd&)>& log_prior_of,
                                RandomStream& rng) {
    MetropolisResult result;
    result.proposed = proposal.draw(rng);
    const double ll_star = sep_log_likelihood(y, mu_of(result.proposed), sigma, alpha, tau);
    const double lp_star = log_prior_of(result.proposed);
    const double lp_old = log_prior_of(coef);
    const double lq_star = proposal.log_density(result.proposed);
    const double lq_old = proposal.log_density(coef);
    result.log_ratio = (ll_star + lp_star + lq_old) - (cached_ll + lp_old + lq_star);
    result.log_u = std::log(rng.uniform());
    result.accepted = result.log_u < result.log_ratio;  // NaN ratio rejects
    if (result.accepted) {
        coef = result.proposed;
        cached_ll = ll_star;
    }
    return result;
}

MetropolisResult mh_sigma_step(ChainState& state, const ScalarProposal& proposal,
                               const Eigen::VectorXd& y, const Eigen::VectorXd& mu_now,
                               double tau, const PriorHyper& prior, RandomStream& rng) {
    MetropolisResult result;
    const double sd = std::sqrt(proposal.var);
    const double log_sigma_star = proposal.draw(rng);
    const double sigma_star = std::exp(log_sigma_star);
    double ll_star = kNegInf;
    if (std::isfinite(sigma_star) && sigma_star > 0.0) {
        ll_star = sep_log_likelihood(y, mu_now, sigma_star, state.alpha, tau);
        const double lp_star = inverse_gamma_log_pdf(sigma_star, prior.sigma_shape, prior.sigma_rate);
        const double lp_old = inverse_gamma_log_pdf(state.sigma, prior.sigma_shape, prior.sigma_rate);
        // proposal density of sigma itself: normal on the log scale times the
        // change-of-variables Jacobian 1/sigma
        const double lq_star = normal_log_pdf(log_sigma_star, proposal.mean, sd) - log_sigma_star;
        const double lq_old =
            normal_log_pdf(std::log(state.sigma), proposal.mean, sd) - std::log(state.sigma);
        result.log_ratio = (ll_star + lp_star + lq_old) - (state.log_lik + lp_old + lq_star);
    } else {
        result.log_ratio = kNegInf;
    }
    result.proposed = Eigen::VectorXd::Constant(1, sigma_star);
    result.log_u = std::log(rng.uniform());
    result.accepted = result.log_u < result.log_ratio;
    if (result.accepted) {
        state.sigma = sigma_star;
        state.log_lik = ll_star;
    }
    return result;
}

MetropolisResult mh_alpha_step(ChainState& state, const ScalarProposal& proposal,
                               const Eigen::VectorXd& y, const Eigen::VectorXd& mu_now,
                               double tau, const PriorHyper& prior, RandomStream& rng) {
    MetropolisResult result;
    const double sd = std::sqrt(proposal.var);
    const double alpha_star = rng.truncated_normal(proposal.mean, sd, 0.0, 2.0);
    const double ll_star = sep_log_likelihood(y, mu_now, state.sigma, alpha_star, tau);
    const double lp_star = beta_log_pdf(0.5 * alpha_star, prior.alpha_a, prior.alpha_b) - kLogTwo;
    const double lp_old = beta_log_pdf(0.5 * state.alpha, prior.alpha_a, prior.alpha_b) - kLogTwo;
    // truncation mass kept: the adapted (mean, var) move over time, so q is a
    // genuinely renormalized density
    const double lq_star = truncated_normal_log_pdf(alpha_star, proposal.mean, sd, 0.0, 2.0);
    const double lq_old = truncated_normal_log_pdf(state.alpha, proposal.mean, sd, 0.0, 2.0);
    result.log_ratio = (ll_star + lp_star + lq_old) - (state.log_lik + lp_old + lq_star);
    result.proposed = Eigen::VectorXd::Constant(1, alpha_star);
    result.log_u = std::log(rng.uniform());
    result.accepted = result.log_u < result.log_ratio;
    if (result.accepted) {
        state.alpha = alpha_star;
        state.log_lik = ll_star;
    }
    return result;
}

void gibbs_update_lasso_impl(ChainState& state, const PriorHyper& prior, RandomStream& rng) {
    for (Eigen::Index j = 0; j < state.beta.size(); ++j) {
        GigParams params;
        params.p = 0.5;
        params.chi = state.beta[j] * state.beta[j];
        params.psi = state.gamma_sq[j];
        state.omega[j] = gig_sample(params, rng);
    }
    for (Eigen::Index j = 0; j < state.beta.size(); ++j) {
        const double rate = prior.lasso_rate + 0.5 * state.omega[j];
        state.gamma_sq[j] = rng.gamma(prior.lasso_shape + 1.0, 1.0 / rate);
    }
}

MetropolisResult engine_step_beta(ChainState& state, const VectorProposal& proposal,
                                  const GamWorkspace& ws, RandomStream& rng) {
    auto mu_of = [&ws, &state](const Eigen::VectorXd& b) {
        return gam_predictor(ws, b, state.theta);
    };
    auto prior_of = [&state](const Eigen::VectorXd& b) {
        return gaussian_conditional_log_prior(b, state.omega);
    };
    return mh_vector_step(state.beta, state.log_lik, proposal, ws.spec.y, state.sigma,
                          state.alpha, ws.spec.tau, mu_of, prior_of, rng);
}

GamModelSpec lift_linear(const LinearModelSpec& spec) {
    GamModelSpec lifted;
    lifted.x = spec.x;
    lifted.y = spec.y;
    lifted.tau = spec.tau;
    lifted.prior = spec.prior;
    lifted.sampler = spec.sampler;
    return lifted;
}

std::vector<std::string> parameter_labels(const GamWorkspace& ws) {
    std::vector<std::string> names;
    const Eigen::Index p = ws.spec.x.cols();
    for (Eigen::Index j = 0; j < p; ++j) names.push_back("beta_" + std::to_string(j));
    names.push_back("sigma");
    names.push_back("alpha");
    for (Eigen::Index j = 0; j < p; ++j) names.push_back("omega_" + std::to_string(j));
    for (Eigen::Index j = 0; j < p; ++j) names.push_back("gamma_sq_" + std::to_string(j));
    for (std::size_t b = 0; b < ws.blocks.size(); ++b) {
        for (Eigen::Index t = 0; t < ws.blocks[b].dim(); ++t) {
            names.push_back(ws.block_names[b] + "_theta_" + std::to_string(t));
        }
        names.push_back(ws.block_names[b] + "_phi");
        names.push_back(ws.block_names[b] + "_h_sq");
    }
    return names;
}

void pack_row(Eigen::MatrixXd& samples, long row, const ChainState& state) {
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < state.beta.size(); ++j) samples(row, c++) = state.beta[j];
    samples(row, c++) = state.sigma;
    samples(row, c++) = state.alpha;
    for (Eigen::Index j = 0; j < state.omega.size(); ++j) samples(row, c++) = state.omega[j];
    for (Eigen::Index j = 0; j < state.gamma_sq.size(); ++j) samples(row, c++) = state.gamma_sq[j];
    for (std::size_t b = 0; b < state.theta.size(); ++b) {
        for (Eigen::Index t = 0; t < state.theta[b].size(); ++t) {
            samples(row, c++) = state.theta[b][t];
        }
        samples(row, c++) = state.phi[static_cast<Eigen::Index>(b)];
        samples(row, c++) = state.h_sq[static_cast<Eigen::Index>(b)];
    }
}

PosteriorDraws run_chain(const GamWorkspace& ws) {
    const SamplerSettings& settings = ws.spec.sampler;
    RandomStream rng(settings.seed);
    AdaptiveProposal proposal = initial_gam_proposal(ws);
    std::vector<Eigen::VectorXd> theta_init;
    theta_init.reserve(proposal.theta.size());
    for (const VectorProposal& block : proposal.theta) theta_init.push_back(block.mean);
    ChainState state = init_gam_state(ws, theta_init, rng);

    const std::vector<std::string> names = parameter_labels(ws);
    const long retained = settings.iterations - settings.burn_in;
    PosteriorDraws out;
    out.parameter_names = names;
    out.samples.resize(retained, static_cast<Eigen::Index>(names.size()));
    out.log_likelihood.resize(retained);
    out.iterations = settings.iterations;
    out.burn_in = settings.burn_in;
    out.seed = settings.seed;
    out.tau = ws.spec.tau;
    out.model = ws.blocks.empty() ? "linear" : "gam";

    long beta_accepts = 0;
    long sigma_accepts = 0;
    long alpha_accepts = 0;
    std::vector<long> theta_accepts(ws.blocks.size(), 0);
    for (long i = 1; i <= settings.iterations; ++i) {
        const IterationRecord record = gam_iteration(state, proposal, ws, i, rng);
        beta_accepts += record.beta.accepted ? 1 : 0;
        sigma_accepts += record.sigma.accepted ? 1 : 0;
        alpha_accepts += record.alpha_stepped && record.alpha.accepted ? 1 : 0;
        for (std::size_t b = 0; b < theta_accepts.size(); ++b) {
            theta_accepts[b] += record.theta[b].accepted ? 1 : 0;
        }
        if (i > settings.burn_in) {
            const long row = i - settings.burn_in - 1;
            pack_row(out.samples, row, state);
            out.log_likelihood[row] = state.log_lik;
        }
    }
    const double n = static_cast<double>(settings.iterations);
    out.acceptance_rate["beta"] = beta_accepts / n;
    out.acceptance_rate["sigma"] = sigma_accepts / n;
    if (!settings.fixed_alpha) {
        out.acceptance_rate["alpha"] = alpha_accepts / n;
    }
    for (std::size_t b = 0; b < theta_accepts.size(); ++b) {
        out.acceptance_rate[ws.block_names[b] + "_theta"] = theta_accepts[b] / n;
    }
    return out;
}

}  // namespace

void PriorHyper::validate() const {
    const bool ok = lasso_shape > 0.0 && lasso_rate > 0.0 && sigma_shape > 0.0 &&
                    sigma_rate > 0.0 && alpha_a > 0.0 && alpha_b > 0.0 && smooth_shape > 0.0 &&
                    smooth_rate > 0.0;
    if (!ok) {
        throw std::invalid_argument("PriorHyper: all hyperparameters must be positive");
    }
}

void SamplerSettings::validate() const {
    if (burn_in < 0 || iterations <= burn_in) {
        throw std::invalid_argument("SamplerSettings: need iterations > burn_in >= 0");
    }
    if (!(adapt_scale > 0.0)) {
        throw std::invalid_argument("SamplerSettings: adapt_scale must be positive");
    }
    if (max_init_attempts < 1) {
        throw std::invalid_argument("SamplerSettings: max_init_attempts must be at least 1");
    }
    if (fixed_alpha && !(*fixed_alpha > 0.0 && *fixed_alpha <= 2.0)) {
        throw std::invalid_argument("SamplerSettings: fixed_alpha must lie in (0, 2]");
    }
}

void LinearModelSpec::validate() const {
    if (x.rows() != y.size()) {
        throw std::invalid_argument("LinearModelSpec: design rows and response length differ");
    }
    if (x.cols() < 1 || x.rows() < x.cols()) {
        throw std::invalid_argument("LinearModelSpec: need rows >= columns >= 1");
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("LinearModelSpec: tau must lie in (0, 1)");
    }
    prior.validate();
    sampler.validate();
}

void GamModelSpec::validate() const {
    if (x.rows() != y.size()) {
        throw std::invalid_argument("GamModelSpec: design rows and response length differ");
    }
    if (x.cols() < 1 || x.rows() < x.cols()) {
        throw std::invalid_argument("GamModelSpec: need rows >= columns >= 1");
    }
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("GamModelSpec: tau must lie in (0, 1)");
    }
    for (const SmoothSpec& smooth : smooths) {
        if (smooth.z.size() != y.size()) {
            throw std::invalid_argument("GamModelSpec: smooth covariate length differs from response");
        }
    }
    prior.validate();
    sampler.validate();
}

VectorProposal VectorProposal::make(Eigen::VectorXd mean, const Eigen::MatrixXd& cov) {
    if (cov.rows() != mean.size() || cov.cols() != mean.size()) {
        throw std::invalid_argument("VectorProposal: covariance dimension mismatch");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::runtime_error("VectorProposal: covariance is not positive definite");
    }
    VectorProposal out;
    out.mean = std::move(mean);
    out.cov = cov;
    out.chol_lower = llt.matrixL();
    return out;
}

Eigen::VectorXd VectorProposal::draw(RandomStream& rng) const {
    Eigen::VectorXd z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return mean + chol_lower * z;
}

double VectorProposal::log_density(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) {
        throw std::invalid_argument("VectorProposal: point dimension mismatch");
    }
    const Eigen::VectorXd w = chol_lower.triangularView<Eigen::Lower>().solve(x - mean);
    return -0.5 * static_cast<double>(mean.size()) * kLogTwoPi -
           chol_lower.diagonal().array().log().sum() - 0.5 * w.squaredNorm();
}

double ScalarProposal::draw(RandomStream& rng) const {
    return mean + std::sqrt(var) * rng.normal();
}

double adapt_step_size(long i, double c) {
    if (i < 1 || !(c > 0.0)) {
        throw std::invalid_argument("adapt_step_size: need i >= 1 and c > 0");
    }
    return 1.0 / (c * std::sqrt(static_cast<double>(i)));
}

void adapt_vector_proposal(VectorProposal& proposal, const Eigen::VectorXd& x, long i, double c) {
    const double step = adapt_step_size(i + 1, c);
    const Eigen::VectorXd v = x - proposal.mean;
    proposal.mean += step * v;
    // Robbins-Monro moment matching: the pullback term lets an over-dispersed
    // proposal contract toward the chain; without it variances only ratchet
    // upward and a stalled block can never recover.
    Eigen::MatrixXd candidate = proposal.cov + step * (v * v.transpose() - proposal.cov);
    candidate.diagonal().array() += 1e-10;
    Eigen::LLT<Eigen::MatrixXd> llt(candidate);
    if (llt.info() == Eigen::Success) {
        proposal.cov = std::move(candidate);
        proposal.chol_lower = llt.matrixL();
    }
}

void adapt_scalar_proposal(ScalarProposal& proposal, double x, long i, double c) {
    const double step = adapt_step_size(i + 1, c);
    const double v = x - proposal.mean;
    proposal.mean += step * v;
    proposal.var += step * (v * v - proposal.var);
}

void adapt(AdaptiveProposal& proposal, const ChainState& state, long i, double c) {
    adapt_vector_proposal(proposal.beta, state.beta, i, c);
    adapt_scalar_proposal(proposal.sigma_log, std::log(state.sigma), i, c);
    adapt_scalar_proposal(proposal.alpha, state.alpha, i, c);
    for (std::size_t b = 0; b < proposal.theta.size(); ++b) {
        adapt_vector_proposal(proposal.theta[b], state.theta[b], i, c);
    }
}

double linear_log_likelihood(const Eigen::VectorXd& beta, double sigma, double alpha,
                             const LinearModelSpec& spec) {
    return sep_log_likelihood(spec.y, spec.x * beta, sigma, alpha, spec.tau);
}

double log_prior(const ChainState& state, const LinearModelSpec& spec) {
    const PriorHyper& prior = spec.prior;
    if (!(state.sigma > 0.0)) return kNegInf;
    double total = inverse_gamma_log_pdf(state.sigma, prior.sigma_shape, prior.sigma_rate);
    total += beta_log_pdf(0.5 * state.alpha, prior.alpha_a, prior.alpha_b) - kLogTwo;
    for (Eigen::Index j = 0; j < state.beta.size(); ++j) {
        if (!(state.omega[j] > 0.0) || !(state.gamma_sq[j] > 0.0)) return kNegInf;
        total += normal_log_pdf(state.beta[j], 0.0, std::sqrt(state.omega[j]));
        total += exponential_log_pdf(state.omega[j], 0.5 * state.gamma_sq[j]);
        total += gamma_log_pdf(state.gamma_sq[j], prior.lasso_shape, prior.lasso_rate);
    }
    return total;
}

MetropolisResult img_step_beta(ChainState& state, const VectorProposal& proposal,
                               const LinearModelSpec& spec, RandomStream& rng) {
    auto mu_of = [&spec](const Eigen::VectorXd& b) { return Eigen::VectorXd(spec.x * b); };
    auto prior_of = [&state](const Eigen::VectorXd& b) {
        return gaussian_conditional_log_prior(b, state.omega);
    };
    return mh_vector_step(state.beta, state.log_lik, proposal, spec.y, state.sigma, state.alpha,
                          spec.tau, mu_of, prior_of, rng);
}

MetropolisResult img_step_sigma(ChainState& state, const ScalarProposal& proposal,
                                const LinearModelSpec& spec, RandomStream& rng) {
    const Eigen::VectorXd mu_now = spec.x * state.beta;
    return mh_sigma_step(state, proposal, spec.y, mu_now, spec.tau, spec.prior, rng);
}

MetropolisResult img_step_alpha(ChainState& state, const ScalarProposal& proposal,
                                const LinearModelSpec& spec, RandomStream& rng) {
    const Eigen::VectorXd mu_now = spec.x * state.beta;
    return mh_alpha_step(state, proposal, spec.y, mu_now, spec.tau, spec.prior, rng);
}

void gibbs_update_lasso(ChainState& state, const LinearModelSpec& spec, RandomStream& rng) {
    gibbs_update_lasso_impl(state, spec.prior, rng);
}

ChainState init_linear_state(const LinearModelSpec& spec, RandomStream& rng) {
    spec.validate();
    const GamWorkspace ws = prepare_gam(lift_linear(spec));
    return init_gam_state(ws, {}, rng);
}

AdaptiveProposal initial_linear_proposal(const LinearModelSpec& spec) {
    spec.validate();
    const GamWorkspace ws = prepare_gam(lift_linear(spec));
    return initial_gam_proposal(ws);
}

PosteriorDraws run_linear_sampler(const LinearModelSpec& spec) {
    spec.validate();
    return run_gam_sampler(lift_linear(spec));
}

GamWorkspace prepare_gam(const GamModelSpec& spec) {
    spec.validate();
    GamWorkspace ws;
    ws.spec = spec;
    for (std::size_t j = 0; j < spec.smooths.size(); ++j) {
        const SmoothSpec& smooth = spec.smooths[j];
        SplineBlockConfig config;
        config.z = smooth.z;
        config.interior_knots = smooth.interior_knots;
        config.order = smooth.order;
        config.delta = smooth.delta;
        ws.blocks.push_back(make_spline_block(config));
        ws.block_names.push_back(smooth.name.empty() ? "s" + std::to_string(j + 1) : smooth.name);
    }
    return ws;
}

Eigen::VectorXd gam_predictor(const GamWorkspace& ws, const Eigen::VectorXd& beta,
                              const std::vector<Eigen::VectorXd>& thetas) {
    if (beta.size() != ws.spec.x.cols() || thetas.size() != ws.blocks.size()) {
        throw std::invalid_argument("gam_predictor: coefficient dimension mismatch");
    }
    Eigen::VectorXd mu = ws.spec.x * beta;
    for (std::size_t j = 0; j < ws.blocks.size(); ++j) {
        if (thetas[j].size() != ws.blocks[j].dim()) {
            throw std::invalid_argument("gam_predictor: block coefficient dimension mismatch");
        }
        mu += ws.blocks[j].basis * thetas[j];
    }
    return mu;
}

double gam_log_likelihood(const Eigen::VectorXd& beta,
                          const std::vector<Eigen::VectorXd>& thetas, double sigma,
                          double alpha, const GamWorkspace& ws) {
    return sep_log_likelihood(ws.spec.y, gam_predictor(ws, beta, thetas), sigma, alpha,
                              ws.spec.tau);
}

MetropolisResult img_step_theta_block(std::size_t j, ChainState& state,
                                      const VectorProposal& proposal, const GamWorkspace& ws,
                                      RandomStream& rng) {
    if (j >= ws.blocks.size() || state.theta.size() != ws.blocks.size()) {
        throw std::invalid_argument("img_step_theta_block: block index out of range");
    }
    const SplineBlock& block = ws.blocks[j];
    const double phi = state.phi[static_cast<Eigen::Index>(j)];
    auto mu_of = [&ws, &state, j](const Eigen::VectorXd& th) {
        std::vector<Eigen::VectorXd> thetas = state.theta;
        thetas[j] = th;
        return gam_predictor(ws, state.beta, thetas);
    };
    auto prior_of = [&block, phi](const Eigen::VectorXd& th) {
        return -th.dot(block.penalty * th) / (2.0 * phi);
    };
    return mh_vector_step(state.theta[j], state.log_lik, proposal, ws.spec.y, state.sigma,
                          state.alpha, ws.spec.tau, mu_of, prior_of, rng);
}

double gibbs_update_phi(std::size_t j, ChainState& state, const GamWorkspace& ws,
                        RandomStream& rng) {
    if (j >= ws.blocks.size()) {
        throw std::invalid_argument("gibbs_update_phi: block index out of range");
    }
    const Eigen::VectorXd& theta = state.theta[j];
    GigParams params;
    params.p = 0.5;
    params.chi = std::max(theta.dot(ws.blocks[j].penalty * theta), 0.0);
    params.psi = state.h_sq[static_cast<Eigen::Index>(j)];
    state.phi[static_cast<Eigen::Index>(j)] = gig_sample(params, rng);
    return state.phi[static_cast<Eigen::Index>(j)];
}

double gibbs_update_h_sq(std::size_t j, ChainState& state, const GamWorkspace& ws,
                         RandomStream& rng) {
    if (j >= ws.blocks.size()) {
        throw std::invalid_argument("gibbs_update_h_sq: block index out of range");
    }
    const double m = static_cast<double>(ws.blocks[j].dim());
    GigParams params;
    params.p = 0.5 * (m + 1.0 - ws.spec.prior.smooth_shape);
    params.chi = ws.spec.prior.smooth_rate;
    params.psi = state.phi[static_cast<Eigen::Index>(j)];
    state.h_sq[static_cast<Eigen::Index>(j)] = gig_sample(params, rng);
    return state.h_sq[static_cast<Eigen::Index>(j)];
}

ChainState init_gam_state(const GamWorkspace& ws,
                          const std::vector<Eigen::VectorXd>& theta_init, RandomStream& rng) {
    if (theta_init.size() != ws.blocks.size()) {
        throw std::invalid_argument("init_gam_state: one theta_init entry per block required");
    }
    const GamModelSpec& spec = ws.spec;
    const Eigen::Index p = spec.x.cols();
    const Eigen::Index nblocks = static_cast<Eigen::Index>(ws.blocks.size());
    ChainState state;
    state.beta.resize(p);
    state.omega = Eigen::VectorXd::Ones(p);
    state.gamma_sq = Eigen::VectorXd::Ones(p);
    state.theta = theta_init;
    state.phi = Eigen::VectorXd::Ones(nblocks);
    state.h_sq = Eigen::VectorXd::Ones(nblocks);
    for (int attempt = 0; attempt < spec.sampler.max_init_attempts; ++attempt) {
        for (Eigen::Index j = 0; j < p; ++j) state.beta[j] = rng.normal();
        state.sigma = rng.inverse_gamma(spec.prior.sigma_shape, spec.prior.sigma_rate);
        state.alpha = spec.sampler.fixed_alpha
                          ? *spec.sampler.fixed_alpha
                          : 2.0 * rng.beta(spec.prior.alpha_a, spec.prior.alpha_b);
        state.log_lik = gam_log_likelihood(state.beta, state.theta, state.sigma, state.alpha, ws);
        if (std::isfinite(state.log_lik)) {
            return state;
        }
    }
    throw std::runtime_error(
        "chain initialization failed: likelihood stayed non-finite after the retry budget");
}

AdaptiveProposal initial_gam_proposal(const GamWorkspace& ws) {
    const GamModelSpec& spec = ws.spec;
    const Eigen::Index p = spec.x.cols();
    AdaptiveProposal proposal;
    const Eigen::VectorXd beta_ls = spec.x.colPivHouseholderQr().solve(spec.y);
    proposal.beta = VectorProposal::make(beta_ls, 0.1 * Eigen::MatrixXd::Identity(p, p));
    Eigen::VectorXd resid = spec.y - spec.x * beta_ls;
    for (const SplineBlock& block : ws.blocks) {
        const Eigen::Index m = block.dim();
        Eigen::MatrixXd normal_eq = block.basis.transpose() * block.basis + block.penalty;
        normal_eq.diagonal().array() += 1e-8;
        const Eigen::VectorXd fit = normal_eq.llt().solve(block.basis.transpose() * resid);
        resid -= block.basis * fit;
        // Unit ridge: the bare penalty is rank deficient, and a tiny ridge
        // would put ~1e7 proposal variance on the null-space directions the
        // likelihood pins down, freezing the block.
        Eigen::MatrixXd ridge = block.penalty;
        ridge.diagonal().array() += 1.0;
        Eigen::MatrixXd cov = 0.1 * ridge.llt().solve(Eigen::MatrixXd::Identity(m, m));
        cov = 0.5 * (cov + cov.transpose());
        proposal.theta.push_back(VectorProposal::make(fit, cov));
    }
    const double mad = std::max(residual_mad(resid), 1e-12);
    proposal.sigma_log = ScalarProposal{std::log(mad), 0.25};
    proposal.alpha = ScalarProposal{1.0, 0.25};
    return proposal;
}

IterationRecord gam_iteration(ChainState& state, AdaptiveProposal& proposal,
                              const GamWorkspace& ws, long i, RandomStream& rng) {
    if (i < 1) {
        throw std::invalid_argument("gam_iteration: iterations are numbered from 1");
    }
    const GamModelSpec& spec = ws.spec;
    IterationRecord record;
    record.beta = engine_step_beta(state, proposal.beta, ws, rng);
    {
        const Eigen::VectorXd mu_now = gam_predictor(ws, state.beta, state.theta);
        record.sigma = mh_sigma_step(state, proposal.sigma_log, spec.y, mu_now, spec.tau,
                                     spec.prior, rng);
        if (!spec.sampler.fixed_alpha) {
            record.alpha = mh_alpha_step(state, proposal.alpha, spec.y, mu_now, spec.tau,
                                         spec.prior, rng);
            record.alpha_stepped = true;
        }
    }
    gibbs_update_lasso_impl(state, spec.prior, rng);
    for (std::size_t j = 0; j < ws.blocks.size(); ++j) {
        record.theta.push_back(img_step_theta_block(j, state, proposal.theta[j], ws, rng));
        gibbs_update_phi(j, state, ws, rng);
        gibbs_update_h_sq(j, state, ws, rng);
    }
    adapt(proposal, state, i, spec.sampler.adapt_scale);
    return record;
}

PosteriorDraws run_gam_sampler(const GamModelSpec& spec) {
    const GamWorkspace ws = prepare_gam(spec);
    return run_chain(ws);
}

}  // namespace sepqr
