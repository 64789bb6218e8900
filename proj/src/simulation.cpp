#include "sepqr/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "sepqr/diagnostics.hpp"
#include "sepqr/gam.hpp"
#include "sepqr/linear.hpp"

namespace sepqr {

namespace {

constexpr double kPi = 3.14159265358979323846;

double standard_normal_quantile(double tau) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), tau);
}

double student_t_quantile(double nu, double tau) {
    return boost::math::quantile(boost::math::students_t_distribution<double>(nu), tau);
}

// posterior-mean column extractor
double column_mean(const PosteriorDraws& draws, const std::string& name) {
    return draws.column(name).mean();
}

LinearModelSpec make_fit_spec(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                              double tau, const ExperimentConfig& config,
                              std::uint64_t seed, bool pin_shape) {
    LinearModelSpec spec;
    spec.x = design;
    spec.y = y;
    spec.tau = tau;
    spec.sampler.iterations = config.iterations;
    spec.sampler.burn_in = config.burn_in;
    spec.sampler.seed = seed;
    if (pin_shape) spec.sampler.fixed_alpha = 1.0;
    return spec;
}

}  // namespace

// ---- generators -----------------------------------------------------------

void MixtureSpec::validate() const {
    if (!(weights.minCoeff() > 0.0)) throw std::invalid_argument("mixture: weights must be positive");
    // The benchmark weights are quoted at limited precision and miss unit
    // mass by 0.005; the sampler normalizes, so only gross errors are fatal.
    if (std::abs(weights.sum() - 1.0) > 0.01) {
        throw std::invalid_argument("mixture: weights must sum to one");
    }
    if (t < 1) throw std::invalid_argument("mixture: need at least one observation");
    Eigen::LLT<Eigen::Matrix2d> llt(cov);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("mixture: covariance must be positive definite");
    }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gen_mixture_data(const MixtureSpec& spec,
                                                             RandomStream& rng) {
    spec.validate();
    const Eigen::Matrix2d chol = Eigen::LLT<Eigen::Matrix2d>(spec.cov).matrixL();
    const double total = spec.weights.sum();
    Eigen::VectorXd y(spec.t), x(spec.t);
    for (long i = 0; i < spec.t; ++i) {
        const double u = rng.uniform() * total;
        int component = 0;
        double cum = spec.weights[0];
        while (component < 2 && u > cum) {
            ++component;
            cum += spec.weights[component];
        }
        const Eigen::Vector2d z(rng.normal(), rng.normal());
        const Eigen::Vector2d draw = spec.means[static_cast<std::size_t>(component)] + chol * z;
        y[i] = draw[0];
        x[i] = draw[1];
    }
    return {y, x};
}

void RegressionSimSpec::validate() const {
    if (sim_id < 1 || sim_id > 3) throw std::invalid_argument("regression sim: sim_id in {1,2,3}");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("regression sim: tau in (0,1)");
    if (t < 1) throw std::invalid_argument("regression sim: need at least one observation");
    if (replicates < 1) throw std::invalid_argument("regression sim: need at least one replicate");
}

Eigen::VectorXd regression_beta(int sim_id) {
    Eigen::VectorXd beta(8);
    switch (sim_id) {
        case 1: beta << 3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0; break;
        case 2: beta = Eigen::VectorXd::Constant(8, 0.85); break;
        case 3: beta << 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0; break;
        default: throw std::invalid_argument("regression sim: sim_id in {1,2,3}");
    }
    return beta;
}

RegressionData gen_regression_data(const RegressionSimSpec& spec, RandomStream& rng) {
    spec.validate();
    const int p = 8;
    Eigen::MatrixXd cov(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) cov(i, j) = std::pow(0.5, std::abs(i - j));
    }
    const Eigen::MatrixXd chol = Eigen::LLT<Eigen::MatrixXd>(cov).matrixL();

    const bool gaussian = spec.error_kind == ErrorKind::gaussian;
    const double shift = 3.0 * (gaussian ? standard_normal_quantile(spec.tau)
                                         : student_t_quantile(2.0, spec.tau));
    RegressionData data;
    data.beta_true = regression_beta(spec.sim_id);
    data.x.resize(spec.t, p);
    data.y.resize(spec.t);
    Eigen::VectorXd z(p);
    for (long i = 0; i < spec.t; ++i) {
        for (int j = 0; j < p; ++j) z[j] = rng.normal();
        data.x.row(i) = (chol * z).transpose();
        const double eps = 3.0 * (gaussian ? rng.normal() : rng.student_t(2.0)) - shift;
        data.y[i] = data.x.row(i).dot(data.beta_true) + eps;
    }
    return data;
}

void CurveSimSpec::validate() const {
    if (t < 2) throw std::invalid_argument("curve sim: need at least two observations");
    if (sigma < 0.0) throw std::invalid_argument("curve sim: sigma must be nonnegative");
    if (!(nu > 0.0)) throw std::invalid_argument("curve sim: nu must be positive");
}

CurveSimSpec make_curve_spec(CurveKind curve, NoiseKind noise) {
    CurveSimSpec spec;
    spec.curve = curve;
    spec.noise = noise;
    if (curve == CurveKind::wave) {
        spec.t = 200;
        spec.sigma = std::sqrt(0.4);
    } else {
        spec.t = 512;
        spec.sigma = std::sqrt(0.1);
    }
    return spec;
}

double wave_fn(double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    return 4.0 * (x - 0.5) + 2.0 * std::exp(-256.0 * (x - 0.5) * (x - 0.5));
}

double doppler_fn(double x) {
    if (!(x > 0.0 && x < 1.0)) return 0.0;
    const double gamma = 0.15;
    return std::sqrt(0.2 * x * (1.0 - 0.2 * x)) *
           std::sin(2.0 * kPi * (1.0 + gamma) / (0.2 * x + gamma));
}

CurveData gen_curve_data(const CurveSimSpec& spec, RandomStream& rng) {
    spec.validate();
    CurveData data;
    data.x.resize(spec.t);
    data.y.resize(spec.t);
    for (long i = 0; i < spec.t; ++i) {
        const double x = static_cast<double>(i + 1) / static_cast<double>(spec.t + 1);
        const double f = spec.curve == CurveKind::wave ? wave_fn(x) : doppler_fn(x);
        const double eps =
            spec.noise == NoiseKind::gaussian ? rng.normal() : rng.student_t(spec.nu);
        data.x[i] = x;
        data.y[i] = f + curve_noise_scale(spec, x) * eps;
    }
    return data;
}

double curve_noise_scale(const CurveSimSpec& spec, double x) {
    switch (spec.noise) {
        case NoiseKind::gaussian:
        case NoiseKind::student_t: return spec.sigma;
        case NoiseKind::linear_het: return spec.sigma * (1.0 + x);
        case NoiseKind::quad_het: return spec.sigma * (1.0 + x * x);
    }
    throw std::invalid_argument("curve sim: unknown noise kind");
}

double curve_noise_quantile(const CurveSimSpec& spec, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("curve sim: tau in (0,1)");
    return spec.noise == NoiseKind::gaussian ? standard_normal_quantile(tau)
                                             : student_t_quantile(spec.nu, tau);
}

Eigen::VectorXd true_quantile_curve(const CurveSimSpec& spec, const Eigen::VectorXd& x,
                                    double tau) {
    const double q = curve_noise_quantile(spec, tau);
    Eigen::VectorXd truth(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double f = spec.curve == CurveKind::wave ? wave_fn(x[i]) : doppler_fn(x[i]);
        truth[i] = f + curve_noise_scale(spec, x[i]) * q;
    }
    return truth;
}

// ---- metrics ---------------------------------------------------------------

double mmad(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_true,
            const Eigen::MatrixXd& x) {
    if (beta_hat.size() != beta_true.size() || x.cols() != beta_hat.size()) {
        throw std::invalid_argument("mmad: dimension mismatch");
    }
    return (x * (beta_hat - beta_true)).cwiseAbs().mean();
}

double curve_mse(const Eigen::VectorXd& fitted, const Eigen::VectorXd& truth) {
    if (fitted.size() != truth.size()) throw std::invalid_argument("curve_mse: length mismatch");
    return (fitted - truth).squaredNorm() / static_cast<double>(fitted.size());
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// ---- experiment drivers ----------------------------------------------------

std::uint64_t substream_seed(std::uint64_t base, std::uint64_t k) {
    return base + 0x9E3779B97F4A7C15ULL * (k + 1);
}

std::vector<MixtureRow> run_mixture_experiment(const MixtureSpec& spec,
                                               const std::vector<double>& taus,
                                               int dataset_count,
                                               const ExperimentConfig& config) {
    if (dataset_count < 1) throw std::invalid_argument("mixture experiment: need >= 1 dataset");
    if (taus.empty()) throw std::invalid_argument("mixture experiment: need >= 1 quantile");
    std::vector<MixtureRow> rows;
    for (int rep = 0; rep < dataset_count; ++rep) {
        RandomStream data_rng(substream_seed(config.seed, static_cast<std::uint64_t>(rep)));
        const auto [y, x] = gen_mixture_data(spec, data_rng);
        Eigen::MatrixXd design(spec.t, 2);
        design.col(0) = Eigen::VectorXd::Ones(spec.t);
        design.col(1) = x;
        for (std::size_t ti = 0; ti < taus.size(); ++ti) {
            for (const bool pin_shape : {false, true}) {
                const std::uint64_t k =
                    1000 + 10 * (static_cast<std::uint64_t>(rep) * taus.size() + ti) +
                    (pin_shape ? 1 : 0);
                const LinearModelSpec fit = make_fit_spec(design, y, taus[ti], config,
                                                          substream_seed(config.seed, k),
                                                          pin_shape);
                const PosteriorDraws draws = run_linear_sampler(fit);
                MixtureRow row;
                row.dataset = rep;
                row.tau = taus[ti];
                row.model = pin_shape ? "ald" : "sep";
                row.intercept = column_mean(draws, "beta_0");
                row.slope = column_mean(draws, "beta_1");
                row.sigma = column_mean(draws, "sigma");
                row.alpha = column_mean(draws, "alpha");
                rows.push_back(row);
            }
        }
    }
    return rows;
}

std::vector<RegressionRow> run_regression_experiment(const RegressionSimSpec& spec,
                                                     const ExperimentConfig& config) {
    spec.validate();
    std::vector<RegressionRow> rows;
    for (int rep = 0; rep < spec.replicates; ++rep) {
        RandomStream data_rng(substream_seed(config.seed, static_cast<std::uint64_t>(rep)));
        const RegressionData data = gen_regression_data(spec, data_rng);
        // The fit carries a free intercept (a flexible-shape likelihood needs a
        // free location under misspecified errors), but the benchmark metric is
        // the accuracy of the slope plane x'beta over the eight covariates.
        const Eigen::Index p = data.x.cols();
        Eigen::MatrixXd design(spec.t, p + 1);
        design.col(0) = Eigen::VectorXd::Ones(spec.t);
        design.rightCols(p) = data.x;
        for (const bool pin_shape : {false, true}) {
            const std::uint64_t k = 1000 + 10 * static_cast<std::uint64_t>(rep) +
                                    (pin_shape ? 1 : 0);
            const LinearModelSpec fit = make_fit_spec(design, data.y, spec.tau, config,
                                                      substream_seed(config.seed, k), pin_shape);
            const PosteriorDraws draws = run_linear_sampler(fit);
            Eigen::VectorXd slopes(p);
            for (Eigen::Index j = 0; j < p; ++j) {
                slopes[j] = column_mean(draws, "beta_" + std::to_string(j + 1));
            }
            RegressionRow row;
            row.replicate = rep;
            row.model = pin_shape ? "ald" : "sep";
            row.mmad_value = mmad(slopes, data.beta_true, data.x);
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<CurveRow> run_curve_experiment(const CurveSimSpec& spec, double tau,
                                           int replicates, const ExperimentConfig& config) {
    spec.validate();
    if (replicates < 1) throw std::invalid_argument("curve experiment: need >= 1 replicate");
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("curve experiment: tau in (0,1)");
    std::vector<CurveRow> rows;
    for (int rep = 0; rep < replicates; ++rep) {
        RandomStream data_rng(substream_seed(config.seed, static_cast<std::uint64_t>(rep)));
        const CurveData data = gen_curve_data(spec, data_rng);
        const Eigen::VectorXd truth = true_quantile_curve(spec, data.x, tau);

        GamModelSpec gspec;
        gspec.x = Eigen::MatrixXd::Ones(spec.t, 1);
        gspec.y = data.y;
        gspec.tau = tau;
        SmoothSpec smooth;
        smooth.z = data.x;
        smooth.interior_knots = spec.curve == CurveKind::wave ? 20 : 25;
        smooth.order = 4;
        smooth.delta = 2;
        gspec.smooths.push_back(smooth);
        gspec.sampler.iterations = config.iterations;
        gspec.sampler.burn_in = config.burn_in;

        for (const bool pin_shape : {false, true}) {
            const std::uint64_t k = 1000 + 10 * static_cast<std::uint64_t>(rep) +
                                    (pin_shape ? 1 : 0);
            GamModelSpec fit = gspec;
            fit.sampler.seed = substream_seed(config.seed, k);
            if (pin_shape) fit.sampler.fixed_alpha = 1.0;
            const GamWorkspace ws = prepare_gam(fit);
            const PosteriorDraws draws = run_gam_sampler(fit);
            const Eigen::Index m = ws.blocks[0].dim();
            Eigen::VectorXd theta_mean(m);
            for (Eigen::Index c = 0; c < m; ++c) {
                theta_mean[c] = column_mean(draws, "s1_theta_" + std::to_string(c));
            }
            const Eigen::VectorXd fitted =
                Eigen::VectorXd::Constant(spec.t, column_mean(draws, "beta_0")) +
                ws.blocks[0].basis * theta_mean;
            CurveRow row;
            row.replicate = rep;
            row.model = pin_shape ? "ald" : "sep";
            row.mse = curve_mse(fitted, truth);
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace sepqr
