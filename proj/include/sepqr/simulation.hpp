// simulation.hpp: benchmark data generators, evaluation metrics, and the
// experiment drivers that fit every dataset twice — once with the shape
// parameter free and once pinned at 1 (the asymmetric-Laplace special case)
// — so the two likelihoods can be compared on equal terms.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sepqr/rng.hpp"

namespace sepqr {

// ---- generators -----------------------------------------------------------

// Three-component contaminated bivariate normal; the response is the first
// coordinate.  Both the within-component and the pooled regression slope of
// y on x equal cov(0,1) because every component is centered at x = 0.  The
// sampler normalizes the weights, so they only need to be near unit mass.
struct MixtureSpec {
    Eigen::Vector3d weights{0.85, 0.0725, 0.0725};
    std::array<Eigen::Vector2d, 3> means{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(4.0, 0.0),
                                         Eigen::Vector2d(-2.0, 0.0)};
    Eigen::Matrix2d cov{{1.0, 0.6}, {0.6, 1.0}};
    long t = 100;

    void validate() const;
};

// (y, x): component per weights, then one bivariate normal draw.
std::pair<Eigen::VectorXd, Eigen::VectorXd> gen_mixture_data(const MixtureSpec& spec,
                                                             RandomStream& rng);

enum class ErrorKind { gaussian, generalized_student_t };

// Linear-model benchmark: 8 covariates with AR(1)-type correlation 0.5^|i-j|,
// errors scaled by 3 and shifted so their tau-quantile is exactly 0.
struct RegressionSimSpec {
    int sim_id = 1;  // 1: sparse, 2: dense, 3: single large coefficient
    ErrorKind error_kind = ErrorKind::gaussian;
    double tau = 0.5;
    long t = 200;
    int replicates = 10;

    void validate() const;
};

// True coefficient vector for a simulation id.
Eigen::VectorXd regression_beta(int sim_id);

struct RegressionData {
    Eigen::VectorXd y;
    Eigen::MatrixXd x;
    Eigen::VectorXd beta_true;
};

RegressionData gen_regression_data(const RegressionSimSpec& spec, RandomStream& rng);

enum class CurveKind { wave, doppler };
enum class NoiseKind { gaussian, student_t, linear_het, quad_het };

// Nonlinear benchmark curves observed on a deterministic equally spaced
// interior grid of (0,1).  The heteroskedastic kinds use Student-t noise.
struct CurveSimSpec {
    CurveKind curve = CurveKind::wave;
    NoiseKind noise = NoiseKind::gaussian;
    long t = 200;          // 200 wave / 512 doppler
    double sigma = 1.0;    // sqrt(0.4) wave / sqrt(0.1) doppler
    double nu = 2.0;       // Student-t degrees of freedom

    void validate() const;
};

// Canonical settings for a curve: T and sigma as used in the benchmarks.
CurveSimSpec make_curve_spec(CurveKind curve, NoiseKind noise);

// zero outside (0,1) by the indicator in both definitions
double wave_fn(double x);
double doppler_fn(double x);

struct CurveData {
    Eigen::VectorXd y;
    Eigen::VectorXd x;
};

CurveData gen_curve_data(const CurveSimSpec& spec, RandomStream& rng);

// s(x): sigma, sigma, sigma(1+x), sigma(1+x^2) by noise kind.
double curve_noise_scale(const CurveSimSpec& spec, double x);

// tau-quantile of the unscaled noise: standard normal or Student-t(nu).
double curve_noise_quantile(const CurveSimSpec& spec, double tau);

// f(x) + s(x) * q_eps(tau) on the given locations.
Eigen::VectorXd true_quantile_curve(const CurveSimSpec& spec, const Eigen::VectorXd& x,
                                    double tau);

// ---- metrics ---------------------------------------------------------------

// mean over rows of |x_t'(beta_hat - beta_true)|
double mmad(const Eigen::VectorXd& beta_hat, const Eigen::VectorXd& beta_true,
            const Eigen::MatrixXd& x);

double curve_mse(const Eigen::VectorXd& fitted, const Eigen::VectorXd& truth);

// sample median (average of the central pair for even sizes)
double median(std::vector<double> values);

// ---- experiment drivers ----------------------------------------------------

struct ExperimentConfig {
    long iterations = 20000;
    long burn_in = 5000;
    std::uint64_t seed = 1;
};

// Deterministic per-replicate stream seed.
std::uint64_t substream_seed(std::uint64_t base, std::uint64_t k);

// One fitted model on one mixture dataset at one quantile level.
struct MixtureRow {
    int dataset = 0;
    double tau = 0.5;
    std::string model;  // "sep" | "ald"
    double intercept = 0.0;
    double slope = 0.0;
    double sigma = 0.0;
    double alpha = 0.0;
};

std::vector<MixtureRow> run_mixture_experiment(const MixtureSpec& spec,
                                               const std::vector<double>& taus,
                                               int dataset_count,
                                               const ExperimentConfig& config);

struct RegressionRow {
    int replicate = 0;
    std::string model;
    double mmad_value = 0.0;
};

// spec.replicates replicates; each fits an intercept plus the 8 covariates,
// and the reported error is the mean absolute deviation of the slope plane
// x'beta over the data rows (the intercept is excluded from the metric).
std::vector<RegressionRow> run_regression_experiment(const RegressionSimSpec& spec,
                                                     const ExperimentConfig& config);

struct CurveRow {
    int replicate = 0;
    std::string model;
    double mse = 0.0;
};

// Intercept-only parametric part plus one smooth (20 knots wave / 25
// doppler, order 4, second differences); MSE of the posterior-mean fitted
// curve against the true tau-quantile curve.
std::vector<CurveRow> run_curve_experiment(const CurveSimSpec& spec, double tau,
                                           int replicates, const ExperimentConfig& config);

}  // namespace sepqr
