// diagnostics.hpp: posterior summarization. Means, standard deviations,
// shortest-window HPD intervals, Geyer initial-positive-sequence effective
// sample sizes, and the per-block acceptance rates recorded by the samplers.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sepqr/draws.hpp"

namespace sepqr {

struct ParameterSummary {
    std::string name;
    double mean = 0.0;
    double sd = 0.0;
    double hpd_low = 0.0;
    double hpd_high = 0.0;
    double ess = 0.0;
};

// Shortest contiguous window over the sorted sample containing
// ceil(level * n) draws.  Assumes a unimodal marginal, the standard
// reporting convention for HPD credible sets.
std::pair<double, double> hpd_interval(const Eigen::VectorXd& column, double level);

// Geyer initial-positive-sequence estimator: sum paired autocorrelations
// Gamma_m = rho_{2m} + rho_{2m+1} until the first nonpositive pair, then
// ess = n / (-1 + 2 sum Gamma_m), clamped to at most n.  A constant column
// counts as fully independent (ess = n).
double effective_sample_size(const Eigen::VectorXd& column);

// One row per parameter, in the draws' column order.  Throws
// std::invalid_argument unless there are at least 2 retained draws and
// level is in (0, 1).
std::vector<ParameterSummary> summarize(const PosteriorDraws& draws, double level = 0.95);

// Per-block acceptance rates as recorded while sampling.
std::map<std::string, double> acceptance_report(const PosteriorDraws& draws);

}  // namespace sepqr
