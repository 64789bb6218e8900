// draws.hpp: immutable result of one sampler run.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sepqr {

struct PosteriorDraws {
    std::vector<std::string> parameter_names;
    Eigen::MatrixXd samples;         // (iterations - burn_in) x parameters
    Eigen::VectorXd log_likelihood;  // one entry per retained draw
    std::map<std::string, double> acceptance_rate;  // Metropolis block -> rate
    long iterations = 0;
    long burn_in = 0;
    std::uint64_t seed = 0;
    double tau = 0.5;
    std::string model;

    // Throws std::invalid_argument when the label is unknown.
    Eigen::Index column_index(const std::string& name) const;
    Eigen::VectorXd column(const std::string& name) const;
};

}  // namespace sepqr
