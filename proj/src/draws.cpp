#include "sepqr/draws.hpp"

#include <stdexcept>

namespace sepqr {

Eigen::Index PosteriorDraws::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < parameter_names.size(); ++i) {
        if (parameter_names[i] == name) {
            return static_cast<Eigen::Index>(i);
        }
    }
    throw std::invalid_argument("PosteriorDraws: unknown parameter '" + name + "'");
}

Eigen::VectorXd PosteriorDraws::column(const std::string& name) const {
    return samples.col(column_index(name));
}

}  // namespace sepqr
