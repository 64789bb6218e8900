#include "sepqr/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace sepqr {

std::pair<double, double> hpd_interval(const Eigen::VectorXd& column, double level) {
    const Eigen::Index n = column.size();
    if (n < 1) throw std::invalid_argument("hpd_interval: empty column");
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("hpd_interval: level must lie in (0, 1)");
    }
    std::vector<double> sorted(column.data(), column.data() + n);
    std::sort(sorted.begin(), sorted.end());
    const auto window = std::min<Eigen::Index>(
        n, static_cast<Eigen::Index>(std::ceil(level * static_cast<double>(n))));
    // scan every window of that size; keep the narrowest
    Eigen::Index best = 0;
    double best_width = sorted[window - 1] - sorted[0];
    for (Eigen::Index i = 1; i + window <= n; ++i) {
        const double width = sorted[i + window - 1] - sorted[i];
        if (width < best_width) {
            best_width = width;
            best = i;
        }
    }
    return {sorted[best], sorted[best + window - 1]};
}

double effective_sample_size(const Eigen::VectorXd& column) {
    const Eigen::Index n = column.size();
    if (n < 2) throw std::invalid_argument("effective_sample_size: need at least 2 draws");
    const double nd = static_cast<double>(n);
    const double mean = column.mean();
    const Eigen::VectorXd centered = column.array() - mean;
    const double var = centered.squaredNorm() / nd;
    if (var == 0.0) return nd;  // constant column: treat as independent

    auto rho = [&](Eigen::Index k) {
        return centered.head(n - k).dot(centered.tail(n - k)) / (nd * var);
    };
    // pair autocorrelations and stop at the first nonpositive pair
    double sum = 0.0;
    for (Eigen::Index m = 0; 2 * m + 1 < n; ++m) {
        const double pair = rho(2 * m) + rho(2 * m + 1);
        if (pair <= 0.0) break;
        sum += pair;
    }
    const double tau = -1.0 + 2.0 * sum;
    if (tau <= 0.0) return nd;
    return std::min(nd, nd / tau);
}

std::vector<ParameterSummary> summarize(const PosteriorDraws& draws, double level) {
    if (draws.samples.rows() < 2) {
        throw std::invalid_argument("summarize: need at least 2 retained draws");
    }
    if (draws.samples.cols() != static_cast<Eigen::Index>(draws.parameter_names.size())) {
        throw std::invalid_argument("summarize: name/column count mismatch");
    }
    std::vector<ParameterSummary> table;
    table.reserve(draws.parameter_names.size());
    const double nd = static_cast<double>(draws.samples.rows());
    for (std::size_t j = 0; j < draws.parameter_names.size(); ++j) {
        const Eigen::VectorXd column = draws.samples.col(static_cast<Eigen::Index>(j));
        ParameterSummary row;
        row.name = draws.parameter_names[j];
        row.mean = column.mean();
        row.sd = std::sqrt((column.array() - row.mean).square().sum() / (nd - 1.0));
        const auto [lo, hi] = hpd_interval(column, level);
        row.hpd_low = lo;
        row.hpd_high = hi;
        row.ess = effective_sample_size(column);
        table.push_back(std::move(row));
    }
    return table;
}

std::map<std::string, double> acceptance_report(const PosteriorDraws& draws) {
    return draws.acceptance_rate;
}

}  // namespace sepqr
