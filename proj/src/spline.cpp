#include "sepqr/spline.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sepqr {

Eigen::MatrixXd build_bspline_basis(const Eigen::VectorXd& z, int interior_knots, int order) {
    if (interior_knots < 1 || order < 1) {
        throw std::invalid_argument("build_bspline_basis: need interior_knots >= 1 and order >= 1");
    }
    if (z.size() < 2) {
        throw std::invalid_argument("build_bspline_basis: need at least two sample points");
    }
    const double zmin = z.minCoeff();
    const double zmax = z.maxCoeff();
    if (!(zmax > zmin)) {
        throw std::invalid_argument("build_bspline_basis: covariate is constant");
    }

    const int k = interior_knots;
    const int d = order;
    const int degree = d - 1;
    const int ncols = k + d;
    const double step = (zmax - zmin) / (k + 1.0);

    // Equidistant knot sequence extended by (d - 1) knots past each boundary:
    // t[i] = zmin + (i - degree) * step, i = 0 .. k + 2d - 1.
    std::vector<double> t(k + 2 * d);
    for (int i = 0; i < static_cast<int>(t.size()); ++i) {
        t[i] = zmin + (i - degree) * step;
    }

    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(z.size(), ncols);
    std::vector<double> n(d), left(d), right(d);
    for (Eigen::Index row = 0; row < z.size(); ++row) {
        const double x = z[row];
        int span = degree + static_cast<int>(std::floor((x - zmin) / step));
        span = std::min(std::max(span, degree), k + d - 1);

        // Cox-de Boor triangular scheme over the d nonzero functions at x.
        n[0] = 1.0;
        for (int j = 1; j <= degree; ++j) {
            left[j] = x - t[span + 1 - j];
            right[j] = t[span + j] - x;
            double saved = 0.0;
            for (int r = 0; r < j; ++r) {
                const double temp = n[r] / (right[r + 1] + left[j - r]);
                n[r] = saved + right[r + 1] * temp;
                saved = left[j - r] * temp;
            }
            n[j] = saved;
        }
        for (int r = 0; r <= degree; ++r) {
            basis(row, span - degree + r) = n[r];
        }
    }
    return basis;
}

Eigen::MatrixXd build_difference_matrix(int m, int delta) {
    if (delta < 1 || m <= delta) {
        throw std::invalid_argument("build_difference_matrix: need 1 <= delta < m");
    }
    // Stencil of binomial coefficients with alternating signs, e.g. (1, -2, 1).
    std::vector<double> stencil(delta + 1);
    double coeff = 1.0;
    for (int j = 0; j <= delta; ++j) {
        stencil[j] = ((delta - j) % 2 == 0) ? coeff : -coeff;
        coeff = coeff * (delta - j) / (j + 1.0);
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m - delta, m);
    for (int i = 0; i < m - delta; ++i) {
        for (int j = 0; j <= delta; ++j) {
            d(i, i + j) = stencil[j];
        }
    }
    return d;
}

SplineBlock make_spline_block(const SplineBlockConfig& config) {
    SplineBlock block;
    block.interior_knots = config.interior_knots;
    block.order = config.order;
    block.delta = config.delta;
    block.basis = build_bspline_basis(config.z, config.interior_knots, config.order);
    block.column_means = block.basis.colwise().mean();
    block.basis.rowwise() -= block.column_means;
    block.difference = build_difference_matrix(static_cast<int>(block.basis.cols()), config.delta);
    block.penalty = block.difference.transpose() * block.difference;
    return block;
}

}  // namespace sepqr
