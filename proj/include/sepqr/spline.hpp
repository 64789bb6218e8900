// spline.hpp: B-spline bases and difference penalties for the smooth terms.
#pragma once

#include <Eigen/Dense>

namespace sepqr {

// Raw (uncentered) B-spline design matrix: k equally spaced interior knots
// strictly inside [min z, max z], spline order d (order 4 = cubic), giving
// k + d columns.  Boundary knots continue the equidistant spacing.
Eigen::MatrixXd build_bspline_basis(const Eigen::VectorXd& z, int interior_knots, int order);

// (m - delta) x m matrix of delta-th order difference coefficients; rows of
// the delta = 2 version are (1, -2, 1).
Eigen::MatrixXd build_difference_matrix(int m, int delta);

struct SplineBlockConfig {
    Eigen::VectorXd z;
    int interior_knots = 20;
    int order = 4;
    int delta = 2;
};

// One smooth term, ready for sampling: centered basis plus penalty.
struct SplineBlock {
    Eigen::MatrixXd basis;          // T x m, column-centered
    Eigen::RowVectorXd column_means;
    Eigen::MatrixXd difference;     // (m - delta) x m
    Eigen::MatrixXd penalty;        // difference' * difference
    int interior_knots = 0;
    int order = 0;
    int delta = 0;

    Eigen::Index dim() const { return basis.cols(); }
};

SplineBlock make_spline_block(const SplineBlockConfig& config);

}  // namespace sepqr
