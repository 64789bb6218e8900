// gig.hpp: generalized inverse Gaussian draws for the mixing variables.
//
// Parametrized by the kernel x^{p-1} exp{-(chi/x + psi x)/2} on x > 0.
// chi = 0 (p > 0) and psi = 0 (p < 0) degenerate to the exact Gamma and
// inverse-Gamma limits.
#pragma once

#include "sepqr/rng.hpp"

namespace sepqr {

struct GigParams {
    double p = 0.5;
    double chi = 1.0;
    double psi = 1.0;

    void validate() const;
};

// Unnormalized log density; -inf for x <= 0.
double gig_log_kernel(double x, const GigParams& params);

// One exact draw.  Rejection sampler valid over the whole parameter range
// (ratio-of-uniforms with and without mode shift, plus a three-piece hat for
// small chi*psi), following Hormann and Leydold.
double gig_sample(const GigParams& params, RandomStream& rng);

}  // namespace sepqr
