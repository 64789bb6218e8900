// Shared helpers for the test suite: quadrature wrappers and sample statistics.
// These are the reference oracles; they must stay independent of the library
// code paths they are used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace testutil {

// Integral of f over the whole real line, split at a point near the mass.
inline double integrate_real_line(const std::function<double(double)>& f, double split) {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double left = integrator.integrate([&](double t) { return f(split - t); }, 1e-12);
    const double right = integrator.integrate([&](double t) { return f(split + t); }, 1e-12);
    return left + right;
}

// Integral of f over (-inf, b], split at an interior point.
inline double integrate_left_tail(const std::function<double(double)>& f, double split, double b) {
    boost::math::quadrature::exp_sinh<double> tail;
    boost::math::quadrature::tanh_sinh<double> finite;
    const double left = tail.integrate([&](double t) { return f(split - t); }, 1e-12);
    const double mid = finite.integrate(f, split, b, 1e-12);
    return left + mid;
}

// Integral of f over (0, inf).
inline double integrate_positive_axis(const std::function<double(double)>& f) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, 1e-12);
}

// Two-sided Kolmogorov-Smirnov statistic of a sample against a CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    }
    return d;
}

// Asymptotic Kolmogorov critical value: sqrt(-log(level/2) / 2) / sqrt(n).
inline double ks_critical(std::size_t n, double level) {
    return std::sqrt(-std::log(level / 2.0) / 2.0) / std::sqrt(static_cast<double>(n));
}

inline double sample_mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double sample_var(const std::vector<double>& x) {
    const double m = sample_mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / (static_cast<double>(x.size()) - 1.0);
}

}  // namespace testutil
