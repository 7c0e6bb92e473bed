#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "labelrank/errors.hpp"

namespace labelrank {

// Inputs of the high-probability rate bound for the pairwise empirical risk
// minimizers, plus the two derived constants
//
//   h    = eps^(3-2a) * (1-a)^(1-a) * a^a / B^(1-a)
//   beta = B^(1-a) / ((1-a)^(1-a) * a^a)
//
// with the convention 0^0 = 1 at the alpha endpoints. C is the absolute
// constant from the localized Rademacher complexity bound and has no value
// in closed form; callers supply it, which makes the calculator shape-only.
struct RateBoundParams {
    double alpha;
    double B;
    double eps;
    double V;
    double C;
    double h;     // derived
    double beta;  // derived

    RateBoundParams(double alpha_, double B_, double eps_, double V_, double C_)
        : alpha(alpha_), B(B_), eps(eps_), V(V_), C(C_) {
        if (alpha < 0.0 || alpha > 1.0)
            throw parameter_error("RateBoundParams: alpha must lie in [0,1], got " + std::to_string(alpha));
        if (!(B > 0.0)) throw parameter_error("RateBoundParams: B must be positive");
        if (!(eps > 0.0) || eps > 1.0)
            throw parameter_error("RateBoundParams: eps must lie in (0,1], got " + std::to_string(eps));
        if (V < 1.0) throw parameter_error("RateBoundParams: V must be at least 1");
        if (!(C > 0.0)) throw parameter_error("RateBoundParams: C must be positive");
        // std::pow(0,0) = 1, which matches the stated endpoint convention.
        const double shape = std::pow(1.0 - alpha, 1.0 - alpha) * std::pow(alpha, alpha);
        h = std::pow(eps, 3.0 - 2.0 * alpha) * shape / std::pow(B, 1.0 - alpha);
        beta = std::pow(B, 1.0 - alpha) / shape;
    }
};

namespace detail {
inline void require_interior_alpha(double alpha, const char* fn) {
    if (alpha <= 0.0 || alpha >= 1.0)
        throw endpoint_error(std::string(fn) +
                             ": alpha must lie strictly inside (0,1); see README for the endpoint "
                             "conventions");
}
}  // namespace detail

// r_n(delta) = 2 * (1/(n h))^(1/(2-a)) *
//              [ (64 C^2 V log n)^(1/(2-a)) + (32 log(2/delta))^(1/(2-a)) ].
inline double rate_bound(const RateBoundParams& params, long n, double delta) {
    detail::require_interior_alpha(params.alpha, "rate_bound");
    if (n < 2) throw parameter_error("rate_bound: n must be at least 2");
    if (!(delta > 0.0 && delta < 1.0))
        throw parameter_error("rate_bound: delta must lie in (0,1), got " + std::to_string(delta));
    const double exponent = 1.0 / (2.0 - params.alpha);
    const double log_n = std::log(static_cast<double>(n));
    const double complexity_term = std::pow(64.0 * params.C * params.C * params.V * log_n, exponent);
    const double confidence_term = std::pow(32.0 * std::log(2.0 / delta), exponent);
    return 2.0 * std::pow(1.0 / (static_cast<double>(n) * params.h), exponent) *
           (complexity_term + confidence_term);
}

// Upper bound on the sample size past which the logarithmic term of the rate
// dominates:
//
//   ceil(max{ (2/delta)^(1/(2 C^2 V)),
//             log(2/delta) * ((16/3)^(2-a) / (32 beta eps^a))^(1/(1-a)) }).
inline std::uint64_t n0_upper_bound(const RateBoundParams& params, double delta) {
    detail::require_interior_alpha(params.alpha, "n0_upper_bound");
    if (!(delta > 0.0 && delta < 1.0))
        throw parameter_error("n0_upper_bound: delta must lie in (0,1), got " + std::to_string(delta));
    const double a = params.alpha;
    const double first = std::pow(2.0 / delta, 1.0 / (2.0 * params.C * params.C * params.V));
    const double ratio = std::pow(16.0 / 3.0, 2.0 - a) / (32.0 * params.beta * std::pow(params.eps, a));
    const double second = std::log(2.0 / delta) * std::pow(ratio, 1.0 / (1.0 - a));
    const double bound = std::ceil(std::max(first, second));
    return bound < 1.0 ? 1 : static_cast<std::uint64_t>(bound);
}

}  // namespace labelrank
