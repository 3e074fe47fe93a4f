#pragma once
#include <algorithm>
#include <cmath>
#include <vector>

namespace cuer {

/**
 * Central-difference gradient of a scalar loss over a parameter vector:
 * g_i = (f(p + h e_i) - f(p - h e_i)) / 2h. The loss callable is invoked
 * with the perturbed vector and must not retain state between calls.
 */
template <typename LossFn>
std::vector<double> finite_difference_gradient(std::vector<double> params, LossFn&& loss,
                                               double h = 1e-5) {
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const double saved = params[i];
        params[i] = saved + h;
        const double plus = loss(params);
        params[i] = saved - h;
        const double minus = loss(params);
        params[i] = saved;
        grad[i] = (plus - minus) / (2.0 * h);
    }
    return grad;
}

/// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor); the floor keeps near-zero
/// components from dominating via division noise.
inline double max_relative_error(const std::vector<double>& a, const std::vector<double>& b,
                                 double floor = 1e-6) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), floor});
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    }
    return worst;
}

} // namespace cuer
