#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cuer/errors.hpp"

namespace cuer {

/// Bias-corrected Adam accumulators for one parameter vector.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t t = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

/// One Adam update. Validates every gradient component before touching any
/// state, so a numeric failure leaves parameters and accumulators unchanged.
inline void adam_step(std::vector<double>& params, const std::vector<double>& grads,
                      AdamState& state, double lr) {
    if (params.size() != grads.size() || params.size() != state.m.size()) {
        throw std::invalid_argument("adam_step: size mismatch");
    }
    for (double g : grads) {
        if (!std::isfinite(g)) throw NumericError("adam_step: non-finite gradient");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
        state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
        const double m_hat = state.m[i] / bc1;
        const double v_hat = state.v[i] / bc2;
        params[i] -= lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
}

/// target := (1 - tau) * target + tau * online, parameter-wise.
inline void polyak_blend(std::vector<double>& target, const std::vector<double>& online,
                         double tau) {
    if (target.size() != online.size()) {
        throw std::invalid_argument("polyak_blend: size mismatch");
    }
    if (!(tau > 0.0) || tau > 1.0) {
        throw std::invalid_argument("polyak_blend: tau must be in (0, 1]");
    }
    for (std::size_t i = 0; i < target.size(); ++i) {
        target[i] = (1.0 - tau) * target[i] + tau * online[i];
    }
}

/// Scales the gradient so its l2 norm is at most max_norm. Returns the
/// pre-clip norm.
inline double clip_global_norm(std::vector<double>& grads, double max_norm) {
    if (!(max_norm > 0.0)) throw std::invalid_argument("clip_global_norm: max_norm must be > 0");
    double sq = 0.0;
    for (double g : grads) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > max_norm) {
        const double scale = max_norm / norm;
        for (double& g : grads) g *= scale;
    }
    return norm;
}

} // namespace cuer
