#pragma once
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/rng.hpp"

namespace cuer {

/// Reusable forward-pass activations; backward needs the post-activation
/// value of every layer (tanh' is recoverable from the output alone).
struct MlpCache {
    std::vector<std::vector<double>> acts;
};

/**
 * Dense tanh network over a single flat parameter vector.
 *
 * Layout per layer l (in -> out): weights row-major [out][in], then biases
 * [out]. Hidden activations are tanh; the output layer is tanh or identity
 * per `tanh_output`. Parameters initialize uniform in +-1/sqrt(fan_in),
 * drawn from the provided seeded stream, so two nets built from equal seeds
 * are identical.
 */
class Mlp {
public:
    Mlp(std::vector<std::size_t> sizes, bool tanh_output, Rng& rng)
        : sizes_(std::move(sizes)), tanh_output_(tanh_output) {
        if (sizes_.size() < 2) {
            throw std::invalid_argument("Mlp: need at least input and output sizes");
        }
        for (std::size_t s : sizes_) {
            if (s == 0) throw std::invalid_argument("Mlp: layer size must be >= 1");
        }
        std::size_t count = 0;
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            offsets_.push_back(count);
            count += sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
        }
        params_.resize(count);
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            const double bound = 1.0 / std::sqrt(static_cast<double>(sizes_[l]));
            double* p = params_.data() + offsets_[l];
            const std::size_t n = sizes_[l] * sizes_[l + 1] + sizes_[l + 1];
            for (std::size_t i = 0; i < n; ++i) p[i] = rng.uniform(-bound, bound);
        }
    }

    const std::vector<std::size_t>& sizes() const { return sizes_; }
    bool tanh_output() const { return tanh_output_; }
    std::size_t input_dim() const { return sizes_.front(); }
    std::size_t output_dim() const { return sizes_.back(); }
    std::size_t param_count() const { return params_.size(); }
    std::vector<double>& params() { return params_; }
    const std::vector<double>& params() const { return params_; }

    /// Runs the stack, retaining activations in `cache` for backward.
    /// Returns the output activation (owned by the cache).
    const std::vector<double>& forward(const std::vector<double>& x, MlpCache& cache) const {
        if (x.size() != sizes_.front()) {
            throw std::invalid_argument("Mlp::forward: input dimension mismatch");
        }
        for (double v : x) {
            if (!std::isfinite(v)) throw NumericError("Mlp::forward: non-finite input");
        }
        cache.acts.resize(sizes_.size());
        cache.acts[0] = x;
        for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
            const std::size_t in = sizes_[l];
            const std::size_t out = sizes_[l + 1];
            const double* w = params_.data() + offsets_[l];
            const double* b = w + in * out;
            const std::vector<double>& h = cache.acts[l];
            std::vector<double>& z = cache.acts[l + 1];
            z.assign(out, 0.0);
            for (std::size_t i = 0; i < out; ++i) {
                double acc = b[i];
                const double* row = w + i * in;
                for (std::size_t j = 0; j < in; ++j) acc += row[j] * h[j];
                z[i] = acc;
            }
            const bool is_output = (l + 2 == sizes_.size());
            if (!is_output || tanh_output_) {
                for (double& v : z) v = std::tanh(v);
            }
        }
        return cache.acts.back();
    }

    /**
     * Backpropagates dL/dy through the cached pass. Parameter gradients are
     * ACCUMULATED into `grad` (callers zero it once per batch); the input
     * gradient, when requested, is OVERWRITTEN (it is per-sample).
     */
    void backward(const MlpCache& cache, const std::vector<double>& dy,
                  std::vector<double>& grad, std::vector<double>* input_grad = nullptr) const {
        if (cache.acts.size() != sizes_.size() || cache.acts[0].size() != sizes_.front()) {
            throw std::invalid_argument("Mlp::backward: cache does not match network");
        }
        if (dy.size() != sizes_.back()) {
            throw std::invalid_argument("Mlp::backward: output gradient dimension mismatch");
        }
        if (grad.size() != params_.size()) {
            throw std::invalid_argument("Mlp::backward: gradient buffer size mismatch");
        }

        std::vector<double>& dz = scratch_dz_;
        std::vector<double>& dh = scratch_dh_;
        dz.assign(dy.begin(), dy.end());
        if (tanh_output_) {
            const std::vector<double>& y = cache.acts.back();
            for (std::size_t i = 0; i < dz.size(); ++i) dz[i] *= 1.0 - y[i] * y[i];
        }
        for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
            const std::size_t in = sizes_[l];
            const std::size_t out = sizes_[l + 1];
            const double* w = params_.data() + offsets_[l];
            double* gw = grad.data() + offsets_[l];
            double* gb = gw + in * out;
            const std::vector<double>& h = cache.acts[l];

            for (std::size_t i = 0; i < out; ++i) {
                double* grow = gw + i * in;
                const double d = dz[i];
                for (std::size_t j = 0; j < in; ++j) grow[j] += d * h[j];
                gb[i] += d;
            }

            const bool need_dh = (l > 0) || (input_grad != nullptr);
            if (!need_dh) break;
            dh.assign(in, 0.0);
            for (std::size_t i = 0; i < out; ++i) {
                const double* row = w + i * in;
                const double d = dz[i];
                for (std::size_t j = 0; j < in; ++j) dh[j] += row[j] * d;
            }
            if (l > 0) {
                // hidden layers are tanh
                for (std::size_t j = 0; j < in; ++j) dh[j] *= 1.0 - h[j] * h[j];
                std::swap(dz, dh);
            } else if (input_grad) {
                *input_grad = dh;
            }
        }
    }

private:
    std::vector<std::size_t> sizes_;
    bool tanh_output_;
    std::vector<std::size_t> offsets_;
    std::vector<double> params_;
    mutable std::vector<double> scratch_dz_;
    mutable std::vector<double> scratch_dh_;
};

} // namespace cuer
