#pragma once
#include <cstddef>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/strategy.hpp"

namespace cuer {

/// Uniform i.i.d. sampling with replacement over occupied slots.
class UniformSampler final : public SamplingStrategy {
public:
    explicit UniformSampler(const ReplayBuffer& buffer) : buffer_(buffer) {}

    void on_push(std::size_t, const Transition&) override {}
    void on_sampled(const std::vector<std::size_t>&) override {}
    void on_evict(std::size_t) override {}

    Batch sample(std::size_t n, Rng& rng) override {
        const std::size_t size = buffer_.size();
        if (size == 0) throw EmptyError("uniform sample: buffer is empty");
        Batch batch;
        batch.slots.reserve(n);
        batch.transitions.reserve(n);
        const double p = 1.0 / static_cast<double>(size);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t slot = rng.uniform_int(size);
            batch.slots.push_back(slot);
            batch.transitions.push_back(buffer_.get(slot));
        }
        batch.weights.assign(n, 1.0);
        batch.probs.assign(n, p);
        return batch;
    }

    double probability(std::size_t slot) const override {
        if (slot >= buffer_.size()) {
            throw std::invalid_argument("uniform probability: unoccupied slot");
        }
        return 1.0 / static_cast<double>(buffer_.size());
    }

    const std::string& name() const override { return name_; }

private:
    const ReplayBuffer& buffer_;
    std::string name_ = "uniform";
};

} // namespace cuer
