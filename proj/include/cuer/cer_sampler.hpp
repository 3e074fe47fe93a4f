#pragma once
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/strategy.hpp"

namespace cuer {

/**
 * Combined experience replay wrapper. Delegates to an inner strategy, then
 * replaces the last batch element with the most recent transition, so every
 * emitted batch contains the latest experience at unchanged batch size.
 * The replaced inner draw is treated as never sampled: on_sampled forwards
 * only the n-1 retained occurrences.
 */
class CerSampler final : public SamplingStrategy {
public:
    CerSampler(std::unique_ptr<SamplingStrategy> inner, const ReplayBuffer& buffer,
               std::string name)
        : inner_(std::move(inner)), buffer_(buffer), name_(std::move(name)) {}

    void on_push(std::size_t slot, const Transition& t) override { inner_->on_push(slot, t); }
    void on_evict(std::size_t slot) override { inner_->on_evict(slot); }

    Batch sample(std::size_t n, Rng& rng) override {
        if (buffer_.size() == 0) throw EmptyError("cer sample: buffer is empty");
        Batch batch = inner_->sample(n, rng);
        batch.slots.back() = buffer_.latest_slot();
        batch.transitions.back() = buffer_.latest();
        batch.weights.back() = 1.0;
        batch.probs.back() = 1.0;
        return batch;
    }

    void on_sampled(const std::vector<std::size_t>& slot_occurrences) override {
        if (slot_occurrences.empty()) return;
        std::vector<std::size_t> retained(slot_occurrences.begin(),
                                          slot_occurrences.end() - 1);
        inner_->on_sampled(retained);
    }

    void update_feedback(const std::vector<std::size_t>& slots,
                         const std::vector<double>& td_errors) override {
        inner_->update_feedback(slots, td_errors);
    }

    double probability(std::size_t slot) const override { return inner_->probability(slot); }
    void set_beta_progress(double frac) override { inner_->set_beta_progress(frac); }
    double beta() const override { return inner_->beta(); }
    double total_priority() const override { return inner_->total_priority(); }
    std::uint64_t floor_hits() const override { return inner_->floor_hits(); }
    const std::string& name() const override { return name_; }

    const SamplingStrategy& inner() const { return *inner_; }

private:
    std::unique_ptr<SamplingStrategy> inner_;
    const ReplayBuffer& buffer_;
    std::string name_;
};

} // namespace cuer
