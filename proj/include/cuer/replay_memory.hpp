#pragma once
#include <memory>
#include <optional>
#include <string>
#include <utility>

#include "cuer/batch.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/replay_log.hpp"
#include "cuer/sampler_factory.hpp"
#include "cuer/strategy.hpp"

namespace cuer {

/**
 * Replay buffer coupled to a sampling strategy and an optional binary event
 * log. Keeps the strategy's slot view consistent with the buffer: push
 * notifies on_evict for an overwritten occupant before on_push for the new
 * one, and sample applies on_sampled to the emitted batch before returning.
 */
class ReplayMemory {
public:
    ReplayMemory(std::size_t capacity, std::size_t obs_dim, std::size_t act_dim,
                 const SamplerOptions& options)
        : buffer_(capacity, obs_dim, act_dim),
          strategy_(make_sampler(options, buffer_)),
          batch_size_(options.batch_size) {}

    /// Starts logging push/sample/evict events to `path`.
    void attach_log(const std::string& path) {
        replay_log::Header header;
        header.obs_dim = static_cast<std::uint32_t>(buffer_.obs_dim());
        header.act_dim = static_cast<std::uint32_t>(buffer_.act_dim());
        header.batch_size = static_cast<std::uint32_t>(batch_size_);
        log_ = std::make_unique<replay_log::Writer>(path, header);
    }

    ReplayBuffer::PushResult push(Transition t) {
        const std::uint64_t env_step = t.birth_step;
        auto result = buffer_.push(std::move(t));
        if (result.evicted) {
            strategy_->on_evict(result.slot);
            if (log_) log_->evict(env_step, result.evicted->id);
        }
        const Transition& stored = buffer_.get(result.slot);
        strategy_->on_push(result.slot, stored);
        if (log_) log_->push(stored);
        return result;
    }

    Batch sample(std::size_t n, Rng& rng, std::uint64_t env_step) {
        Batch batch = strategy_->sample(n, rng);
        if (log_) {
            for (std::size_t i = 0; i < batch.size(); ++i) {
                log_->sample(env_step, batch.transitions[i].id, batch.probs[i]);
            }
        }
        strategy_->on_sampled(batch.slots);
        return batch;
    }

    void update_feedback(const std::vector<std::size_t>& slots,
                         const std::vector<double>& td_errors) {
        strategy_->update_feedback(slots, td_errors);
    }

    void flush_log() {
        if (log_) log_->flush();
    }

    const ReplayBuffer& buffer() const { return buffer_; }
    SamplingStrategy& strategy() { return *strategy_; }
    const SamplingStrategy& strategy() const { return *strategy_; }
    std::size_t size() const { return buffer_.size(); }

private:
    ReplayBuffer buffer_;
    std::unique_ptr<SamplingStrategy> strategy_;
    std::size_t batch_size_;
    std::unique_ptr<replay_log::Writer> log_;
};

} // namespace cuer
