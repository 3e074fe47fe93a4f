#pragma once
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/strategy.hpp"
#include "cuer/sum_tree.hpp"

namespace cuer {

struct CuerOptions {
    std::size_t batch_size = 32;
    double eps_min = 1.0;
    bool stratified = false;
};

/**
 * Corrected uniform experience replay. Each transition enters at raw
 * priority N (the batch size); each draw occurrence decrements its priority
 * by 1, floored at eps_min; a single draw returns slot i with probability
 * leaf(i) / psi, where psi is the total priority mass.
 *
 * With integer eps_min all priorities stay integral, so psi arithmetic is
 * exact: one push plus one full batch moves psi by exactly N - N = 0 while
 * no decrement is absorbed by the floor and nothing is evicted.
 */
class CuerSampler final : public SamplingStrategy {
public:
    CuerSampler(const ReplayBuffer& buffer, const CuerOptions& options)
        : buffer_(buffer),
          tree_(buffer.capacity()),
          batch_size_(options.batch_size),
          eps_min_(options.eps_min),
          stratified_(options.stratified) {
        if (batch_size_ == 0) throw std::invalid_argument("cuer: batch size must be >= 1");
        if (eps_min_ < 0.0 || !std::isfinite(eps_min_)) {
            throw std::invalid_argument("cuer: eps_min must be finite and >= 0");
        }
        if (eps_min_ > static_cast<double>(batch_size_)) {
            throw std::invalid_argument("cuer: eps_min must not exceed the batch size");
        }
    }

    void on_push(std::size_t slot, const Transition&) override {
        tree_.set_priority(slot, static_cast<double>(batch_size_));
    }

    void on_evict(std::size_t slot) override { tree_.set_priority(slot, 0.0); }

    Batch sample(std::size_t n, Rng& rng) override {
        if (n != batch_size_) {
            throw std::invalid_argument("cuer sample: n must equal the configured batch size");
        }
        const std::size_t size = buffer_.size();
        if (size == 0) throw EmptyError("cuer sample: buffer is empty");

        Batch batch;
        const double total = tree_.total();
        if (total <= 0.0) {
            // Only reachable with eps_min = 0 after every priority has been
            // consumed; LiveER semantics are gone, so degrade to uniform.
            if (!warned_degenerate_) {
                std::fprintf(stderr,
                             "warning: cuer priority mass exhausted; falling back to uniform sampling\n");
                warned_degenerate_ = true;
            }
            const double p = 1.0 / static_cast<double>(size);
            for (std::size_t i = 0; i < n; ++i) {
                const std::size_t slot = rng.uniform_int(size);
                batch.slots.push_back(slot);
                batch.transitions.push_back(buffer_.get(slot));
                batch.probs.push_back(p);
            }
        } else {
            batch.slots = stratified_ ? tree_.sample_batch_stratified(n, rng)
                                      : tree_.sample_batch(n, rng);
            batch.transitions.reserve(n);
            batch.probs.reserve(n);
            for (std::size_t slot : batch.slots) {
                batch.transitions.push_back(buffer_.get(slot));
                batch.probs.push_back(tree_.get(slot) / total);
            }
        }
        batch.weights.assign(n, 1.0);
        return batch;
    }

    void on_sampled(const std::vector<std::size_t>& slot_occurrences) override {
        for (std::size_t slot : slot_occurrences) {
            const double p = tree_.get(slot);
            const double decremented = p - 1.0;
            if (decremented < eps_min_) {
                ++floor_hits_;
                tree_.set_priority(slot, eps_min_);
            } else {
                tree_.set_priority(slot, decremented);
            }
        }
    }

    double probability(std::size_t slot) const override {
        if (slot >= buffer_.size()) {
            throw std::invalid_argument("cuer probability: unoccupied slot");
        }
        const double total = tree_.total();
        if (total <= 0.0) return 1.0 / static_cast<double>(buffer_.size());
        return tree_.get(slot) / total;
    }

    double psi() const { return tree_.total(); }
    double priority(std::size_t slot) const { return tree_.get(slot); }
    std::size_t batch_size() const { return batch_size_; }
    double eps_min() const { return eps_min_; }

    double total_priority() const override { return tree_.total(); }
    std::uint64_t floor_hits() const override { return floor_hits_; }
    const std::string& name() const override { return name_; }

private:
    const ReplayBuffer& buffer_;
    SumTree tree_;
    std::size_t batch_size_;
    double eps_min_;
    bool stratified_;
    std::uint64_t floor_hits_ = 0;
    bool warned_degenerate_ = false;
    std::string name_ = "cuer";
};

} // namespace cuer
