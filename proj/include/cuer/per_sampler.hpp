#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/replay_buffer.hpp"
#include "cuer/strategy.hpp"
#include "cuer/sum_tree.hpp"

namespace cuer {

struct PerOptions {
    double alpha = 0.6;
    double beta0 = 0.4;
    double eps_per = 1e-3;
    bool stratified = false;
    bool use_weights = true;
};

/**
 * Proportional prioritized replay. Leaf for slot i stores (|delta_i| + eps)^alpha;
 * draw probability is leaf / total. New transitions enter at the running maximum
 * raw priority so each is sampled at least once with high probability. Priorities
 * change only through update_feedback for slots that were just sampled.
 *
 * Importance weights w_i = (size * P(i))^(-beta), max-normalized per batch, with
 * beta annealed linearly from beta0 to 1 via set_beta_progress.
 */
class PerSampler final : public SamplingStrategy {
public:
    PerSampler(const ReplayBuffer& buffer, const PerOptions& options)
        : buffer_(buffer),
          tree_(buffer.capacity()),
          alpha_(options.alpha),
          beta0_(options.beta0),
          beta_(options.beta0),
          eps_per_(options.eps_per),
          stratified_(options.stratified),
          use_weights_(options.use_weights) {
        if (alpha_ < 0.0 || alpha_ > 1.0) {
            throw std::invalid_argument("per: alpha must be in [0, 1]");
        }
        if (beta0_ < 0.0 || beta0_ > 1.0) {
            throw std::invalid_argument("per: beta0 must be in [0, 1]");
        }
        if (!(eps_per_ > 0.0)) throw std::invalid_argument("per: eps_per must be positive");
    }

    void on_push(std::size_t slot, const Transition&) override {
        tree_.set_priority(slot, std::pow(max_priority_seen_, alpha_));
    }

    void on_evict(std::size_t slot) override { tree_.set_priority(slot, 0.0); }

    void on_sampled(const std::vector<std::size_t>&) override {}

    Batch sample(std::size_t n, Rng& rng) override {
        if (buffer_.size() == 0) throw EmptyError("per sample: buffer is empty");
        Batch batch;
        batch.slots = stratified_ ? tree_.sample_batch_stratified(n, rng)
                                  : tree_.sample_batch(n, rng);
        batch.transitions.reserve(n);
        batch.probs.reserve(n);
        const double total = tree_.total();
        for (std::size_t slot : batch.slots) {
            batch.transitions.push_back(buffer_.get(slot));
            batch.probs.push_back(tree_.get(slot) / total);
        }
        if (use_weights_) {
            batch.weights.reserve(n);
            const double size = static_cast<double>(buffer_.size());
            double max_w = 0.0;
            for (double p : batch.probs) {
                const double w = std::pow(size * p, -beta_);
                batch.weights.push_back(w);
                max_w = std::max(max_w, w);
            }
            for (double& w : batch.weights) w /= max_w;
        } else {
            batch.weights.assign(n, 1.0);
        }
        return batch;
    }

    void update_feedback(const std::vector<std::size_t>& slots,
                         const std::vector<double>& td_errors) override {
        if (slots.size() != td_errors.size()) {
            throw std::invalid_argument("per update_feedback: length mismatch");
        }
        for (double delta : td_errors) {
            if (!std::isfinite(delta)) {
                throw NumericError("per update_feedback: non-finite TD error");
            }
        }
        for (std::size_t i = 0; i < slots.size(); ++i) {
            const double raw = std::abs(td_errors[i]) + eps_per_;
            tree_.set_priority(slots[i], std::pow(raw, alpha_));
            max_priority_seen_ = std::max(max_priority_seen_, raw);
        }
    }

    double probability(std::size_t slot) const override {
        if (slot >= buffer_.size()) {
            throw std::invalid_argument("per probability: unoccupied slot");
        }
        return tree_.get(slot) / tree_.total();
    }

    void set_beta_progress(double frac) override {
        frac = std::clamp(frac, 0.0, 1.0);
        beta_ = beta0_ + frac * (1.0 - beta0_);
    }

    double beta() const override { return beta_; }
    double total_priority() const override { return tree_.total(); }
    double max_priority_seen() const { return max_priority_seen_; }
    const std::string& name() const override { return name_; }

private:
    const ReplayBuffer& buffer_;
    SumTree tree_;
    double alpha_;
    double beta0_;
    double beta_;
    double eps_per_;
    bool stratified_;
    bool use_weights_;
    double max_priority_seen_ = 1.0;
    std::string name_ = "per";
};

} // namespace cuer
