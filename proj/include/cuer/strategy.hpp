#pragma once
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuer/batch.hpp"
#include "cuer/rng.hpp"
#include "cuer/transition.hpp"

namespace cuer {

/**
 * Sampling-strategy contract over a replay buffer's slot space.
 *
 * Lifecycle per slot: on_evict (when an occupant is overwritten or dropped)
 * then on_push (for the new occupant). sample returns exactly n occurrences,
 * all referring to occupied slots; on_sampled is invoked with the emitted
 * batch's slots immediately after each sample. Strategy state never refers
 * to unoccupied slots.
 */
class SamplingStrategy {
public:
    virtual ~SamplingStrategy() = default;

    virtual void on_push(std::size_t slot, const Transition& t) = 0;
    virtual Batch sample(std::size_t n, Rng& rng) = 0;
    virtual void on_sampled(const std::vector<std::size_t>& slot_occurrences) = 0;
    virtual void on_evict(std::size_t slot) = 0;

    /// Per-transition learning feedback (TD errors); no-op unless the
    /// strategy reprioritizes on feedback.
    virtual void update_feedback(const std::vector<std::size_t>& slots,
                                 const std::vector<double>& td_errors) {
        (void)slots;
        (void)td_errors;
    }

    /// Instantaneous probability that a single draw returns `slot`.
    virtual double probability(std::size_t slot) const = 0;

    /// Importance-weight annealing progress in [0,1]; no-op unless the
    /// strategy uses importance weights.
    virtual void set_beta_progress(double frac) { (void)frac; }
    virtual double beta() const { return 1.0; }

    /// Diagnostics. total_priority is the strategy's current priority mass
    /// (0 when the strategy has no such notion); floor_hits counts decrement
    /// occurrences absorbed by a priority floor.
    virtual double total_priority() const { return 0.0; }
    virtual std::uint64_t floor_hits() const { return 0; }

    virtual const std::string& name() const = 0;
};

/// Expected number of environment steps between samplings of a transition
/// drawn with probability p per draw, n draws per step: 1 / (p * n).
inline double expected_sampling_interval(double p, std::size_t n) {
    if (!(p > 0.0) || p > 1.0) {
        throw std::invalid_argument("expected_sampling_interval: probability must be in (0, 1]");
    }
    if (n == 0) throw std::invalid_argument("expected_sampling_interval: batch size must be >= 1");
    return 1.0 / (p * static_cast<double>(n));
}

} // namespace cuer
