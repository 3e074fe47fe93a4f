#pragma once
#include <cstddef>
#include <vector>

#include "cuer/transition.hpp"

namespace cuer {

/**
 * One sampled minibatch. Parallel arrays, one entry per draw occurrence;
 * the same slot may appear multiple times (sampling with replacement).
 *
 * `weights` are importance weights in (0, 1], max-normalized per batch;
 * all 1.0 for strategies without a correction term. `probs` records each
 * occurrence's instantaneous draw probability at sample time (1.0 for
 * deterministic inclusions).
 */
struct Batch {
    std::vector<std::size_t> slots;
    std::vector<Transition> transitions;
    std::vector<double> weights;
    std::vector<double> probs;

    std::size_t size() const { return slots.size(); }
};

} // namespace cuer
