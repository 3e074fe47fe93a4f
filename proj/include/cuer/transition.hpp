#pragma once
#include <cstdint>
#include <vector>

namespace cuer {

/// One environment step. `done` is true only at a genuine terminal state;
/// time-limit truncation is stored as done=false so bootstrapping continues
/// through it. `id` is assigned by the replay buffer at push time.
struct Transition {
    std::vector<double> state;
    std::vector<double> action;
    double reward = 0.0;
    std::vector<double> next_state;
    bool done = false;
    std::uint64_t birth_step = 0;
    std::uint64_t id = 0;
};

} // namespace cuer
