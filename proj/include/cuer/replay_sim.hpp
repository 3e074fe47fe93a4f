#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cuer/replay_memory.hpp"
#include "cuer/rng.hpp"

namespace cuer {

/// Drives a replay memory with the workload the mass-balance analysis
/// assumes (exactly one push and one N-draw batch per step) without any
/// learner, so priority dynamics, lifetime replay counts, and sample ages can
/// be measured with nothing else moving.
struct ReplaySimOptions {
    std::size_t capacity = 10000;
    SamplerOptions sampler;
    std::uint64_t steps = 10000;
    std::uint64_t seed = 1;
    std::string log_path; // optional replay event log
};

struct ReplaySimResult {
    std::vector<double> psi_after_step;
    std::vector<std::uint64_t> floor_hits_after_step;
    std::vector<double> mean_age_per_step;
    std::vector<std::uint64_t> replay_counts; // indexed by transition id
    std::vector<std::uint64_t> evicted_ids;
    std::uint64_t total_pushes = 0;
};

inline ReplaySimResult run_replay_sim(const ReplaySimOptions& opts) {
    ReplayMemory memory(opts.capacity, 1, 1, opts.sampler);
    if (!opts.log_path.empty()) memory.attach_log(opts.log_path);
    Rng strategy_rng(seed_stream(opts.seed, "strategy"));
    Rng data_rng(seed_stream(opts.seed, "simdata"));

    ReplaySimResult result;
    result.psi_after_step.reserve(opts.steps);
    result.floor_hits_after_step.reserve(opts.steps);
    result.mean_age_per_step.reserve(opts.steps);
    result.replay_counts.assign(opts.steps, 0);

    for (std::uint64_t step = 1; step <= opts.steps; ++step) {
        Transition t;
        t.state = {data_rng.uniform(-1.0, 1.0)};
        t.action = {data_rng.uniform(-1.0, 1.0)};
        t.reward = data_rng.uniform(-1.0, 1.0);
        t.next_state = {data_rng.uniform(-1.0, 1.0)};
        t.done = false;
        t.birth_step = step;
        const auto push = memory.push(std::move(t));
        if (push.evicted) result.evicted_ids.push_back(push.evicted->id);
        ++result.total_pushes;

        const Batch batch = memory.sample(opts.sampler.batch_size, strategy_rng, step);
        double age_sum = 0.0;
        for (const Transition& s : batch.transitions) {
            ++result.replay_counts[s.id];
            age_sum += static_cast<double>(step - s.birth_step);
        }
        result.mean_age_per_step.push_back(age_sum / static_cast<double>(batch.size()));
        result.psi_after_step.push_back(memory.strategy().total_priority());
        result.floor_hits_after_step.push_back(memory.strategy().floor_hits());
    }
    memory.flush_log();
    return result;
}

} // namespace cuer
