#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cuer/config.hpp"
#include "cuer/envs.hpp"
#include "cuer/errors.hpp"
#include "cuer/metrics.hpp"
#include "cuer/replay_memory.hpp"
#include "cuer/rng.hpp"
#include "cuer/stats.hpp"
#include "cuer/td3.hpp"

namespace cuer {

using Policy = std::function<std::vector<double>(const std::vector<double>&)>;

/// Mean undiscounted return of a deterministic policy over `episodes`
/// episodes. Episode e resets the env with derive_seed(seed, e), so the same
/// seed always replays the same initial states.
inline double evaluate(const Policy& policy, Env& env, std::size_t episodes,
                       std::uint64_t seed) {
    if (episodes == 0) throw std::invalid_argument("evaluate: episodes must be >= 1");
    double total = 0.0;
    for (std::size_t e = 0; e < episodes; ++e) {
        std::vector<double> obs = env.reset(derive_seed(seed, e));
        double episode_return = 0.0;
        while (true) {
            const StepResult sr = env.step(policy(obs));
            episode_return += sr.reward;
            if (sr.terminal || sr.truncated) break;
            obs = sr.next_obs;
        }
        total += episode_return;
    }
    return total / static_cast<double>(episodes);
}

inline double evaluate(Td3Agent& agent, Env& env, std::size_t episodes, std::uint64_t seed) {
    Rng unused(0); // act() never draws from it when explore is off
    return evaluate([&](const std::vector<double>& s) { return agent.act(s, false, unused); },
                    env, episodes, seed);
}

struct RunResult {
    std::vector<MetricsRecord> records;
    std::string csv_path;
    std::string replay_log_path; // empty when logging is disabled
};

inline std::string run_file_stem(const ExperimentConfig& cfg, std::uint64_t seed) {
    return cfg.sampler.kind + "_" + cfg.env + "_seed" + std::to_string(seed);
}

/// Runs one (config, seed) experiment: random-action warmup, then one train
/// step per env step, with periodic deterministic evaluation. Writes the
/// metrics CSV (with the resolved config as comment lines) into out_dir and
/// returns the records. All randomness flows from named sub-streams of the
/// master seed, so runs are reproducible byte for byte. On a numeric failure
/// the partial CSV is flushed before the error propagates.
inline RunResult run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                                const std::string& out_dir,
                                const std::string& load_checkpoint = "",
                                const std::string& save_checkpoint = "") {
    auto env = make_env(cfg.env);
    const EnvSpec spec = env->spec();
    Td3Config agent_cfg = cfg.agent;
    agent_cfg.obs_dim = spec.obs_dim;
    agent_cfg.act_dim = spec.act_dim;

    Rng init_rng(seed_stream(seed, "init"));
    Rng env_rng(seed_stream(seed, "env"));
    Rng explore_rng(seed_stream(seed, "explore"));
    Rng strategy_rng(seed_stream(seed, "strategy"));
    Rng smoothing_rng(seed_stream(seed, "smoothing"));
    const std::uint64_t eval_seed = seed_stream(seed, "eval");

    Td3Agent agent(agent_cfg, init_rng);
    if (!load_checkpoint.empty()) agent.load(load_checkpoint);
    ReplayMemory memory(cfg.buffer_capacity, spec.obs_dim, spec.act_dim, cfg.sampler);

    const std::string stem = run_file_stem(cfg, seed);
    RunResult result;
    result.csv_path = out_dir + "/" + stem + ".csv";
    if (cfg.replay_log) {
        result.replay_log_path = out_dir + "/" + stem + ".log";
        memory.attach_log(result.replay_log_path);
    }

    auto provenance = resolved(cfg);
    provenance.emplace_back("run.seed", std::to_string(seed));

    auto eval_env = make_env(cfg.env);
    std::vector<double> obs = env->reset(env_rng.raw());

    double critic_sum = 0.0, actor_sum = 0.0;
    std::uint64_t critic_n = 0, actor_n = 0;
    std::vector<double> window_ages;
    std::uint64_t eval_index = 0;

    auto flush = [&]() {
        write_metrics_csv(result.csv_path, result.records, provenance);
        memory.flush_log();
    };

    try {
        for (std::uint64_t step = 1; step <= cfg.total_steps; ++step) {
            std::vector<double> action;
            if (step <= cfg.learning_starts) {
                action.resize(spec.act_dim);
                for (double& a : action) a = explore_rng.uniform(-1.0, 1.0);
            } else {
                action = agent.act(obs, true, explore_rng);
            }
            const StepResult sr = env->step(action);

            Transition t;
            t.state = std::move(obs);
            t.action = std::move(action);
            t.reward = sr.reward;
            t.next_state = sr.next_obs;
            t.done = sr.terminal; // truncation bootstraps through
            t.birth_step = step;
            memory.push(std::move(t));
            obs = (sr.terminal || sr.truncated) ? env->reset(env_rng.raw()) : sr.next_obs;

            if (step >= cfg.learning_starts) {
                const double span = cfg.total_steps > cfg.learning_starts
                                        ? static_cast<double>(cfg.total_steps - cfg.learning_starts)
                                        : 1.0;
                memory.strategy().set_beta_progress(
                    static_cast<double>(step - cfg.learning_starts) / span);
                const StepStats stats =
                    agent.train_step(memory, step, strategy_rng, smoothing_rng);
                critic_sum += stats.critic_loss;
                ++critic_n;
                if (stats.actor_updated) {
                    actor_sum += stats.actor_loss;
                    ++actor_n;
                }
                for (const std::uint64_t age : stats.sample_ages) {
                    window_ages.push_back(static_cast<double>(age));
                }
            }

            if (step % cfg.eval_interval == 0) {
                MetricsRecord r;
                r.env_step = step;
                r.eval_return = evaluate(agent, *eval_env, cfg.eval_episodes,
                                         derive_seed(eval_seed, eval_index++));
                r.critic_loss = critic_n ? critic_sum / static_cast<double>(critic_n) : 0.0;
                r.actor_loss = actor_n ? actor_sum / static_cast<double>(actor_n) : 0.0;
                r.psi = memory.strategy().total_priority();
                if (!window_ages.empty()) {
                    r.mean_sample_age = mean(window_ages);
                    r.p95_sample_age = percentile95(window_ages);
                }
                r.per_beta = memory.strategy().beta();
                r.cuer_floor_hits = memory.strategy().floor_hits();
                result.records.push_back(r);
                critic_sum = actor_sum = 0.0;
                critic_n = actor_n = 0;
                window_ages.clear();
            }
        }
    } catch (const NumericError&) {
        flush();
        throw;
    }

    if (!save_checkpoint.empty()) agent.save(save_checkpoint);
    flush();
    return result;
}

} // namespace cuer
