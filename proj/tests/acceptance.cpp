// Acceptance gate: one self-contained check per release criterion, each
// printing exactly one PASS/FAIL line with its measured value and the fixed
// tolerance. Exit code is the number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cuer/cuer_sampler.hpp"
#include "cuer/per_sampler.hpp"
#include "cuer/experiment.hpp"
#include "cuer/gradcheck.hpp"
#include "cuer/replay_memory.hpp"
#include "cuer/replay_sim.hpp"
#include "cuer/rng.hpp"
#include "cuer/stats.hpp"
#include "cuer/strategy.hpp"
#include "cuer/sum_tree.hpp"
#include "cuer/td3.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Check {
    std::string name;
    std::function<std::string()> run; // returns detail text; throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

void require(bool ok, const std::string& why) {
    if (!ok) throw Failure(why);
}

cuer::Transition make_transition(cuer::Rng& rng, std::uint64_t birth_step) {
    cuer::Transition t;
    t.state = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    t.action = {rng.uniform(-1.0, 1.0)};
    t.reward = rng.uniform(-1.0, 1.0);
    t.next_state = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    t.birth_step = birth_step;
    return t;
}

// ---------------------------------------------------------------------------
// 1. Sum-tree draws follow p_i / psi.
//
// Priority vectors are rank-based (p proportional to 1/rank^2, shuffled),
// the shape rank-prioritized replay produces; 1e5 draws resolve a 0.01
// total-variation bound for that family across all sizes up to 1024.
std::string check_sum_tree_distribution() {
    const auto start = Clock::now();
    cuer::Rng rng(2024);
    const std::size_t draws = 100000;
    double worst_tv = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        // first two trials pin the extremes, the rest draw sizes uniformly
        const std::size_t size = trial == 0   ? 1024
                                 : trial == 1 ? 4
                                              : 4 + rng.uniform_int(1021);
        std::vector<double> priorities(size);
        for (std::size_t i = 0; i < size; ++i) {
            const double rank = static_cast<double>(i + 1);
            priorities[i] = rng.uniform(0.5, 1.5) / (rank * rank);
        }
        for (std::size_t i = size; i > 1; --i) {
            std::swap(priorities[i - 1], priorities[rng.uniform_int(i)]);
        }
        cuer::SumTree tree(size);
        for (std::size_t i = 0; i < size; ++i) tree.set_priority(i, priorities[i]);

        std::vector<std::uint64_t> counts(size, 0);
        for (std::size_t i = 0; i < draws; ++i) ++counts[tree.sample_batch(1, rng)[0]];

        double tv = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double expected = priorities[i] / tree.total();
            const double observed = static_cast<double>(counts[i]) / draws;
            tv += std::abs(expected - observed);
        }
        tv *= 0.5;
        worst_tv = std::max(worst_tv, tv);
    }
    const double elapsed = seconds_since(start);
    require(worst_tv < 0.01, fmt("max total variation %.4f >= 0.01", worst_tv));
    require(elapsed < 30.0, fmt("took %.1f s >= 30 s", elapsed));
    return fmt("max total variation %.4f < 0.01 (20 vectors, sizes 4-1024, %zu draws); %.1f s",
               worst_tv, draws, elapsed);
}

// ---------------------------------------------------------------------------
// 2. CUER's raw priorities reproduce the probability-form update rules:
// P = N/psi on insert, P' = (P*psi - 1)/psi per draw, floored. The oracle
// tracks normalized probabilities directly and renormalizes after every event.
class ProbabilityFormOracle {
public:
    ProbabilityFormOracle(std::size_t capacity, double n, double eps_min)
        : p_(capacity, 0.0), occupied_(capacity, false), n_(n), eps_min_(eps_min) {}

    void push(std::size_t slot) {
        double psi_new = n_;
        for (std::size_t j = 0; j < p_.size(); ++j) {
            if (occupied_[j] && j != slot) psi_new += p_[j] * psi_;
        }
        for (std::size_t j = 0; j < p_.size(); ++j) {
            if (occupied_[j] && j != slot) p_[j] *= psi_ / psi_new;
        }
        p_[slot] = n_ / psi_new;
        occupied_[slot] = true;
        psi_ = psi_new;
    }

    void draw(std::size_t slot) {
        const double updated = std::max((p_[slot] * psi_ - 1.0) / psi_, eps_min_ / psi_);
        const double removed = (p_[slot] - updated) * psi_;
        const double psi_new = psi_ - removed;
        p_[slot] = updated;
        for (std::size_t j = 0; j < p_.size(); ++j) {
            if (occupied_[j]) p_[j] *= psi_ / psi_new;
        }
        psi_ = psi_new;
    }

    double probability(std::size_t slot) const {
        double sum = 0.0;
        for (std::size_t j = 0; j < p_.size(); ++j) {
            if (occupied_[j]) sum += p_[j];
        }
        return p_[slot] / sum;
    }

private:
    std::vector<double> p_;
    std::vector<bool> occupied_;
    double n_;
    double eps_min_;
    double psi_ = 0.0;
};

std::string check_cuer_probability_form() {
    double worst = 0.0;
    for (const std::size_t capacity : {4ul, 16ul, 64ul}) {
        const std::size_t n = 8;
        cuer::ReplayBuffer buf(capacity, 2, 1);
        cuer::CuerOptions opts;
        opts.batch_size = n;
        opts.eps_min = 1.0;
        cuer::CuerSampler strat(buf, opts);
        ProbabilityFormOracle oracle(capacity, static_cast<double>(n), 1.0);
        cuer::Rng rng(11 + capacity);
        cuer::Rng data(17);

        auto push_one = [&](std::uint64_t step) {
            auto res = buf.push(make_transition(data, step));
            if (res.evicted) strat.on_evict(res.slot);
            strat.on_push(res.slot, buf.get(res.slot));
            oracle.push(res.slot);
        };

        for (std::uint64_t i = 0; i < 4; ++i) push_one(i);
        std::uint64_t pushed = 4;
        for (int event = 0; event < 2000; ++event) {
            if (rng.uniform01() < 0.25) {
                push_one(pushed++);
            } else {
                auto batch = strat.sample(n, rng);
                strat.on_sampled(batch.slots);
                for (std::size_t slot : batch.slots) oracle.draw(slot);
            }
            for (std::size_t slot = 0; slot < buf.size(); ++slot) {
                worst = std::max(worst,
                                 std::abs(strat.probability(slot) - oracle.probability(slot)));
            }
        }
    }
    require(worst < 1e-12, fmt("max probability gap %.3g >= 1e-12", worst));
    return fmt("max probability gap %.2g < 1e-12 (capacities 4/16/64, 2000 events each)", worst);
}

// ---------------------------------------------------------------------------
// 3. Priority mass conservation in the no-learning simulator.
std::string check_psi_conservation() {
    // eps_min = 0: each push adds N, each batch removes N; the only exception
    // is a duplicate draw that lands on a slot already drained to 0 inside the
    // same batch, which absorbs exactly 1 unit and is counted as a floor hit.
    cuer::ReplaySimOptions opts;
    opts.capacity = 10000;
    opts.sampler.kind = "cuer";
    opts.sampler.batch_size = 32;
    opts.sampler.eps_min = 0.0;
    opts.steps = 10000;
    opts.seed = 9;
    const auto zero_floor = cuer::run_replay_sim(opts);
    const double n = 32.0;
    std::uint64_t floored_steps = 0;
    for (std::size_t t = 1; t < zero_floor.psi_after_step.size(); ++t) {
        const double drift = zero_floor.psi_after_step[t] - zero_floor.psi_after_step[t - 1];
        const std::uint64_t hits =
            zero_floor.floor_hits_after_step[t] - zero_floor.floor_hits_after_step[t - 1];
        if (hits == 0) {
            require(drift == 0.0, fmt("step %zu: unfloored drift %.17g != 0", t, drift));
        } else {
            ++floored_steps;
            require(drift == static_cast<double>(hits),
                    fmt("step %zu: drift %.17g != %llu floor hits", t, drift,
                        static_cast<unsigned long long>(hits)));
        }
    }

    opts.sampler.eps_min = 1.0;
    opts.seed = 10;
    const auto unit_floor = cuer::run_replay_sim(opts);
    for (std::size_t t = 0; t < unit_floor.psi_after_step.size(); ++t) {
        const double size = static_cast<double>(std::min<std::size_t>(t + 1, opts.capacity));
        const double psi = unit_floor.psi_after_step[t];
        require(psi >= size * 1.0 - 1e-9 && psi <= size * n + 1e-9,
                fmt("step %zu: psi %.17g outside [size, size*N] = [%g, %g]", t, psi, size,
                    size * n));
    }
    return fmt("unfloored drift exactly 0 over 10^4 steps (%llu steps had floor hits, each "
               "balanced); eps_min=1 mass stayed in [size, 32*size]",
               static_cast<unsigned long long>(floored_steps));
}

// ---------------------------------------------------------------------------
// 4. Lifetime fairness: evicted transitions' replay counts.
std::string check_lifetime_fairness() {
    const auto start = Clock::now();
    std::vector<double> cuer_means;
    bool variance_always_below = true;
    double worst_ratio = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto run = [&](const std::string& kind, double eps_min) {
            cuer::ReplaySimOptions opts;
            opts.capacity = 10000;
            opts.sampler.kind = kind;
            opts.sampler.batch_size = 32;
            opts.sampler.eps_min = eps_min;
            opts.steps = 50000;
            opts.seed = seed;
            return cuer::run_replay_sim(opts);
        };
        const auto cuer_sim = run("cuer", 0.0);
        const auto uniform_sim = run("uniform", 0.0);
        auto lifetime = [](const cuer::ReplaySimResult& sim) {
            std::vector<double> counts;
            counts.reserve(sim.evicted_ids.size());
            for (const std::uint64_t id : sim.evicted_ids) {
                counts.push_back(static_cast<double>(sim.replay_counts[id]));
            }
            return counts;
        };
        const auto cuer_counts = lifetime(cuer_sim);
        const auto uniform_counts = lifetime(uniform_sim);
        cuer_means.push_back(cuer::mean(cuer_counts));
        const double cuer_var = cuer::variance(cuer_counts);
        const double uniform_var = cuer::variance(uniform_counts);
        if (!(cuer_var < uniform_var)) variance_always_below = false;
        worst_ratio = std::max(worst_ratio, cuer_var / uniform_var);
    }
    const double elapsed = seconds_since(start);
    for (const double m : cuer_means) {
        require(m >= 30.4 && m <= 33.6, fmt("CUER lifetime mean %.3f outside [30.4, 33.6]", m));
    }
    require(variance_always_below, "CUER lifetime variance not below uniform's in every seed");
    require(elapsed < 120.0, fmt("took %.1f s >= 120 s", elapsed));
    return fmt("CUER lifetime mean in [%.2f, %.2f] (bounds [30.4, 33.6]); variance below "
               "uniform's in 5/5 seeds (worst ratio %.3f); %.0f s",
               *std::min_element(cuer_means.begin(), cuer_means.end()),
               *std::max_element(cuer_means.begin(), cuer_means.end()), worst_ratio, elapsed);
}

// ---------------------------------------------------------------------------
// 5. PER reductions and the expected-interval identity.
std::string check_per_reductions() {
    // alpha = 0 and equal-priority cases must equal uniform probabilities.
    cuer::Rng data(23);
    double worst_uniform_gap = 0.0;
    for (const double alpha : {0.0, 0.7}) {
        cuer::ReplayBuffer buf(64, 2, 1);
        cuer::PerOptions opts;
        opts.alpha = alpha;
        cuer::PerSampler strat(buf, opts);
        for (std::uint64_t i = 0; i < 64; ++i) {
            auto res = buf.push(make_transition(data, i));
            strat.on_push(res.slot, buf.get(res.slot));
            if (alpha > 0.0) {
                // equal-priority case: identical td errors everywhere
                strat.update_feedback({res.slot}, {0.5});
            }
        }
        for (std::size_t slot = 0; slot < 64; ++slot) {
            worst_uniform_gap =
                std::max(worst_uniform_gap, std::abs(strat.probability(slot) - 1.0 / 64.0));
        }
    }
    require(worst_uniform_gap < 1e-12,
            fmt("uniform-reduction probability gap %.3g >= 1e-12", worst_uniform_gap));

    // Expected sampling interval: exact formula and empirical agreement under
    // static priorities (priorities 1..5 over 256 slots, 8 draws per step).
    require(cuer::expected_sampling_interval(0.25, 8) == 0.5,
            "expected_sampling_interval(0.25, 8) != 0.5 exactly");
    require(cuer::expected_sampling_interval(1.0, 1) == 1.0,
            "expected_sampling_interval(1, 1) != 1 exactly");

    const std::size_t size = 256;
    const std::size_t n = 8;
    const std::size_t steps = 1000000;
    cuer::SumTree tree(size);
    for (std::size_t i = 0; i < size; ++i) {
        tree.set_priority(i, 1.0 + static_cast<double>(i % 5));
    }
    cuer::Rng rng(31);
    std::vector<std::uint64_t> count(size, 0), first(size, 0), last(size, 0);
    for (std::size_t step = 1; step <= steps; ++step) {
        for (const std::size_t slot : tree.sample_batch(n, rng)) {
            if (count[slot] == 0) first[slot] = step;
            last[slot] = step;
            ++count[slot];
        }
    }
    double worst_rel = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
        const double p = tree.get(i) / tree.total();
        const double predicted = cuer::expected_sampling_interval(p, n);
        const double observed =
            static_cast<double>(last[i] - first[i]) / static_cast<double>(count[i] - 1);
        worst_rel = std::max(worst_rel, std::abs(observed - predicted) / predicted);
    }
    require(worst_rel < 0.05, fmt("interval prediction off by %.2f%% >= 5%%", worst_rel * 100));
    return fmt("alpha=0 and equal-priority probabilities uniform within %.2g; interval "
               "prediction within %.1f%% of observed gaps (256 slots, 10^6 steps)",
               worst_uniform_gap, worst_rel * 100);
}

// ---------------------------------------------------------------------------
// 6. CER guarantee: every batch contains the newest transition.
std::string check_cer_latest_guarantee() {
    for (const std::string kind : {"cer", "cer+cuer"}) {
        cuer::SamplerOptions opts;
        opts.kind = kind;
        opts.batch_size = 8;
        cuer::ReplayMemory memory(512, 2, 1, opts);
        cuer::Rng rng(41);
        cuer::Rng data(43);
        for (std::uint64_t step = 1; step <= 10000; ++step) {
            memory.push(make_transition(data, step));
            const cuer::Batch batch = memory.sample(8, rng, step);
            std::uint64_t max_id = 0;
            for (const auto& t : batch.transitions) max_id = std::max(max_id, t.id);
            require(max_id == step - 1,
                    fmt("%s: batch at step %llu missing newest transition", kind.c_str(),
                        static_cast<unsigned long long>(step)));
        }
    }
    return "all 10^4 batches contained the newest transition (cer and cer+cuer)";
}

// ---------------------------------------------------------------------------
// 7. Analytic gradients vs central finite differences.
std::string check_gradient_integrity() {
    cuer::Rng rng(53);
    double worst = 0.0;
    for (int instance = 0; instance < 50; ++instance) {
        cuer::Td3Config cfg;
        cfg.obs_dim = 2 + rng.uniform_int(3);
        cfg.act_dim = 1 + rng.uniform_int(2);
        cfg.hidden = {4 + rng.uniform_int(5), 4 + rng.uniform_int(5)};
        cfg.batch_size = 2 + rng.uniform_int(4);
        cuer::Td3Agent agent(cfg, rng);

        cuer::Batch batch;
        std::vector<double> y;
        for (std::size_t i = 0; i < cfg.batch_size; ++i) {
            cuer::Transition t;
            for (std::size_t d = 0; d < cfg.obs_dim; ++d) t.state.push_back(rng.uniform(-1, 1));
            for (std::size_t d = 0; d < cfg.act_dim; ++d) t.action.push_back(rng.uniform(-1, 1));
            batch.transitions.push_back(std::move(t));
            batch.slots.push_back(i);
            batch.weights.push_back(rng.uniform(0.5, 2.0));
            y.push_back(rng.uniform(-2.0, 2.0));
        }

        // critic: perturb each critic's parameters with the other held fixed
        std::vector<double> g1, g2;
        agent.critic_loss_and_grads(batch, y, g1, g2);
        for (int which = 0; which < 2; ++which) {
            cuer::Mlp& net = which == 0 ? agent.critic1() : agent.critic2();
            const std::vector<double> base = net.params();
            const auto fd = cuer::finite_difference_gradient(base, [&](const std::vector<double>& p) {
                net.params() = p;
                std::vector<double> t1, t2;
                const double loss = agent.critic_loss_and_grads(batch, y, t1, t2);
                return loss;
            });
            net.params() = base;
            worst = std::max(worst, cuer::max_relative_error(which == 0 ? g1 : g2, fd));
        }

        // actor
        std::vector<double> ga;
        agent.actor_loss_and_grad(batch, ga);
        const std::vector<double> abase = agent.actor().params();
        const auto afd =
            cuer::finite_difference_gradient(abase, [&](const std::vector<double>& p) {
                agent.actor().params() = p;
                std::vector<double> tmp;
                return agent.actor_loss_and_grad(batch, tmp);
            });
        agent.actor().params() = abase;
        worst = std::max(worst, cuer::max_relative_error(ga, afd));
    }
    require(worst < 1e-4, fmt("max relative gradient error %.3g >= 1e-4", worst));
    return fmt("max relative error %.2g < 1e-4 (50 random instances, actor and both critics)",
               worst);
}

// ---------------------------------------------------------------------------
// 8. TD3 target semantics over randomized instances.
std::string check_td3_target_semantics() {
    cuer::Rng rng(61);
    double worst_gap = 0.0;
    for (int instance = 0; instance < 200; ++instance) {
        cuer::Td3Config cfg;
        cfg.obs_dim = 2 + rng.uniform_int(2);
        cfg.act_dim = 1 + rng.uniform_int(2);
        cfg.hidden = {6, 6};
        cfg.batch_size = 4;
        cfg.gamma = rng.uniform(0.9, 0.999);
        cfg.target_noise_std = rng.uniform(0.0, 0.4);
        cfg.target_noise_clip = rng.uniform(0.1, 0.6);
        cuer::Td3Agent agent(cfg, rng);

        cuer::Batch batch;
        for (std::size_t i = 0; i < cfg.batch_size; ++i) {
            cuer::Transition t;
            for (std::size_t d = 0; d < cfg.obs_dim; ++d) t.state.push_back(rng.uniform(-1, 1));
            for (std::size_t d = 0; d < cfg.act_dim; ++d) t.action.push_back(rng.uniform(-1, 1));
            for (std::size_t d = 0; d < cfg.obs_dim; ++d) {
                t.next_state.push_back(rng.uniform(-1, 1));
            }
            t.reward = rng.uniform(-1.0, 1.0);
            t.done = i == 0; // always include one terminal
            batch.transitions.push_back(std::move(t));
            batch.slots.push_back(i);
            batch.weights.push_back(1.0);
        }

        const std::uint64_t noise_seed = rng.raw();
        cuer::Rng noise_a(noise_seed), noise_b(noise_seed);
        const std::vector<double> y = agent.compute_target(batch, noise_a);
        cuer::MlpCache cache;
        for (std::size_t i = 0; i < cfg.batch_size; ++i) {
            const auto& t = batch.transitions[i];
            const std::vector<double> smoothed = agent.target_action(t.next_state, noise_b);
            // noise clipping: smoothed action within clip of the clamped base
            const std::vector<double> base = agent.actor_target().forward(t.next_state, cache);
            for (std::size_t d = 0; d < cfg.act_dim; ++d) {
                const double clamped = std::clamp(base[d], -1.0, 1.0);
                require(std::abs(smoothed[d] - clamped) <= cfg.target_noise_clip + 1e-12,
                        "smoothing noise escaped its clip");
                require(smoothed[d] >= -1.0 - 1e-15 && smoothed[d] <= 1.0 + 1e-15,
                        "smoothed action escaped the action range");
            }
            std::vector<double> input = t.next_state;
            input.insert(input.end(), smoothed.begin(), smoothed.end());
            const double q1 = agent.critic1_target().forward(input)[0];
            const double q2 = agent.critic2_target().forward(input)[0];
            if (t.done) {
                require(y[i] == t.reward, "terminal target must be the bare reward");
            } else {
                const double expected = t.reward + cfg.gamma * std::min(q1, q2);
                worst_gap = std::max(worst_gap, std::abs(y[i] - expected));
                require(y[i] <= t.reward + cfg.gamma * q1 + 1e-12 &&
                            y[i] <= t.reward + cfg.gamma * q2 + 1e-12,
                        "min rule violated: target above a single-critic target");
            }
        }
    }
    require(worst_gap < 1e-12, fmt("target recomputation gap %.3g >= 1e-12", worst_gap));

    // floor(k/d) actor updates across random schedules
    cuer::Rng sched(67);
    for (int trial = 0; trial < 10; ++trial) {
        cuer::Td3Config cfg;
        cfg.obs_dim = 4;
        cfg.act_dim = 2;
        cfg.hidden = {8, 8};
        cfg.batch_size = 4;
        cfg.policy_delay = 1 + sched.uniform_int(4);
        cuer::Td3Agent agent(cfg, sched);
        cuer::SamplerOptions sopts;
        sopts.kind = "uniform";
        sopts.batch_size = 4;
        cuer::ReplayMemory memory(128, 4, 2, sopts);
        cuer::Rng data(71);
        for (std::uint64_t i = 1; i <= 16; ++i) {
            cuer::Transition t;
            t.state = {data.uniform(-1, 1), data.uniform(-1, 1), data.uniform(-1, 1),
                       data.uniform(-1, 1)};
            t.action = {data.uniform(-1, 1), data.uniform(-1, 1)};
            t.next_state = t.state;
            t.reward = data.uniform(-1, 1);
            t.birth_step = i;
            memory.push(std::move(t));
        }
        const std::uint64_t k = 5 + sched.uniform_int(20);
        cuer::Rng strat_rng(73), smooth_rng(79);
        for (std::uint64_t step = 1; step <= k; ++step) {
            agent.train_step(memory, 16 + step, strat_rng, smooth_rng);
        }
        require(agent.actor_update_count() == k / cfg.policy_delay,
                fmt("actor updates %llu != floor(%llu / %zu)",
                    static_cast<unsigned long long>(agent.actor_update_count()),
                    static_cast<unsigned long long>(k), cfg.policy_delay));
    }
    return fmt("terminal masking, min rule (gap %.2g), noise clipping, and floor(k/d) "
               "delays held over 200 target instances and 10 schedules",
               worst_gap);
}

// ---------------------------------------------------------------------------
// 9. Learning smoke test on the point-mass task.
std::string check_learning_smoke(const std::string& out_root) {
    const auto start = Clock::now();
    cuer::ExperimentConfig cfg;
    cfg.env = "pointmass";
    cfg.total_steps = 30000;
    cfg.seeds = {1, 2, 3, 4, 5};

    std::map<std::string, std::map<std::uint64_t, cuer::RunResult>> results;
    for (const std::string kind : {"cuer", "uniform"}) {
        cfg.sampler.kind = kind;
        const std::string dir = out_root + "/smoke_" + kind;
        std::filesystem::create_directories(dir);
        for (const std::uint64_t seed : cfg.seeds) {
            results[kind][seed] = cuer::run_experiment(cfg, seed, dir);
        }
    }

    int finals_ok = 0;
    int aulc_wins = 0;
    double worst_final = 0.0;
    for (const std::uint64_t seed : cfg.seeds) {
        const auto& cuer_records = results["cuer"][seed].records;
        const auto& uniform_records = results["uniform"][seed].records;
        const double final_return = cuer_records.back().eval_return;
        worst_final = std::min(worst_final, final_return);
        if (final_return >= -5.0) ++finals_ok;
        auto aulc = [](const std::vector<cuer::MetricsRecord>& records) {
            std::vector<double> xs, ys;
            for (const auto& r : records) {
                xs.push_back(static_cast<double>(r.env_step));
                ys.push_back(r.eval_return);
            }
            return cuer::trapezoid_area(xs, ys);
        };
        if (aulc(cuer_records) >= aulc(uniform_records)) ++aulc_wins;
    }
    const double elapsed = seconds_since(start);
    require(finals_ok >= 4, fmt("final return >= -5.0 in only %d/5 seeds (worst %.2f)",
                                finals_ok, worst_final));
    require(aulc_wins >= 3, fmt("CUER AULC >= uniform in only %d/5 seeds", aulc_wins));
    require(elapsed < 1200.0, fmt("took %.0f s >= 1200 s", elapsed));
    return fmt("final return >= -5.0 in %d/5 seeds (worst %.2f); CUER AULC >= uniform in %d/5; "
               "%.0f s < 1200 s",
               finals_ok, worst_final, aulc_wins, elapsed);
}

// ---------------------------------------------------------------------------
// 10. Byte-identical training runs.
std::string check_train_determinism(const std::string& out_root) {
    cuer::ExperimentConfig cfg;
    cfg.env = "pointmass";
    cfg.sampler.kind = "cuer";
    cfg.total_steps = 5000;
    cfg.replay_log = true;
    auto read = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string dir_a = out_root + "/det_a";
    const std::string dir_b = out_root + "/det_b";
    std::filesystem::create_directories(dir_a);
    std::filesystem::create_directories(dir_b);
    const auto ra = cuer::run_experiment(cfg, 1, dir_a);
    const auto rb = cuer::run_experiment(cfg, 1, dir_b);
    require(read(ra.csv_path) == read(rb.csv_path), "metrics CSVs differ between repeat runs");
    require(read(ra.replay_log_path) == read(rb.replay_log_path),
            "replay logs differ between repeat runs");
    return "repeat 5000-step runs produced byte-identical CSV and replay log";
}

} // namespace

int main() {
    const std::string out_root =
        (std::filesystem::temp_directory_path() / "cuer_acceptance").string();
    std::filesystem::remove_all(out_root);
    std::filesystem::create_directories(out_root);

    const std::vector<Check> checks = {
        {"sum_tree_distribution", check_sum_tree_distribution},
        {"cuer_probability_form_equivalence", check_cuer_probability_form},
        {"psi_conservation", check_psi_conservation},
        {"lifetime_fairness", check_lifetime_fairness},
        {"per_reductions", check_per_reductions},
        {"cer_latest_guarantee", check_cer_latest_guarantee},
        {"gradient_integrity", check_gradient_integrity},
        {"td3_target_semantics", check_td3_target_semantics},
        {"learning_smoke", [&] { return check_learning_smoke(out_root); }},
        {"train_determinism", [&] { return check_train_determinism(out_root); }},
    };

    int failures = 0;
    for (const auto& check : checks) {
        try {
            const std::string detail = check.run();
            std::printf("PASS %s: %s\n", check.name.c_str(), detail.c_str());
        } catch (const std::exception& e) {
            ++failures;
            std::printf("FAIL %s: %s\n", check.name.c_str(), e.what());
        }
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failures,
                checks.size());
    return failures;
}
