#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuer/adam.hpp"
#include "cuer/batch.hpp"
#include "cuer/checkpoint.hpp"
#include "cuer/errors.hpp"
#include "cuer/mlp.hpp"
#include "cuer/replay_memory.hpp"
#include "cuer/rng.hpp"

namespace cuer {

struct Td3Config {
    std::size_t obs_dim = 0;
    std::size_t act_dim = 0;
    std::vector<std::size_t> hidden = {64, 64};
    double gamma = 0.99;
    double tau = 0.005;
    std::size_t policy_delay = 2;
    double target_noise_std = 0.2;
    double target_noise_clip = 0.5;
    double explore_noise_std = 0.1;
    std::size_t batch_size = 32;
    double actor_lr = 3e-4;
    double critic_lr = 3e-4;
    double grad_clip = 10.0;
};

/// Per-train-step observables surfaced to the experiment harness.
struct StepStats {
    double critic_loss = 0.0;
    bool actor_updated = false;
    double actor_loss = 0.0; // meaningful only when actor_updated
    double td_error_mean = 0.0;
    double psi = 0.0;
    std::vector<std::uint64_t> sample_ages; // env_step - birth_step, per occurrence
};

/// Twin-critic deterministic-policy agent: clipped double-Q targets, target
/// policy smoothing, delayed actor updates, Polyak-averaged target networks.
/// Actions live in [-1, 1]^act_dim (actor output layer is tanh).
class Td3Agent {
public:
    Td3Agent(const Td3Config& cfg, Rng& init_rng)
        : cfg_(cfg),
          actor_(actor_sizes(cfg), true, init_rng),
          actor_target_(actor_),
          critic1_(critic_sizes(cfg), false, init_rng),
          critic2_(critic_sizes(cfg), false, init_rng),
          critic1_target_(critic1_),
          critic2_target_(critic2_),
          actor_adam_(actor_.param_count()),
          critic1_adam_(critic1_.param_count()),
          critic2_adam_(critic2_.param_count()),
          actor_grad_(actor_.param_count(), 0.0),
          critic1_grad_(critic1_.param_count(), 0.0),
          critic2_grad_(critic2_.param_count(), 0.0),
          critic_input_(cfg.obs_dim + cfg.act_dim, 0.0),
          input_grad_(cfg.obs_dim + cfg.act_dim, 0.0) {
        validate(cfg);
    }

    const Td3Config& config() const { return cfg_; }

    /// a = clip(pi(s) + explore * Normal(0, sigma_act), -1, 1).
    std::vector<double> act(const std::vector<double>& state, bool explore, Rng& rng) {
        std::vector<double> action = actor_.forward(state, actor_cache_);
        if (explore) {
            for (double& a : action) {
                a = std::clamp(a + cfg_.explore_noise_std * rng.normal(), -1.0, 1.0);
            }
        }
        return action;
    }

    /// Smoothed target action: clip(pi'(s') + clip(noise, -c, c), -1, 1).
    /// Noise is drawn per action dimension even when sigma_target is zero so
    /// the rng stream advances identically across configurations.
    std::vector<double> target_action(const std::vector<double>& next_state, Rng& rng) {
        std::vector<double> action = actor_target_.forward(next_state, target_cache_);
        for (double& a : action) {
            const double noise = std::clamp(cfg_.target_noise_std * rng.normal(),
                                            -cfg_.target_noise_clip, cfg_.target_noise_clip);
            a = std::clamp(a + noise, -1.0, 1.0);
        }
        return action;
    }

    /// y_j = r_j + (1 - done_j) * gamma * min(Q'_1, Q'_2)(s'_j, a~_j).
    std::vector<double> compute_target(const Batch& batch, Rng& rng) {
        std::vector<double> y(batch.size());
        for (std::size_t j = 0; j < batch.size(); ++j) {
            const Transition& t = batch.transitions[j];
            const std::vector<double> a = target_action(t.next_state, rng);
            concat(t.next_state, a);
            const double q1 = critic1_target_.forward(critic_input_, q_cache_)[0];
            const double q2 = critic2_target_.forward(critic_input_, q_cache_)[0];
            y[j] = t.reward + (t.done ? 0.0 : cfg_.gamma * std::min(q1, q2));
            if (!std::isfinite(y[j])) throw NumericError("non-finite critic target");
        }
        return y;
    }

    /// delta_j = |y_j - Q_1(s_j, a_j)| (first-critic convention).
    std::vector<double> td_error(const Batch& batch, const std::vector<double>& y) {
        if (y.size() != batch.size()) throw std::invalid_argument("td_error: y size mismatch");
        std::vector<double> delta(batch.size());
        for (std::size_t j = 0; j < batch.size(); ++j) {
            const Transition& t = batch.transitions[j];
            concat(t.state, t.action);
            delta[j] = std::abs(y[j] - critic1_.forward(critic_input_, q_cache_)[0]);
            if (!std::isfinite(delta[j])) throw NumericError("non-finite TD error");
        }
        return delta;
    }

    /// Weighted squared-error critic loss and its gradients with respect to
    /// both critics: sum_j w_j [(Q_1 - y_j)^2 + (Q_2 - y_j)^2] / N. Gradients
    /// are written (not accumulated) into grad1/grad2 and validated finite
    /// before returning, so callers may step safely afterwards.
    double critic_loss_and_grads(const Batch& batch, const std::vector<double>& y,
                                 std::vector<double>& grad1, std::vector<double>& grad2) {
        if (batch.size() == 0) throw EmptyError("critic update: empty batch");
        if (y.size() != batch.size()) throw std::invalid_argument("critic update: y size mismatch");
        const double n = static_cast<double>(batch.size());
        grad1.assign(critic1_.param_count(), 0.0);
        grad2.assign(critic2_.param_count(), 0.0);
        double loss = 0.0;
        for (std::size_t j = 0; j < batch.size(); ++j) {
            const Transition& t = batch.transitions[j];
            const double w = batch.weights[j];
            concat(t.state, t.action);
            const double q1 = critic1_.forward(critic_input_, q_cache_)[0];
            critic1_.backward(q_cache_, {2.0 * w * (q1 - y[j]) / n}, grad1);
            const double q2 = critic2_.forward(critic_input_, q_cache_)[0];
            critic2_.backward(q_cache_, {2.0 * w * (q2 - y[j]) / n}, grad2);
            loss += w * ((q1 - y[j]) * (q1 - y[j]) + (q2 - y[j]) * (q2 - y[j])) / n;
        }
        if (!std::isfinite(loss)) throw NumericError("non-finite critic loss");
        require_finite(grad1, "critic1 gradient");
        require_finite(grad2, "critic2 gradient");
        return loss;
    }

    /// One Adam step on both critics. Returns the loss before the step. Both
    /// gradients are validated before either critic moves, so a numeric
    /// failure leaves the agent untouched.
    double critic_update(const Batch& batch, const std::vector<double>& y) {
        const double loss = critic_loss_and_grads(batch, y, critic1_grad_, critic2_grad_);
        clip_global_norm(critic1_grad_, cfg_.grad_clip);
        clip_global_norm(critic2_grad_, cfg_.grad_clip);
        adam_step(critic1_.params(), critic1_grad_, critic1_adam_, cfg_.critic_lr);
        adam_step(critic2_.params(), critic2_grad_, critic2_adam_, cfg_.critic_lr);
        return loss;
    }

    /// Actor objective -mean_j Q_1(s_j, pi(s_j)) and its gradient with
    /// respect to the actor parameters, chained through the critic's input
    /// gradient. The gradient is written (not accumulated) into grad.
    double actor_loss_and_grad(const Batch& batch, std::vector<double>& grad) {
        if (batch.size() == 0) throw EmptyError("actor update: empty batch");
        const double n = static_cast<double>(batch.size());
        grad.assign(actor_.param_count(), 0.0);
        std::fill(critic_grad_sink_.begin(), critic_grad_sink_.end(), 0.0);
        double loss = 0.0;
        for (std::size_t j = 0; j < batch.size(); ++j) {
            const Transition& t = batch.transitions[j];
            const std::vector<double>& a = actor_.forward(t.state, actor_cache_);
            concat(t.state, a);
            loss -= critic1_.forward(critic_input_, q_cache_)[0] / n;
            critic1_.backward(q_cache_, {-1.0 / n}, critic_grad_sink_, &input_grad_);
            action_grad_.assign(input_grad_.begin() + static_cast<std::ptrdiff_t>(cfg_.obs_dim),
                                input_grad_.end());
            actor_.backward(actor_cache_, action_grad_, grad);
        }
        if (!std::isfinite(loss)) throw NumericError("non-finite actor loss");
        require_finite(grad, "actor gradient");
        return loss;
    }

    /// One Adam step maximizing mean_j Q_1(s_j, pi(s_j)) (by minimizing its
    /// negation), then Polyak-blends all three target networks. Returns the
    /// minimized loss before the step.
    double actor_update(const Batch& batch) {
        const double loss = actor_loss_and_grad(batch, actor_grad_);
        clip_global_norm(actor_grad_, cfg_.grad_clip);
        adam_step(actor_.params(), actor_grad_, actor_adam_, cfg_.actor_lr);
        polyak_blend(actor_target_.params(), actor_.params(), cfg_.tau);
        polyak_blend(critic1_target_.params(), critic1_.params(), cfg_.tau);
        polyak_blend(critic2_target_.params(), critic2_.params(), cfg_.tau);
        return loss;
    }

    /// One full learning iteration: sample N transitions, regress both critics
    /// on the smoothed clipped-double-Q target, feed |delta| back to the
    /// sampler, and update the actor plus targets on every policy_delay-th
    /// call. After k calls the actor has been updated floor(k / policy_delay)
    /// times.
    StepStats train_step(ReplayMemory& memory, std::uint64_t env_step, Rng& strategy_rng,
                         Rng& smoothing_rng) {
        StepStats stats;
        const Batch batch = memory.sample(cfg_.batch_size, strategy_rng, env_step);
        const std::vector<double> y = compute_target(batch, smoothing_rng);
        const std::vector<double> delta = td_error(batch, y);
        stats.critic_loss = critic_update(batch, y);
        memory.update_feedback(batch.slots, delta);
        ++update_counter_;
        if (update_counter_ % cfg_.policy_delay == 0) {
            stats.actor_loss = actor_update(batch);
            stats.actor_updated = true;
            ++actor_update_counter_;
        }
        double td_sum = 0.0;
        for (double d : delta) td_sum += d;
        stats.td_error_mean = td_sum / static_cast<double>(delta.size());
        stats.psi = memory.strategy().total_priority();
        stats.sample_ages.reserve(batch.size());
        for (const Transition& t : batch.transitions) {
            stats.sample_ages.push_back(env_step - t.birth_step);
        }
        return stats;
    }

    std::uint64_t update_count() const { return update_counter_; }
    std::uint64_t actor_update_count() const { return actor_update_counter_; }

    Mlp& actor() { return actor_; }
    const Mlp& actor() const { return actor_; }
    Mlp& actor_target() { return actor_target_; }
    const Mlp& actor_target() const { return actor_target_; }
    Mlp& critic1() { return critic1_; }
    const Mlp& critic1() const { return critic1_; }
    Mlp& critic2() { return critic2_; }
    const Mlp& critic2() const { return critic2_; }
    Mlp& critic1_target() { return critic1_target_; }
    const Mlp& critic1_target() const { return critic1_target_; }
    Mlp& critic2_target() { return critic2_target_; }
    const Mlp& critic2_target() const { return critic2_target_; }

    void save(const std::string& path) const {
        checkpoint::File file;
        file["actor"] = net_section(actor_);
        file["actor_target"] = net_section(actor_target_);
        file["critic1"] = net_section(critic1_);
        file["critic1_target"] = net_section(critic1_target_);
        file["critic2"] = net_section(critic2_);
        file["critic2_target"] = net_section(critic2_target_);
        save_adam(file, "adam.actor", actor_adam_);
        save_adam(file, "adam.critic1", critic1_adam_);
        save_adam(file, "adam.critic2", critic2_adam_);
        file["update_counter"] = {{1}, {static_cast<double>(update_counter_)}};
        file["actor_update_counter"] = {{1}, {static_cast<double>(actor_update_counter_)}};
        checkpoint::save(path, file);
    }

    void load(const std::string& path) {
        const checkpoint::File file = checkpoint::load(path);
        load_net(file, "actor", actor_);
        load_net(file, "actor_target", actor_target_);
        load_net(file, "critic1", critic1_);
        load_net(file, "critic1_target", critic1_target_);
        load_net(file, "critic2", critic2_);
        load_net(file, "critic2_target", critic2_target_);
        load_adam(file, "adam.actor", actor_adam_);
        load_adam(file, "adam.critic1", critic1_adam_);
        load_adam(file, "adam.critic2", critic2_adam_);
        update_counter_ = static_cast<std::uint64_t>(scalar(file, "update_counter"));
        actor_update_counter_ =
            static_cast<std::uint64_t>(scalar(file, "actor_update_counter"));
    }

private:
    static std::vector<std::size_t> actor_sizes(const Td3Config& cfg) {
        std::vector<std::size_t> sizes = {cfg.obs_dim};
        sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
        sizes.push_back(cfg.act_dim);
        return sizes;
    }

    static std::vector<std::size_t> critic_sizes(const Td3Config& cfg) {
        std::vector<std::size_t> sizes = {cfg.obs_dim + cfg.act_dim};
        sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
        sizes.push_back(1);
        return sizes;
    }

    static void validate(const Td3Config& cfg) {
        if (cfg.obs_dim == 0 || cfg.act_dim == 0) {
            throw std::invalid_argument("td3: obs_dim and act_dim must be positive");
        }
        if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) {
            throw std::invalid_argument("td3: gamma must lie in [0, 1)");
        }
        if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) {
            throw std::invalid_argument("td3: tau must lie in (0, 1]");
        }
        if (cfg.policy_delay == 0) throw std::invalid_argument("td3: policy_delay must be >= 1");
        if (!(cfg.target_noise_clip > 0.0)) {
            throw std::invalid_argument("td3: target_noise_clip must be positive");
        }
        if (cfg.target_noise_std < 0.0 || cfg.explore_noise_std < 0.0) {
            throw std::invalid_argument("td3: noise stds must be non-negative");
        }
        if (cfg.batch_size == 0) throw std::invalid_argument("td3: batch_size must be >= 1");
        if (!(cfg.actor_lr > 0.0) || !(cfg.critic_lr > 0.0)) {
            throw std::invalid_argument("td3: learning rates must be positive");
        }
        if (!(cfg.grad_clip > 0.0)) throw std::invalid_argument("td3: grad_clip must be positive");
    }

    void concat(const std::vector<double>& state, const std::vector<double>& action) {
        std::copy(state.begin(), state.end(), critic_input_.begin());
        std::copy(action.begin(), action.end(),
                  critic_input_.begin() + static_cast<std::ptrdiff_t>(cfg_.obs_dim));
    }

    static void require_finite(const std::vector<double>& v, const char* what) {
        for (double x : v) {
            if (!std::isfinite(x)) {
                throw NumericError(std::string("non-finite ") + what);
            }
        }
    }

    static checkpoint::Section net_section(const Mlp& net) {
        checkpoint::Section s;
        s.dims.assign(net.sizes().begin(), net.sizes().end());
        s.values = net.params();
        return s;
    }

    static void load_net(const checkpoint::File& file, const std::string& name, Mlp& net) {
        const checkpoint::Section& s = require_section(file, name);
        if (s.values.size() != net.param_count()) {
            throw std::invalid_argument("checkpoint section '" + name +
                                        "' does not match the configured network shape");
        }
        net.params() = s.values;
    }

    static void save_adam(checkpoint::File& file, const std::string& prefix,
                          const AdamState& state) {
        file[prefix + ".m"] = {{state.m.size()}, state.m};
        file[prefix + ".v"] = {{state.v.size()}, state.v};
        file[prefix + ".t"] = {{1}, {static_cast<double>(state.t)}};
    }

    static void load_adam(const checkpoint::File& file, const std::string& prefix,
                          AdamState& state) {
        const checkpoint::Section& m = require_section(file, prefix + ".m");
        const checkpoint::Section& v = require_section(file, prefix + ".v");
        if (m.values.size() != state.m.size() || v.values.size() != state.v.size()) {
            throw std::invalid_argument("checkpoint section '" + prefix +
                                        "' does not match the optimizer shape");
        }
        state.m = m.values;
        state.v = v.values;
        state.t = static_cast<std::uint64_t>(scalar(file, prefix + ".t"));
    }

    static const checkpoint::Section& require_section(const checkpoint::File& file,
                                                      const std::string& name) {
        const auto it = file.find(name);
        if (it == file.end()) {
            throw std::invalid_argument("checkpoint is missing section '" + name + "'");
        }
        return it->second;
    }

    static double scalar(const checkpoint::File& file, const std::string& name) {
        const checkpoint::Section& s = require_section(file, name);
        if (s.values.size() != 1) {
            throw std::invalid_argument("checkpoint section '" + name + "' must hold one value");
        }
        return s.values[0];
    }

    Td3Config cfg_;
    Mlp actor_;
    Mlp actor_target_;
    Mlp critic1_;
    Mlp critic2_;
    Mlp critic1_target_;
    Mlp critic2_target_;
    AdamState actor_adam_;
    AdamState critic1_adam_;
    AdamState critic2_adam_;
    std::uint64_t update_counter_ = 0;
    std::uint64_t actor_update_counter_ = 0;

    // Scratch, reused across calls to avoid per-step allocation.
    MlpCache actor_cache_;
    MlpCache target_cache_;
    MlpCache q_cache_;
    std::vector<double> actor_grad_;
    std::vector<double> critic1_grad_;
    std::vector<double> critic2_grad_;
    std::vector<double> critic_grad_sink_ = std::vector<double>(critic1_.param_count(), 0.0);
    std::vector<double> critic_input_;
    std::vector<double> input_grad_;
    std::vector<double> action_grad_;
};

} // namespace cuer
