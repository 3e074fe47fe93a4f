#pragma once
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuer/rng.hpp"

namespace cuer {

struct EnvSpec {
    std::string name;
    std::size_t obs_dim = 0;
    std::size_t act_dim = 0;
    int max_episode_steps = 0;
    double reward_min = 0.0;
    double reward_max = 0.0;
};

struct StepResult {
    std::vector<double> next_obs;
    double reward = 0.0;
    bool terminal = false;  // genuine absorbing state
    bool truncated = false; // time limit only; never together with terminal
};

/**
 * Deterministic, seedable continuous-control task. Actions live in
 * [-1,1]^act_dim; out-of-range components are clipped (warning once per
 * instance), non-finite components are rejected before any state change.
 * step after an episode has ended, or before the first reset, is a logic
 * error: the caller owns episode boundaries.
 */
class Env {
public:
    virtual ~Env() = default;

    virtual const EnvSpec& spec() const = 0;
    virtual std::vector<double> reset(std::uint64_t seed) = 0;
    virtual StepResult step(const std::vector<double>& action) = 0;

    /// Physical constants and bounds as "key = value" lines.
    virtual std::string describe() const = 0;

protected:
    /// Validates then clips the action in place. Throws before any mutation.
    void sanitize_action(std::vector<double>& action, std::size_t act_dim) {
        if (action.size() != act_dim) {
            throw std::invalid_argument("env step: action dimension mismatch");
        }
        for (double a : action) {
            if (!std::isfinite(a)) {
                throw std::invalid_argument("env step: non-finite action component");
            }
        }
        for (double& a : action) {
            if (a < -1.0 || a > 1.0) {
                if (!clip_warned_) {
                    std::fprintf(stderr, "warning: action outside [-1,1] clipped\n");
                    clip_warned_ = true;
                }
                a = std::clamp(a, -1.0, 1.0);
            }
        }
    }

    void require_live_episode(bool in_episode) const {
        if (!in_episode) {
            throw std::logic_error("env step: no live episode (call reset first)");
        }
    }

private:
    bool clip_warned_ = false;
};

/**
 * 2-D point mass reaching the origin. Per step, with dt = 0.05 and unit
 * force gain:
 *
 *   v += a * dt;  p += v * dt;  v *= 0.99
 *   reward = -||p||_2 - 0.01 * ||a||^2   (a after clipping)
 *
 * Observation (px, py, vx, vy). Episodes start at rest with the position
 * uniform in [-0.25, 0.25]^2 and end in an absorbing state when the mass is
 * within 0.05 of the origin moving slower than 0.05, or by truncation at
 * 200 steps. Damping bounds every trajectory, so rewards stay in
 * [reward_min, 0].
 */
class PointMassEnv final : public Env {
public:
    static constexpr double kDt = 0.05;
    static constexpr double kDamping = 0.99;
    static constexpr double kInitHalfWidth = 0.25;
    static constexpr double kGoalRadius = 0.05;
    static constexpr double kGoalSpeed = 0.05;
    static constexpr double kActionCost = 0.01;
    static constexpr int kMaxEpisodeSteps = 200;

    PointMassEnv() {
        spec_.name = "pointmass";
        spec_.obs_dim = 4;
        spec_.act_dim = 2;
        spec_.max_episode_steps = kMaxEpisodeSteps;
        spec_.reward_min = -100.0;
        spec_.reward_max = 0.0;
    }

    const EnvSpec& spec() const override { return spec_; }

    std::vector<double> reset(std::uint64_t seed) override {
        Rng rng(seed);
        px_ = rng.uniform(-kInitHalfWidth, kInitHalfWidth);
        py_ = rng.uniform(-kInitHalfWidth, kInitHalfWidth);
        vx_ = 0.0;
        vy_ = 0.0;
        step_count_ = 0;
        in_episode_ = true;
        return observation();
    }

    StepResult step(const std::vector<double>& action) override {
        require_live_episode(in_episode_);
        std::vector<double> a = action;
        sanitize_action(a, 2);

        vx_ += a[0] * kDt;
        vy_ += a[1] * kDt;
        px_ += vx_ * kDt;
        py_ += vy_ * kDt;
        vx_ *= kDamping;
        vy_ *= kDamping;
        ++step_count_;

        StepResult result;
        result.next_obs = observation();
        const double dist = std::sqrt(px_ * px_ + py_ * py_);
        result.reward = -dist - kActionCost * (a[0] * a[0] + a[1] * a[1]);
        const double speed = std::sqrt(vx_ * vx_ + vy_ * vy_);
        result.terminal = dist < kGoalRadius && speed < kGoalSpeed;
        result.truncated = !result.terminal && step_count_ >= kMaxEpisodeSteps;
        if (result.terminal || result.truncated) in_episode_ = false;
        return result;
    }

    std::string describe() const override {
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "name = pointmass\nobs_dim = 4\nact_dim = 2\n"
                      "max_episode_steps = %d\ndt = %g\ndamping = %g\n"
                      "init_half_width = %g\ngoal_radius = %g\ngoal_speed = %g\n"
                      "action_cost = %g\nreward_range = [%g, %g]\n",
                      kMaxEpisodeSteps, kDt, kDamping, kInitHalfWidth, kGoalRadius,
                      kGoalSpeed, kActionCost, spec_.reward_min, spec_.reward_max);
        return buf;
    }

    /// Testing hook: place the mass directly.
    void set_state(double px, double py, double vx, double vy) {
        px_ = px;
        py_ = py;
        vx_ = vx;
        vy_ = vy;
        in_episode_ = true;
        step_count_ = 0;
    }

    double px() const { return px_; }
    double py() const { return py_; }
    double vx() const { return vx_; }
    double vy() const { return vy_; }

private:
    std::vector<double> observation() const { return {px_, py_, vx_, vy_}; }

    EnvSpec spec_;
    double px_ = 0.0, py_ = 0.0, vx_ = 0.0, vy_ = 0.0;
    int step_count_ = 0;
    bool in_episode_ = false;
};

/**
 * Damped pendulum swing-up. Angle theta is measured from upright (the goal)
 * and wrapped to [-pi, pi); angular velocity is clipped to [-8, 8]. Per step,
 * with torque = 2 * a:
 *
 *   theta_dd = (3g / 2l) * sin(theta) + (3 / (m l^2)) * torque - c * theta_d
 *   theta_d += theta_dd * dt  (clipped);  theta += theta_d * dt  (wrapped)
 *   reward = -(theta^2 + 0.1 * theta_d^2 + 0.001 * a^2)
 *
 * using the post-step state. Observation (cos theta, sin theta, theta_d).
 * Episodes start at theta ~ U[-pi, pi), theta_d ~ U[-1, 1] and only end by
 * truncation; there is no absorbing state.
 */
class PendulumEnv final : public Env {
public:
    static constexpr double kDt = 0.05;
    static constexpr double kGravity = 10.0;
    static constexpr double kMass = 1.0;
    static constexpr double kLength = 1.0;
    static constexpr double kTorqueGain = 2.0;
    static constexpr double kAngularDamping = 0.1;
    static constexpr double kMaxSpeed = 8.0;
    static constexpr int kMaxEpisodeSteps = 200;

    PendulumEnv() {
        spec_.name = "pendulum";
        spec_.obs_dim = 3;
        spec_.act_dim = 1;
        spec_.max_episode_steps = kMaxEpisodeSteps;
        const double pi = std::acos(-1.0);
        spec_.reward_min = -(pi * pi + 0.1 * kMaxSpeed * kMaxSpeed + 0.001);
        spec_.reward_max = 0.0;
    }

    const EnvSpec& spec() const override { return spec_; }

    std::vector<double> reset(std::uint64_t seed) override {
        Rng rng(seed);
        const double pi = std::acos(-1.0);
        theta_ = rng.uniform(-pi, pi);
        theta_dot_ = rng.uniform(-1.0, 1.0);
        step_count_ = 0;
        in_episode_ = true;
        return observation();
    }

    StepResult step(const std::vector<double>& action) override {
        require_live_episode(in_episode_);
        std::vector<double> a = action;
        sanitize_action(a, 1);

        const double torque = kTorqueGain * a[0];
        const double accel = (3.0 * kGravity / (2.0 * kLength)) * std::sin(theta_) +
                             (3.0 / (kMass * kLength * kLength)) * torque -
                             kAngularDamping * theta_dot_;
        theta_dot_ = std::clamp(theta_dot_ + accel * kDt, -kMaxSpeed, kMaxSpeed);
        theta_ = wrap_angle(theta_ + theta_dot_ * kDt);
        ++step_count_;

        StepResult result;
        result.next_obs = observation();
        result.reward =
            -(theta_ * theta_ + 0.1 * theta_dot_ * theta_dot_ + 0.001 * a[0] * a[0]);
        result.terminal = false;
        result.truncated = step_count_ >= kMaxEpisodeSteps;
        if (result.truncated) in_episode_ = false;
        return result;
    }

    std::string describe() const override {
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "name = pendulum\nobs_dim = 3\nact_dim = 1\n"
                      "max_episode_steps = %d\ndt = %g\ngravity = %g\nmass = %g\n"
                      "length = %g\ntorque_gain = %g\nangular_damping = %g\n"
                      "max_speed = %g\nreward_range = [%g, %g]\n",
                      kMaxEpisodeSteps, kDt, kGravity, kMass, kLength, kTorqueGain,
                      kAngularDamping, kMaxSpeed, spec_.reward_min, spec_.reward_max);
        return buf;
    }

    /// Testing hook: place the pendulum directly (theta wrapped, speed clipped).
    void set_state(double theta, double theta_dot) {
        theta_ = wrap_angle(theta);
        theta_dot_ = std::clamp(theta_dot, -kMaxSpeed, kMaxSpeed);
        in_episode_ = true;
        step_count_ = 0;
    }

    double theta() const { return theta_; }
    double theta_dot() const { return theta_dot_; }

    static double wrap_angle(double theta) {
        const double pi = std::acos(-1.0);
        const double two_pi = 2.0 * pi;
        double w = std::fmod(theta + pi, two_pi);
        if (w < 0.0) w += two_pi;
        return w - pi;
    }

private:
    std::vector<double> observation() const {
        return {std::cos(theta_), std::sin(theta_), theta_dot_};
    }

    EnvSpec spec_;
    double theta_ = 0.0;
    double theta_dot_ = 0.0;
    int step_count_ = 0;
    bool in_episode_ = false;
};

inline std::unique_ptr<Env> make_env(const std::string& name) {
    if (name == "pointmass") return std::make_unique<PointMassEnv>();
    if (name == "pendulum") return std::make_unique<PendulumEnv>();
    throw std::invalid_argument("unknown env: " + name);
}

} // namespace cuer
