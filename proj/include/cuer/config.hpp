#pragma once
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/sampler_factory.hpp"
#include "cuer/td3.hpp"

namespace cuer {

/// Everything a single training run needs, parsed from a flat `key = value`
/// text file. `agent.batch_size` is the one batch size in the system: it
/// feeds both the learner and the sampler (the decrement-based strategy
/// initializes new priorities to this N).
struct ExperimentConfig {
    std::string env = "pointmass";
    std::size_t buffer_capacity = 10000;
    SamplerOptions sampler;
    Td3Config agent; // obs_dim / act_dim are filled from the env at run time
    std::uint64_t total_steps = 30000;
    std::uint64_t learning_starts = 1000;
    std::uint64_t eval_interval = 1000;
    std::size_t eval_episodes = 10;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    bool replay_log = false;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size() || value.empty()) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
    return v;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    if (value.empty() || value[0] == '-') {
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end != value.c_str() + value.size()) {
        throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
    }
    return static_cast<std::uint64_t>(v);
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

inline std::vector<std::uint64_t> parse_u64_list(const std::string& key,
                                                 const std::string& value) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_u64(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": expected a comma-separated list");
    return out;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

template <typename T>
std::string format_list(const std::vector<T>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace detail

/// Parses flat `key = value` configuration text. `#` starts a comment (whole
/// line or trailing); blank lines are ignored; keys may appear at most once.
/// Unknown keys and malformed values raise ConfigError naming the field.
inline ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        if (!seen.insert(key).second) throw ConfigError("duplicate config key '" + key + "'");

        using namespace detail;
        if (key == "env") {
            cfg.env = value;
        } else if (key == "buffer.capacity") {
            cfg.buffer_capacity = static_cast<std::size_t>(parse_u64(key, value));
        } else if (key == "sampler.kind") {
            cfg.sampler.kind = value;
        } else if (key == "sampler.alpha") {
            cfg.sampler.alpha = parse_double(key, value);
        } else if (key == "sampler.beta0") {
            cfg.sampler.beta0 = parse_double(key, value);
        } else if (key == "sampler.eps_per") {
            cfg.sampler.eps_per = parse_double(key, value);
        } else if (key == "sampler.eps_min") {
            cfg.sampler.eps_min = parse_double(key, value);
        } else if (key == "sampler.stratified") {
            cfg.sampler.stratified = parse_bool(key, value);
        } else if (key == "agent.hidden") {
            const auto dims = parse_u64_list(key, value);
            cfg.agent.hidden.assign(dims.begin(), dims.end());
        } else if (key == "agent.gamma") {
            cfg.agent.gamma = parse_double(key, value);
        } else if (key == "agent.tau") {
            cfg.agent.tau = parse_double(key, value);
        } else if (key == "agent.policy_delay") {
            cfg.agent.policy_delay = static_cast<std::size_t>(parse_u64(key, value));
        } else if (key == "agent.target_noise_std") {
            cfg.agent.target_noise_std = parse_double(key, value);
        } else if (key == "agent.target_noise_clip") {
            cfg.agent.target_noise_clip = parse_double(key, value);
        } else if (key == "agent.explore_noise_std") {
            cfg.agent.explore_noise_std = parse_double(key, value);
        } else if (key == "agent.batch_size") {
            cfg.agent.batch_size = static_cast<std::size_t>(parse_u64(key, value));
        } else if (key == "agent.actor_lr") {
            cfg.agent.actor_lr = parse_double(key, value);
        } else if (key == "agent.critic_lr") {
            cfg.agent.critic_lr = parse_double(key, value);
        } else if (key == "agent.grad_clip") {
            cfg.agent.grad_clip = parse_double(key, value);
        } else if (key == "run.total_steps") {
            cfg.total_steps = parse_u64(key, value);
        } else if (key == "run.learning_starts") {
            cfg.learning_starts = parse_u64(key, value);
        } else if (key == "run.eval_interval") {
            cfg.eval_interval = parse_u64(key, value);
        } else if (key == "run.eval_episodes") {
            cfg.eval_episodes = static_cast<std::size_t>(parse_u64(key, value));
        } else if (key == "run.seeds") {
            cfg.seeds = parse_u64_list(key, value);
        } else if (key == "run.replay_log") {
            cfg.replay_log = parse_bool(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    cfg.sampler.batch_size = cfg.agent.batch_size;

    static const std::set<std::string> envs = {"pointmass", "pendulum"};
    static const std::set<std::string> kinds = {"uniform", "per", "cuer", "cer", "cer+cuer"};
    if (!envs.count(cfg.env)) throw ConfigError("env: unknown environment '" + cfg.env + "'");
    if (!kinds.count(cfg.sampler.kind)) {
        throw ConfigError("sampler.kind: unknown strategy '" + cfg.sampler.kind + "'");
    }
    if (cfg.buffer_capacity < cfg.agent.batch_size) {
        throw ConfigError("buffer.capacity: must be >= agent.batch_size");
    }
    if (cfg.eval_interval == 0) throw ConfigError("run.eval_interval: must be >= 1");
    if (cfg.eval_episodes == 0) throw ConfigError("run.eval_episodes: must be >= 1");
    if (cfg.seeds.empty()) throw ConfigError("run.seeds: must list at least one seed");
    std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
    if (uniq.size() != cfg.seeds.size()) throw ConfigError("run.seeds: seeds must be distinct");
    return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

/// Canonical key/value listing of a fully-resolved config, in fixed order.
/// Embedded into every metrics CSV as comment lines for provenance.
inline std::vector<std::pair<std::string, std::string>> resolved(const ExperimentConfig& cfg) {
    using namespace detail;
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("env", cfg.env);
    out.emplace_back("buffer.capacity", std::to_string(cfg.buffer_capacity));
    out.emplace_back("sampler.kind", cfg.sampler.kind);
    out.emplace_back("sampler.alpha", format_double(cfg.sampler.alpha));
    out.emplace_back("sampler.beta0", format_double(cfg.sampler.beta0));
    out.emplace_back("sampler.eps_per", format_double(cfg.sampler.eps_per));
    out.emplace_back("sampler.eps_min", format_double(cfg.sampler.eps_min));
    out.emplace_back("sampler.stratified", cfg.sampler.stratified ? "true" : "false");
    out.emplace_back("agent.hidden", format_list(cfg.agent.hidden));
    out.emplace_back("agent.gamma", format_double(cfg.agent.gamma));
    out.emplace_back("agent.tau", format_double(cfg.agent.tau));
    out.emplace_back("agent.policy_delay", std::to_string(cfg.agent.policy_delay));
    out.emplace_back("agent.target_noise_std", format_double(cfg.agent.target_noise_std));
    out.emplace_back("agent.target_noise_clip", format_double(cfg.agent.target_noise_clip));
    out.emplace_back("agent.explore_noise_std", format_double(cfg.agent.explore_noise_std));
    out.emplace_back("agent.batch_size", std::to_string(cfg.agent.batch_size));
    out.emplace_back("agent.actor_lr", format_double(cfg.agent.actor_lr));
    out.emplace_back("agent.critic_lr", format_double(cfg.agent.critic_lr));
    out.emplace_back("agent.grad_clip", format_double(cfg.agent.grad_clip));
    out.emplace_back("run.total_steps", std::to_string(cfg.total_steps));
    out.emplace_back("run.learning_starts", std::to_string(cfg.learning_starts));
    out.emplace_back("run.eval_interval", std::to_string(cfg.eval_interval));
    out.emplace_back("run.eval_episodes", std::to_string(cfg.eval_episodes));
    out.emplace_back("run.seeds", format_list(cfg.seeds));
    out.emplace_back("run.replay_log", cfg.replay_log ? "true" : "false");
    return out;
}

} // namespace cuer
