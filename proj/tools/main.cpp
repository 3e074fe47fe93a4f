#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuer/analyze.hpp"
#include "cuer/compare.hpp"
#include "cuer/config.hpp"
#include "cuer/envs.hpp"
#include "cuer/errors.hpp"
#include "cuer/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct TrainArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string save_checkpoint;
    std::string load_checkpoint;
};

int run_train(const TrainArgs& args) {
    const cuer::ExperimentConfig cfg = cuer::load_config(args.config_path);
    std::vector<std::uint64_t> seeds =
        args.seed_given ? std::vector<std::uint64_t>{args.seed} : cfg.seeds;
    if (!args.save_checkpoint.empty() && seeds.size() > 1) {
        throw cuer::ConfigError(
            "--save-checkpoint needs a single seed; pass --seed to pick one");
    }
    std::filesystem::create_directories(args.out_dir);
    for (const std::uint64_t seed : seeds) {
        const cuer::RunResult result = cuer::run_experiment(
            cfg, seed, args.out_dir, args.load_checkpoint, args.save_checkpoint);
        std::printf("wrote %s\n", result.csv_path.c_str());
        if (!result.replay_log_path.empty()) {
            std::printf("wrote %s\n", result.replay_log_path.c_str());
        }
    }
    if (!args.save_checkpoint.empty()) {
        std::printf("wrote %s\n", args.save_checkpoint.c_str());
    }
    return 0;
}

int run_compare(const std::string& grid_path, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const cuer::CompareResult result = cuer::compare_grid(grid_path, out_dir);
    std::printf("wrote %s\n", result.summary_csv_path.c_str());
    std::printf("wrote %s\n", result.aulc_csv_path.c_str());
    std::printf("wrote %s\n", result.svg_path.c_str());
    return 0;
}

int run_analyze(const std::string& log_path, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const cuer::FairnessReport report = cuer::analyze_replay(log_path);
    const std::string stem = std::filesystem::path(log_path).stem().string();
    const std::string summary = cuer::write_analysis(report, out_dir, stem);
    std::printf("transitions: %llu (%llu evicted)\n",
                static_cast<unsigned long long>(report.transitions_total),
                static_cast<unsigned long long>(report.transitions_evicted));
    std::printf("lifetime replays: mean %.6g, variance %.6g\n",
                report.mean_lifetime_replays, report.var_lifetime_replays);
    if (report.no_fully_evicted) {
        std::printf("note: no fully-evicted transitions; lifetime stats are partial\n");
    }
    std::printf("wrote %s\n", summary.c_str());
    return 0;
}

int run_describe_env(const std::string& name) {
    const auto env = cuer::make_env(name);
    const cuer::EnvSpec& spec = env->spec();
    std::printf("name = %s\n", spec.name.c_str());
    std::printf("obs_dim = %zu\n", spec.obs_dim);
    std::printf("act_dim = %zu\n", spec.act_dim);
    std::printf("max_episode_steps = %d\n", spec.max_episode_steps);
    std::printf("reward_min = %g\n", spec.reward_min);
    std::printf("reward_max = %g\n", spec.reward_max);
    std::printf("action_range = [-1, 1]\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuer: prioritized experience replay experiment harness"};
    app.require_subcommand(1);

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Train one agent per seed from a config file");
    train->add_option("config", train_args.config_path, "experiment config file")->required();
    CLI::Option* seed_opt =
        train->add_option("--seed", train_args.seed, "run only this seed (default: all run.seeds)");
    train->add_option("--out", train_args.out_dir, "output directory (default: .)");
    train->add_option("--save-checkpoint", train_args.save_checkpoint,
                      "write the final agent state to this file (single seed only)");
    train->add_option("--load-checkpoint", train_args.load_checkpoint,
                      "initialize the agent from this checkpoint file");

    std::string grid_path;
    std::string compare_out = ".";
    CLI::App* compare = app.add_subcommand(
        "compare", "Run every config in a grid file and aggregate learning curves");
    compare->add_option("grid", grid_path, "text file with one config path per line")->required();
    compare->add_option("--out", compare_out, "output directory (default: .)");

    std::string log_path;
    std::string analyze_out = ".";
    CLI::App* analyze =
        app.add_subcommand("analyze", "Compute replay fairness statistics from a replay log");
    analyze->add_option("log", log_path, "binary replay log produced by run.replay_log = true")
        ->required();
    analyze->add_option("--out", analyze_out, "output directory (default: .)");

    std::string env_name;
    CLI::App* describe = app.add_subcommand("describe-env", "Print an environment's constants");
    describe->add_option("name", env_name, "environment name (pointmass | pendulum)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*train) {
            train_args.seed_given = seed_opt->count() > 0;
            return run_train(train_args);
        }
        if (*compare) return run_compare(grid_path, compare_out);
        if (*analyze) return run_analyze(log_path, analyze_out);
        if (*describe) return run_describe_env(env_name);
    } catch (const cuer::NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
    return kExitConfig;
}
