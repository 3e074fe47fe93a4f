#pragma once
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "cuer/config.hpp"
#include "cuer/experiment.hpp"
#include "cuer/stats.hpp"
#include "cuer/svg.hpp"

namespace cuer {

struct StrategyCurve {
    std::string name;
    std::vector<double> env_steps;
    std::vector<double> mean_return;
    std::vector<double> std_return; // population std across seeds
    std::vector<std::uint64_t> seeds;
    std::vector<double> aulc_per_seed; // trapezoid over (env_step, eval_return)
    double aulc_mean = 0.0;
};

struct CompareResult {
    std::vector<StrategyCurve> strategies;
    std::string summary_csv_path;
    std::string aulc_csv_path;
    std::string svg_path;
};

/// Reads a grid file: one experiment-config path per line, `#` comments and
/// blank lines ignored. Relative paths resolve against the grid file's
/// directory.
inline std::vector<std::string> load_grid(const std::string& grid_path) {
    std::ifstream in(grid_path);
    if (!in) throw ConfigError("cannot open grid file '" + grid_path + "'");
    const std::filesystem::path base = std::filesystem::path(grid_path).parent_path();
    std::vector<std::string> paths;
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::filesystem::path p(line);
        paths.push_back(p.is_absolute() ? p.string() : (base / p).string());
    }
    if (paths.empty()) throw ConfigError("grid file '" + grid_path + "' lists no configs");
    return paths;
}

/// Runs every (config, seed) experiment in the grid, then aggregates
/// per-strategy mean +/- std eval-return curves and per-seed AULC. All
/// configs must share the env, the step budget, and the eval interval.
/// Emits compare_summary.csv, compare_aulc.csv, and learning_curves.svg
/// under out_dir alongside the per-run CSVs.
inline CompareResult compare(const std::vector<std::string>& config_paths,
                             const std::string& out_dir) {
    std::vector<ExperimentConfig> configs;
    for (const std::string& path : config_paths) configs.push_back(load_config(path));
    for (std::size_t i = 1; i < configs.size(); ++i) {
        if (configs[i].env != configs[0].env) {
            throw ConfigError("compare: configs disagree on env ('" + configs[0].env +
                              "' vs '" + configs[i].env + "')");
        }
        if (configs[i].total_steps != configs[0].total_steps) {
            throw ConfigError("compare: configs disagree on run.total_steps");
        }
        if (configs[i].eval_interval != configs[0].eval_interval) {
            throw ConfigError("compare: configs disagree on run.eval_interval");
        }
    }

    CompareResult result;
    std::set<std::string> used_names;
    for (const ExperimentConfig& cfg : configs) {
        StrategyCurve curve;
        curve.name = cfg.sampler.kind;
        for (int suffix = 2; !used_names.insert(curve.name).second; ++suffix) {
            curve.name = cfg.sampler.kind + "#" + std::to_string(suffix);
        }
        curve.seeds = cfg.seeds;

        std::vector<std::vector<double>> returns_by_seed;
        for (const std::uint64_t seed : cfg.seeds) {
            const RunResult run = run_experiment(cfg, seed, out_dir);
            std::vector<double> xs, ys;
            for (const MetricsRecord& r : run.records) {
                xs.push_back(static_cast<double>(r.env_step));
                ys.push_back(r.eval_return);
            }
            if (curve.env_steps.empty()) curve.env_steps = xs;
            curve.aulc_per_seed.push_back(trapezoid_area(xs, ys));
            returns_by_seed.push_back(std::move(ys));
        }
        for (std::size_t i = 0; i < curve.env_steps.size(); ++i) {
            std::vector<double> at_point;
            at_point.reserve(returns_by_seed.size());
            for (const auto& ys : returns_by_seed) at_point.push_back(ys[i]);
            curve.mean_return.push_back(mean(at_point));
            curve.std_return.push_back(std::sqrt(variance(at_point)));
        }
        curve.aulc_mean = mean(curve.aulc_per_seed);
        result.strategies.push_back(std::move(curve));
    }

    std::string summary = "strategy,env_step,mean_return,std_return,n_seeds\n";
    for (const StrategyCurve& c : result.strategies) {
        for (std::size_t i = 0; i < c.env_steps.size(); ++i) {
            summary += c.name + "," + std::to_string(static_cast<std::uint64_t>(c.env_steps[i]));
            summary += ",";
            detail::append_g12(summary, c.mean_return[i]);
            summary += ",";
            detail::append_g12(summary, c.std_return[i]);
            summary += "," + std::to_string(c.seeds.size()) + "\n";
        }
    }
    result.summary_csv_path = out_dir + "/compare_summary.csv";
    detail::write_text_file(result.summary_csv_path, summary);

    std::string aulc = "strategy,seed,aulc\n";
    for (const StrategyCurve& c : result.strategies) {
        for (std::size_t i = 0; i < c.seeds.size(); ++i) {
            aulc += c.name + "," + std::to_string(c.seeds[i]) + ",";
            detail::append_g12(aulc, c.aulc_per_seed[i]);
            aulc += "\n";
        }
    }
    result.aulc_csv_path = out_dir + "/compare_aulc.csv";
    detail::write_text_file(result.aulc_csv_path, aulc);

    std::vector<SvgSeries> series;
    for (const StrategyCurve& c : result.strategies) {
        SvgSeries s;
        s.name = c.name;
        s.xs = c.env_steps;
        s.ys = c.mean_return;
        s.band = c.std_return;
        series.push_back(std::move(s));
    }
    result.svg_path = out_dir + "/learning_curves.svg";
    detail::write_text_file(result.svg_path,
                            svg_line_chart("Deterministic eval return (" + configs[0].env + ")",
                                           "env step", "eval return", series));
    return result;
}

inline CompareResult compare_grid(const std::string& grid_path, const std::string& out_dir) {
    return compare(load_grid(grid_path), out_dir);
}

} // namespace cuer
