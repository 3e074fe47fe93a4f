#pragma once
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/metrics.hpp"
#include "cuer/replay_log.hpp"
#include "cuer/stats.hpp"
#include "cuer/strategy.hpp"

namespace cuer {

/// Fairness and age statistics extracted from a replay event log.
///
/// Lifetime replay counts are defined over fully-evicted transitions only:
/// a transition still resident when the log ends has an incomplete count, so
/// it is excluded. If nothing was evicted the report says so instead of
/// reporting an empty mean.
struct FairnessReport {
    std::uint64_t transitions_total = 0;
    std::uint64_t transitions_evicted = 0;
    double mean_lifetime_replays = 0.0;
    double var_lifetime_replays = 0.0;
    bool no_fully_evicted = false;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram; // count -> transitions

    struct AgeRow {
        std::uint64_t env_step = 0;
        double mean_age = 0.0;
        double p95_age = 0.0;
        std::uint64_t draws = 0;
    };
    std::vector<AgeRow> age_curve;

    // Predicted (1 / (P_i * N), in batches) vs observed mean gap between
    // consecutive sample occurrences, for up to 100 transitions with at least
    // 5 occurrences. Meaningful under static priorities.
    struct ProbeRow {
        std::uint64_t id = 0;
        double prob = 0.0;
        double predicted_interval = 0.0;
        double observed_interval = 0.0;
        std::uint64_t occurrences = 0;
    };
    std::vector<ProbeRow> probes;
};

inline FairnessReport analyze_replay(const std::string& log_path) {
    replay_log::Reader reader(log_path);
    const replay_log::Log log = reader.read_all();

    FairnessReport report;
    report.transitions_total = log.pushes.size();

    std::map<std::uint64_t, std::uint64_t> birth; // id -> birth env step
    for (const auto& p : log.pushes) birth[p.transition.id] = p.transition.birth_step;

    std::map<std::uint64_t, std::uint64_t> counts; // id -> sample occurrences
    std::map<std::uint64_t, std::vector<std::uint64_t>> occurrence_steps;
    std::map<std::uint64_t, double> first_prob;
    std::map<std::uint64_t, std::vector<double>> ages_by_step;
    for (const auto& s : log.samples) {
        const auto b = birth.find(s.id);
        if (b == birth.end()) {
            throw std::runtime_error("replay log samples id " + std::to_string(s.id) +
                                     " that was never pushed");
        }
        ++counts[s.id];
        occurrence_steps[s.id].push_back(s.env_step);
        first_prob.emplace(s.id, s.prob);
        ages_by_step[s.env_step].push_back(static_cast<double>(s.env_step - b->second));
    }

    std::vector<double> lifetime;
    std::map<std::uint64_t, std::uint64_t> hist;
    for (const auto& e : log.evicts) {
        ++report.transitions_evicted;
        const auto it = counts.find(e.id);
        const std::uint64_t n = it == counts.end() ? 0 : it->second;
        lifetime.push_back(static_cast<double>(n));
        ++hist[n];
    }
    report.no_fully_evicted = lifetime.empty();
    report.mean_lifetime_replays = mean(lifetime);
    report.var_lifetime_replays = variance(lifetime);
    report.histogram.assign(hist.begin(), hist.end());

    for (const auto& [step, ages] : ages_by_step) {
        FairnessReport::AgeRow row;
        row.env_step = step;
        row.mean_age = mean(ages);
        row.p95_age = percentile95(ages);
        row.draws = ages.size();
        report.age_curve.push_back(row);
    }

    const std::size_t n_draws = log.header.batch_size;
    for (const auto& [id, steps] : occurrence_steps) {
        if (steps.size() < 5 || report.probes.size() >= 100) continue;
        std::vector<double> gaps;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            gaps.push_back(static_cast<double>(steps[i + 1] - steps[i]));
        }
        FairnessReport::ProbeRow row;
        row.id = id;
        row.prob = first_prob[id];
        row.predicted_interval =
            row.prob > 0.0 && row.prob <= 1.0 && n_draws > 0
                ? expected_sampling_interval(row.prob, n_draws)
                : 0.0;
        row.observed_interval = mean(gaps);
        row.occurrences = steps.size();
        report.probes.push_back(row);
    }
    return report;
}

/// Writes the four analysis CSVs under out_dir with the given file stem.
/// Returns the summary CSV path. Output is a pure function of the log.
inline std::string write_analysis(const FairnessReport& report, const std::string& out_dir,
                                  const std::string& stem) {
    std::string summary =
        "transitions_total,transitions_evicted,mean_lifetime_replays,var_lifetime_replays,"
        "note\n";
    summary += std::to_string(report.transitions_total) + "," +
               std::to_string(report.transitions_evicted) + ",";
    detail::append_g12(summary, report.mean_lifetime_replays);
    summary += ",";
    detail::append_g12(summary, report.var_lifetime_replays);
    summary += ",";
    summary += report.no_fully_evicted ? "no fully-evicted transitions" : "";
    summary += "\n";
    const std::string summary_path = out_dir + "/" + stem + "_fairness_summary.csv";
    detail::write_text_file(summary_path, summary);

    std::string hist = "lifetime_replays,transitions\n";
    for (const auto& [count, n] : report.histogram) {
        hist += std::to_string(count) + "," + std::to_string(n) + "\n";
    }
    detail::write_text_file(out_dir + "/" + stem + "_fairness_histogram.csv", hist);

    std::string ages = "env_step,mean_age,p95_age,draws\n";
    for (const auto& row : report.age_curve) {
        ages += std::to_string(row.env_step) + ",";
        detail::append_g12(ages, row.mean_age);
        ages += ",";
        detail::append_g12(ages, row.p95_age);
        ages += "," + std::to_string(row.draws) + "\n";
    }
    detail::write_text_file(out_dir + "/" + stem + "_age_curve.csv", ages);

    std::string probes = "id,prob,predicted_interval,observed_interval,occurrences\n";
    for (const auto& row : report.probes) {
        probes += std::to_string(row.id) + ",";
        detail::append_g12(probes, row.prob);
        probes += ",";
        detail::append_g12(probes, row.predicted_interval);
        probes += ",";
        detail::append_g12(probes, row.observed_interval);
        probes += "," + std::to_string(row.occurrences) + "\n";
    }
    detail::write_text_file(out_dir + "/" + stem + "_probe_intervals.csv", probes);
    return summary_path;
}

} // namespace cuer
