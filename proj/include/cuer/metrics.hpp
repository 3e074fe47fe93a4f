#pragma once
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cuer/errors.hpp"

namespace cuer {

/// One evaluation point of a training run. Losses and ages are means over the
/// train steps since the previous record; floor_hits is cumulative.
struct MetricsRecord {
    std::uint64_t env_step = 0;
    double eval_return = 0.0;
    double critic_loss = 0.0;
    double actor_loss = 0.0;
    double psi = 0.0;
    double mean_sample_age = 0.0;
    double p95_sample_age = 0.0;
    double per_beta = 1.0;
    std::uint64_t cuer_floor_hits = 0;
};

// Column set and order are part of the file format; changing them is a
// format version change.
inline const char* kMetricsHeader =
    "env_step,eval_return,critic_loss,actor_loss,psi,"
    "mean_sample_age,p95_sample_age,per_beta,cuer_floor_hits";

namespace detail {

inline void append_g12(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    out += buf;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary); // binary: byte-identical across platforms
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace detail

/// Renders records to CSV text: `# key = value` provenance comments, the
/// fixed header row, one row per record. Doubles use %.12g so a reload
/// round-trips exactly for the value ranges that occur here.
inline std::string metrics_to_csv(
    const std::vector<MetricsRecord>& records,
    const std::vector<std::pair<std::string, std::string>>& provenance) {
    std::string out;
    for (const auto& [key, value] : provenance) {
        out += "# " + key + " = " + value + "\n";
    }
    out += kMetricsHeader;
    out += "\n";
    for (const MetricsRecord& r : records) {
        out += std::to_string(r.env_step);
        out += ',';
        detail::append_g12(out, r.eval_return);
        out += ',';
        detail::append_g12(out, r.critic_loss);
        out += ',';
        detail::append_g12(out, r.actor_loss);
        out += ',';
        detail::append_g12(out, r.psi);
        out += ',';
        detail::append_g12(out, r.mean_sample_age);
        out += ',';
        detail::append_g12(out, r.p95_sample_age);
        out += ',';
        detail::append_g12(out, r.per_beta);
        out += ',';
        out += std::to_string(r.cuer_floor_hits);
        out += '\n';
    }
    return out;
}

inline void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records,
                              const std::vector<std::pair<std::string, std::string>>& provenance) {
    detail::write_text_file(path, metrics_to_csv(records, provenance));
}

/// Reads a metrics CSV back. Comment lines are skipped; the header must match
/// the current schema exactly.
inline std::vector<MetricsRecord> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open metrics file '" + path + "'");
    std::vector<MetricsRecord> records;
    std::string line;
    bool saw_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != kMetricsHeader) {
                throw ConfigError(path + ": unexpected metrics header '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) {
            throw ConfigError(path + ": line " + std::to_string(line_no) +
                              ": expected 9 columns");
        }
        MetricsRecord r;
        r.env_step = std::strtoull(cells[0].c_str(), nullptr, 10);
        r.eval_return = std::strtod(cells[1].c_str(), nullptr);
        r.critic_loss = std::strtod(cells[2].c_str(), nullptr);
        r.actor_loss = std::strtod(cells[3].c_str(), nullptr);
        r.psi = std::strtod(cells[4].c_str(), nullptr);
        r.mean_sample_age = std::strtod(cells[5].c_str(), nullptr);
        r.p95_sample_age = std::strtod(cells[6].c_str(), nullptr);
        r.per_beta = std::strtod(cells[7].c_str(), nullptr);
        r.cuer_floor_hits = std::strtoull(cells[8].c_str(), nullptr, 10);
        records.push_back(r);
    }
    if (!saw_header) throw ConfigError(path + ": missing metrics header");
    return records;
}

} // namespace cuer
