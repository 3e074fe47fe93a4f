#pragma once
#include <cstdint>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/wire.hpp"

namespace cuer {

/**
 * Checkpoint file: named flat f64 arrays with shape headers, little-endian.
 *
 *   header: magic "CUERNET1", version u32 = 1, section_count u32
 *   section: name_len u32, name bytes, dim_count u32, dims u64 * dim_count,
 *            value_count u64, values f64 * value_count
 *
 * dims are documentation (layer sizes for networks, {n} for optimizer
 * vectors); value_count is authoritative for the payload length.
 */
namespace checkpoint {

constexpr char kMagic[8] = {'C', 'U', 'E', 'R', 'N', 'E', 'T', '1'};
constexpr std::uint32_t kVersion = 1;

struct Section {
    std::vector<std::uint64_t> dims;
    std::vector<double> values;
};

using File = std::map<std::string, Section>;

inline void save(const std::string& path, const File& sections) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    std::string buf;
    buf.append(kMagic, 8);
    wire::put_u32(buf, kVersion);
    wire::put_u32(buf, static_cast<std::uint32_t>(sections.size()));
    for (const auto& [name, section] : sections) {
        wire::put_u32(buf, static_cast<std::uint32_t>(name.size()));
        buf.append(name);
        wire::put_u32(buf, static_cast<std::uint32_t>(section.dims.size()));
        for (std::uint64_t d : section.dims) wire::put_u64(buf, d);
        wire::put_u64(buf, static_cast<std::uint64_t>(section.values.size()));
        for (double v : section.values) wire::put_f64(buf, v);
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw std::runtime_error("checkpoint: write failed for " + path);
}

inline File load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("checkpoint: cannot open " + path);
    wire::StreamReader reader(in);
    char magic[8];
    reader.bytes(magic, 8);
    for (int i = 0; i < 8; ++i) {
        if (magic[i] != kMagic[i]) throw ParseError("checkpoint: bad magic", 0);
    }
    const std::uint32_t version = reader.u32();
    if (version != kVersion) {
        throw ParseError("checkpoint: unsupported version " + std::to_string(version),
                         reader.offset() - 4);
    }
    const std::uint32_t count = reader.u32();
    File sections;
    for (std::uint32_t s = 0; s < count; ++s) {
        const std::uint32_t name_len = reader.u32();
        if (name_len > 4096) {
            throw ParseError("checkpoint: implausible name length", reader.offset() - 4);
        }
        std::string name(name_len, '\0');
        reader.bytes(name.data(), name_len);
        Section section;
        const std::uint32_t dim_count = reader.u32();
        if (dim_count > 64) {
            throw ParseError("checkpoint: implausible dim count", reader.offset() - 4);
        }
        section.dims.resize(dim_count);
        for (std::uint32_t i = 0; i < dim_count; ++i) section.dims[i] = reader.u64();
        const std::uint64_t value_count = reader.u64();
        section.values.resize(value_count);
        for (std::uint64_t i = 0; i < value_count; ++i) section.values[i] = reader.f64();
        sections.emplace(std::move(name), std::move(section));
    }
    if (!reader.at_eof()) {
        throw ParseError("checkpoint: trailing bytes after last section", reader.offset());
    }
    return sections;
}

} // namespace checkpoint
} // namespace cuer
