#pragma once
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/transition.hpp"
#include "cuer/wire.hpp"

namespace cuer {

/**
 * Binary replay event log. Little-endian, fixed-width records:
 *
 *   header (32 bytes): magic "CUERLOG1", version u32, obs_dim u32,
 *                      act_dim u32, batch_size u32, reserved u64
 *   'P' push:   tag u8, id u64, birth_step u64,
 *               state f64*obs, action f64*act, reward f64,
 *               next_state f64*obs, done u8
 *   'S' sample: tag u8, env_step u64, id u64, prob f64
 *   'E' evict:  tag u8, env_step u64, id u64
 *
 * One 'S' record per draw occurrence; a transition drawn k times in one
 * batch appears k times. `prob` is the instantaneous sampling probability
 * of the drawn slot at the time of the draw.
 */
namespace replay_log {

constexpr char kMagic[8] = {'C', 'U', 'E', 'R', 'L', 'O', 'G', '1'};
constexpr std::uint32_t kVersion = 1;

struct Header {
    std::uint32_t obs_dim = 0;
    std::uint32_t act_dim = 0;
    std::uint32_t batch_size = 0;
};

struct PushEvent {
    Transition transition;
};

struct SampleEvent {
    std::uint64_t env_step = 0;
    std::uint64_t id = 0;
    double prob = 0.0;
};

struct EvictEvent {
    std::uint64_t env_step = 0;
    std::uint64_t id = 0;
};

class Writer {
public:
    Writer(const std::string& path, const Header& header)
        : out_(path, std::ios::binary), header_(header) {
        if (!out_) throw std::runtime_error("replay log: cannot open " + path + " for writing");
        std::string buf;
        buf.append(kMagic, 8);
        wire::put_u32(buf, kVersion);
        wire::put_u32(buf, header.obs_dim);
        wire::put_u32(buf, header.act_dim);
        wire::put_u32(buf, header.batch_size);
        wire::put_u64(buf, 0);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }

    void push(const Transition& t) {
        std::string buf;
        wire::put_u8(buf, 'P');
        wire::put_u64(buf, t.id);
        wire::put_u64(buf, t.birth_step);
        for (double v : t.state) wire::put_f64(buf, v);
        for (double v : t.action) wire::put_f64(buf, v);
        wire::put_f64(buf, t.reward);
        for (double v : t.next_state) wire::put_f64(buf, v);
        wire::put_u8(buf, t.done ? 1 : 0);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }

    void sample(std::uint64_t env_step, std::uint64_t id, double prob) {
        std::string buf;
        wire::put_u8(buf, 'S');
        wire::put_u64(buf, env_step);
        wire::put_u64(buf, id);
        wire::put_f64(buf, prob);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }

    void evict(std::uint64_t env_step, std::uint64_t id) {
        std::string buf;
        wire::put_u8(buf, 'E');
        wire::put_u64(buf, env_step);
        wire::put_u64(buf, id);
        out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    }

    void flush() { out_.flush(); }

private:
    std::ofstream out_;
    Header header_;
};

struct Log {
    Header header;
    std::vector<PushEvent> pushes;
    std::vector<SampleEvent> samples;
    std::vector<EvictEvent> evicts;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path, std::ios::binary), reader_(in_) {
        if (!in_) throw std::runtime_error("replay log: cannot open " + path);
    }

    Log read_all() {
        Log log;
        char magic[8];
        reader_.bytes(magic, 8);
        for (int i = 0; i < 8; ++i) {
            if (magic[i] != kMagic[i]) throw ParseError("replay log: bad magic", 0);
        }
        const std::uint32_t version = reader_.u32();
        if (version != kVersion) {
            throw ParseError("replay log: unsupported version " + std::to_string(version),
                             reader_.offset() - 4);
        }
        log.header.obs_dim = reader_.u32();
        log.header.act_dim = reader_.u32();
        log.header.batch_size = reader_.u32();
        reader_.u64(); // reserved

        while (!reader_.at_eof()) {
            const std::uint8_t tag = reader_.u8();
            switch (tag) {
                case 'P': {
                    PushEvent ev;
                    ev.transition.id = reader_.u64();
                    ev.transition.birth_step = reader_.u64();
                    ev.transition.state = read_f64s(log.header.obs_dim);
                    ev.transition.action = read_f64s(log.header.act_dim);
                    ev.transition.reward = reader_.f64();
                    ev.transition.next_state = read_f64s(log.header.obs_dim);
                    ev.transition.done = reader_.u8() != 0;
                    log.pushes.push_back(std::move(ev));
                    break;
                }
                case 'S': {
                    SampleEvent ev;
                    ev.env_step = reader_.u64();
                    ev.id = reader_.u64();
                    ev.prob = reader_.f64();
                    log.samples.push_back(ev);
                    break;
                }
                case 'E': {
                    EvictEvent ev;
                    ev.env_step = reader_.u64();
                    ev.id = reader_.u64();
                    log.evicts.push_back(ev);
                    break;
                }
                default:
                    throw ParseError("replay log: unknown record tag", reader_.offset() - 1);
            }
        }
        return log;
    }

private:
    std::vector<double> read_f64s(std::size_t n) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = reader_.f64();
        return out;
    }

    std::ifstream in_;
    wire::StreamReader reader_;
};

} // namespace replay_log
} // namespace cuer
