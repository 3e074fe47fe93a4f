#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "cuer/errors.hpp"
#include "cuer/replay_log.hpp"

namespace {

using cuer::replay_log::Header;
using cuer::replay_log::Reader;
using cuer::replay_log::Writer;

std::string temp_path(const std::string& name) {
    return std::string(::testing::TempDir()) + name;
}

cuer::Transition make_t(std::uint64_t id) {
    cuer::Transition t;
    t.id = id;
    t.birth_step = id * 3;
    t.state = {1.0 * id, -2.5};
    t.action = {0.25 * id};
    t.reward = -0.125 * id;
    t.next_state = {1.0 * id + 0.1, -2.4};
    t.done = (id % 2) == 1;
    return t;
}

TEST(ReplayLog, RoundTripPreservesAllEvents) {
    const std::string path = temp_path("roundtrip.log");
    Header header{2, 1, 32};
    {
        Writer writer(path, header);
        writer.push(make_t(0));
        writer.sample(5, 0, 0.75);
        writer.push(make_t(1));
        writer.sample(6, 1, 0.5);
        writer.sample(6, 0, 0.25);
        writer.evict(7, 0);
    }
    Reader reader(path);
    auto log = reader.read_all();

    EXPECT_EQ(log.header.obs_dim, 2u);
    EXPECT_EQ(log.header.act_dim, 1u);
    EXPECT_EQ(log.header.batch_size, 32u);

    ASSERT_EQ(log.pushes.size(), 2u);
    for (std::uint64_t i = 0; i < 2; ++i) {
        const auto& got = log.pushes[i].transition;
        const auto want = make_t(i);
        EXPECT_EQ(got.id, want.id);
        EXPECT_EQ(got.birth_step, want.birth_step);
        EXPECT_EQ(got.state, want.state);
        EXPECT_EQ(got.action, want.action);
        EXPECT_EQ(got.reward, want.reward);
        EXPECT_EQ(got.next_state, want.next_state);
        EXPECT_EQ(got.done, want.done);
    }

    ASSERT_EQ(log.samples.size(), 3u);
    EXPECT_EQ(log.samples[0].env_step, 5u);
    EXPECT_EQ(log.samples[0].id, 0u);
    EXPECT_EQ(log.samples[0].prob, 0.75);
    EXPECT_EQ(log.samples[2].prob, 0.25);

    ASSERT_EQ(log.evicts.size(), 1u);
    EXPECT_EQ(log.evicts[0].env_step, 7u);
    EXPECT_EQ(log.evicts[0].id, 0u);
}

TEST(ReplayLog, EmptyLogReadsHeaderOnly) {
    const std::string path = temp_path("empty.log");
    { Writer writer(path, Header{4, 2, 16}); }
    auto log = Reader(path).read_all();
    EXPECT_EQ(log.header.obs_dim, 4u);
    EXPECT_TRUE(log.pushes.empty());
    EXPECT_TRUE(log.samples.empty());
    EXPECT_TRUE(log.evicts.empty());
}

TEST(ReplayLog, CorruptMagicReportsOffsetZero) {
    const std::string path = temp_path("badmagic.log");
    {
        std::ofstream out(path, std::ios::binary);
        out.write("NOTALOG1................", 24);
    }
    try {
        Reader(path).read_all();
        FAIL() << "expected ParseError";
    } catch (const cuer::ParseError& e) {
        EXPECT_EQ(e.byte_offset(), 0u);
    }
}

TEST(ReplayLog, TruncatedRecordReportsByteOffset) {
    const std::string path = temp_path("truncated.log");
    {
        Writer writer(path, Header{2, 1, 32});
        writer.sample(5, 0, 0.75);
    }
    // Chop the final sample record (1 + 8 + 8 + 8 = 25 bytes) mid-field.
    std::string bytes;
    {
        std::ifstream in(path, std::ios::binary);
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }
    ASSERT_EQ(bytes.size(), 32u + 25u);
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out.write(bytes.data(), 40);
    }
    try {
        Reader(path).read_all();
        FAIL() << "expected ParseError";
    } catch (const cuer::ParseError& e) {
        EXPECT_EQ(e.byte_offset(), 40u);
        EXPECT_NE(std::string(e.what()).find("at byte 40"), std::string::npos);
    }
}

TEST(ReplayLog, UnknownTagReportsItsOffset) {
    const std::string path = temp_path("unknowntag.log");
    { Writer writer(path, Header{2, 1, 32}); }
    {
        std::ofstream out(path, std::ios::binary | std::ios::app);
        out.put('X');
    }
    try {
        Reader(path).read_all();
        FAIL() << "expected ParseError";
    } catch (const cuer::ParseError& e) {
        EXPECT_EQ(e.byte_offset(), 32u);
    }
}

} // namespace
