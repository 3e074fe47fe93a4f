#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "cuer/errors.hpp"
#include "cuer/replay_buffer.hpp"

namespace {

cuer::Transition make_t(double tag, std::size_t obs_dim = 2, std::size_t act_dim = 1) {
    cuer::Transition t;
    t.state.assign(obs_dim, tag);
    t.action.assign(act_dim, tag + 0.5);
    t.reward = tag * 10.0;
    t.next_state.assign(obs_dim, tag + 1.0);
    t.done = false;
    t.birth_step = static_cast<std::uint64_t>(tag);
    return t;
}

TEST(ReplayBuffer, RejectsZeroCapacity) {
    EXPECT_THROW(cuer::ReplayBuffer(0, 2, 1), std::invalid_argument);
}

TEST(ReplayBuffer, FirstPushLandsInSlotZeroWithoutEviction) {
    cuer::ReplayBuffer buf(4, 2, 1);
    auto res = buf.push(make_t(1.0));
    EXPECT_EQ(res.slot, 0u);
    EXPECT_FALSE(res.evicted.has_value());
    EXPECT_EQ(buf.size(), 1u);
    EXPECT_EQ(buf.get(0).reward, 10.0);
    EXPECT_EQ(buf.get(0).id, 0u);
}

TEST(ReplayBuffer, ThirdPushIntoCapacityTwoEvictsOldest) {
    cuer::ReplayBuffer buf(2, 2, 1);
    buf.push(make_t(1.0));
    buf.push(make_t(2.0));
    auto res = buf.push(make_t(3.0));
    EXPECT_EQ(res.slot, 0u);
    ASSERT_TRUE(res.evicted.has_value());
    EXPECT_EQ(res.evicted->reward, 10.0);
    EXPECT_EQ(res.evicted->id, 0u);
    EXPECT_EQ(buf.size(), 2u);
    EXPECT_EQ(buf.get(0).reward, 30.0);
    EXPECT_EQ(buf.get(1).reward, 20.0);
}

TEST(ReplayBuffer, SlotFollowsPushCountModuloCapacity) {
    cuer::ReplayBuffer buf(3, 2, 1);
    for (int i = 0; i < 10; ++i) {
        auto res = buf.push(make_t(static_cast<double>(i)));
        EXPECT_EQ(res.slot, static_cast<std::size_t>(i % 3));
        EXPECT_EQ(buf.push_count(), static_cast<std::uint64_t>(i + 1));
    }
}

TEST(ReplayBuffer, IdsAreSequentialBirthOrder) {
    cuer::ReplayBuffer buf(3, 2, 1);
    for (int i = 0; i < 7; ++i) {
        auto res = buf.push(make_t(static_cast<double>(i)));
        EXPECT_EQ(buf.get(res.slot).id, static_cast<std::uint64_t>(i));
    }
}

// Oracle: the buffer contents must equal the tail of an append-only log,
// with entry j of the log living at slot j % capacity.
TEST(ReplayBuffer, MatchesAppendOnlyLogTailOracle) {
    const std::size_t capacity = 7;
    cuer::ReplayBuffer buf(capacity, 2, 1);
    std::vector<cuer::Transition> log;
    std::mt19937_64 rng(42);
    for (int i = 0; i < 70; ++i) {
        auto t = make_t(static_cast<double>(rng() % 1000));
        log.push_back(t);
        buf.push(std::move(t));

        const std::size_t live = std::min(log.size(), capacity);
        EXPECT_EQ(buf.size(), live);
        for (std::size_t j = log.size() - live; j < log.size(); ++j) {
            const auto& got = buf.get(j % capacity);
            EXPECT_EQ(got.reward, log[j].reward);
            EXPECT_EQ(got.state, log[j].state);
            EXPECT_EQ(got.id, static_cast<std::uint64_t>(j));
        }
    }
}

TEST(ReplayBuffer, LatestTracksNewestAfterWraparound) {
    cuer::ReplayBuffer buf(3, 2, 1);
    for (int i = 0; i < 8; ++i) {
        buf.push(make_t(static_cast<double>(i)));
        EXPECT_EQ(buf.latest().reward, i * 10.0);
        EXPECT_EQ(buf.latest_slot(), static_cast<std::size_t>(i % 3));
    }
}

TEST(ReplayBuffer, EmptyAndUnoccupiedAccessesThrow) {
    cuer::ReplayBuffer buf(4, 2, 1);
    EXPECT_THROW(buf.latest(), cuer::EmptyError);
    EXPECT_THROW(buf.latest_slot(), cuer::EmptyError);
    EXPECT_THROW(buf.get(0), std::invalid_argument);
    buf.push(make_t(1.0));
    EXPECT_NO_THROW(buf.get(0));
    EXPECT_THROW(buf.get(1), std::invalid_argument);
    EXPECT_THROW(buf.get(4), std::invalid_argument);
}

TEST(ReplayBuffer, RejectsDimensionMismatch) {
    cuer::ReplayBuffer buf(4, 2, 1);
    auto bad_state = make_t(1.0, 3, 1);
    EXPECT_THROW(buf.push(std::move(bad_state)), std::invalid_argument);
    auto bad_action = make_t(1.0, 2, 2);
    EXPECT_THROW(buf.push(std::move(bad_action)), std::invalid_argument);
    auto bad_next = make_t(1.0);
    bad_next.next_state.resize(1);
    EXPECT_THROW(buf.push(std::move(bad_next)), std::invalid_argument);
    EXPECT_EQ(buf.size(), 0u);
}

} // namespace
