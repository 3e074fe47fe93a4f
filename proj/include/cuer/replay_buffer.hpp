#pragma once
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/transition.hpp"

namespace cuer {

/**
 * Fixed-capacity circular transition store with slot-stable addressing.
 *
 * Slots fill sequentially; once full, push k overwrites the transition from
 * push k - capacity (FIFO). push() reports the evicted occupant so the active
 * sampling strategy can retire its priority state.
 */
class ReplayBuffer {
public:
    struct PushResult {
        std::size_t slot;
        std::optional<Transition> evicted;
    };

    ReplayBuffer(std::size_t capacity, std::size_t obs_dim, std::size_t act_dim)
        : capacity_(capacity), obs_dim_(obs_dim), act_dim_(act_dim), slots_(capacity) {
        if (capacity == 0) {
            throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
        }
    }

    /// Stores t at the write cursor, stamping its id. Returns the slot index
    /// and the transition it displaced, if any.
    PushResult push(Transition t) {
        if (t.state.size() != obs_dim_ || t.next_state.size() != obs_dim_) {
            throw std::invalid_argument("ReplayBuffer::push: observation dimension mismatch");
        }
        if (t.action.size() != act_dim_) {
            throw std::invalid_argument("ReplayBuffer::push: action dimension mismatch");
        }
        const std::size_t slot = static_cast<std::size_t>(push_count_ % capacity_);
        t.id = push_count_;
        ++push_count_;

        PushResult result{slot, std::nullopt};
        if (slots_[slot].has_value()) {
            result.evicted = std::move(slots_[slot]);
        }
        slots_[slot] = std::move(t);
        return result;
    }

    const Transition& get(std::size_t slot) const {
        if (slot >= capacity_ || !slots_[slot].has_value()) {
            throw std::invalid_argument("ReplayBuffer::get: slot unoccupied or out of range");
        }
        return *slots_[slot];
    }

    /// The transition with the largest id (most recent push).
    const Transition& latest() const {
        if (push_count_ == 0) throw EmptyError("ReplayBuffer::latest: buffer is empty");
        return *slots_[latest_slot()];
    }

    std::size_t latest_slot() const {
        if (push_count_ == 0) throw EmptyError("ReplayBuffer::latest_slot: buffer is empty");
        return static_cast<std::size_t>((push_count_ - 1) % capacity_);
    }

    std::size_t size() const {
        return push_count_ < capacity_ ? static_cast<std::size_t>(push_count_) : capacity_;
    }

    std::size_t capacity() const { return capacity_; }
    std::size_t obs_dim() const { return obs_dim_; }
    std::size_t act_dim() const { return act_dim_; }
    std::uint64_t push_count() const { return push_count_; }

private:
    std::size_t capacity_;
    std::size_t obs_dim_;
    std::size_t act_dim_;
    std::vector<std::optional<Transition>> slots_;
    std::uint64_t push_count_ = 0;
};

} // namespace cuer
