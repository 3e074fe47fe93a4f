#pragma once
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cuer/errors.hpp"
#include "cuer/rng.hpp"

namespace cuer {

/**
 * Fixed-capacity sum tree over per-slot priorities.
 *
 * Complete binary tree stored in a flat array:
 *   - nodes_[1] is the root (total priority mass)
 *   - leaves are at [tree_capacity_, 2 * tree_capacity_)
 *   - node i has children 2i and 2i+1
 *
 * Capacity is padded to the next power of two; padded leaves stay at zero
 * priority and are unreachable by prefix descent. Point updates and
 * proportional lookups touch O(log capacity) nodes.
 */
class SumTree {
public:
    explicit SumTree(std::size_t capacity) : capacity_(capacity) {
        if (capacity == 0) {
            throw std::invalid_argument("SumTree: capacity must be >= 1");
        }
        tree_capacity_ = 1;
        while (tree_capacity_ < capacity) tree_capacity_ <<= 1;
        nodes_.assign(2 * tree_capacity_, 0.0);
    }

    std::size_t capacity() const { return capacity_; }

    /// One past the highest slot ever written. Slots are filled sequentially
    /// by the replay buffer, so this is the number of slots in use.
    std::size_t used() const { return used_; }

    /// Total priority mass (the root).
    double total() const { return nodes_[1]; }

    double get(std::size_t slot) const {
        check_slot(slot);
        return nodes_[tree_capacity_ + slot];
    }

    /// Write a leaf and propagate the delta to the root. O(log capacity).
    void set_priority(std::size_t slot, double priority) {
        check_slot(slot);
        check_priority(priority);
        std::size_t i = tree_capacity_ + slot;
        const double delta = priority - nodes_[i];
        nodes_[i] = priority;
        ++touches_;
        while (i > 1) {
            i >>= 1;
            nodes_[i] += delta;
            ++touches_;
        }
        if (slot + 1 > used_) used_ = slot + 1;
    }

    /// Write a leaf without propagating. O(1). Call rebuild() before any
    /// total() / find_prefix() / sample_batch() use.
    void set_priority_lazy(std::size_t slot, double priority) {
        check_slot(slot);
        check_priority(priority);
        nodes_[tree_capacity_ + slot] = priority;
        if (slot + 1 > used_) used_ = slot + 1;
    }

    /// Recompute every internal node from the leaves. O(capacity). Also
    /// cancels the floating-point drift that incremental delta updates
    /// accumulate over very long runs (~1e7 updates).
    void rebuild() {
        for (std::size_t i = tree_capacity_ - 1; i >= 1; --i) {
            nodes_[i] = nodes_[2 * i] + nodes_[2 * i + 1];
        }
    }

    /**
     * Proportional lookup: returns the slot i with
     * cumsum(p_0..p_{i-1}) <= u < cumsum(p_0..p_i).
     *
     * Descent goes left when u < left-child sum, otherwise subtracts the left
     * sum and goes right; a value of u exactly equal to the left sum descends
     * right, which keeps zero-priority leaves unreachable.
     */
    std::size_t find_prefix(double u) const {
        if (total() <= 0.0) {
            throw EmptyError("SumTree::find_prefix: total priority mass is zero");
        }
        if (!(u >= 0.0) || u >= total()) {
            throw std::invalid_argument("SumTree::find_prefix: u outside [0, total)");
        }
        std::size_t i = 1;
        while (i < tree_capacity_) {
            const std::size_t left = 2 * i;
            const double left_sum = nodes_[left];
            ++touches_;
            if (u < left_sum) {
                i = left;
            } else {
                const double right_sum = nodes_[left + 1];
                ++touches_;
                if (right_sum <= 0.0) {
                    // Incremental drift made this parent exceed its children;
                    // the mass u points past lives on the left.
                    i = left;
                    u = largest_below(left_sum);
                } else {
                    u = std::min(u - left_sum, largest_below(right_sum));
                    i = left + 1;
                }
            }
        }
        ++touches_;
        if (nodes_[i] <= 0.0) {
            return scan_fallback();
        }
        return i - tree_capacity_;
    }

    /// n independent proportional draws with replacement.
    std::vector<std::size_t> sample_batch(std::size_t n, Rng& rng) const {
        if (n == 0) throw std::invalid_argument("SumTree::sample_batch: n must be >= 1");
        if (total() <= 0.0) {
            throw EmptyError("SumTree::sample_batch: total priority mass is zero");
        }
        std::vector<std::size_t> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            out.push_back(find_prefix(draw_in_total(rng)));
        }
        return out;
    }

    /// Stratified variant: one draw from each of n equal segments of [0, total).
    std::vector<std::size_t> sample_batch_stratified(std::size_t n, Rng& rng) const {
        if (n == 0) throw std::invalid_argument("SumTree::sample_batch: n must be >= 1");
        if (total() <= 0.0) {
            throw EmptyError("SumTree::sample_batch: total priority mass is zero");
        }
        const double width = total() / static_cast<double>(n);
        std::vector<std::size_t> out;
        out.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            double u = (static_cast<double>(k) + rng.uniform01()) * width;
            u = std::min(u, largest_below(total()));
            out.push_back(find_prefix(u));
        }
        return out;
    }

    /// Cumulative count of node reads/writes, for complexity instrumentation.
    std::uint64_t node_touches() const { return touches_; }

private:
    void check_slot(std::size_t slot) const {
        if (slot >= capacity_) {
            throw std::invalid_argument("SumTree: slot out of range");
        }
    }

    static void check_priority(double p) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("SumTree: priority must be finite and >= 0");
        }
    }

    static double largest_below(double x) {
        return std::nextafter(x, 0.0);
    }

    double draw_in_total(Rng& rng) const {
        double u = rng.uniform01() * total();
        if (u >= total()) u = largest_below(total());
        return u;
    }

    // Reached only if drift left a positive ancestor above all-zero leaves.
    std::size_t scan_fallback() const {
        for (std::size_t s = 0; s < capacity_; ++s) {
            if (nodes_[tree_capacity_ + s] > 0.0) return s;
        }
        throw EmptyError("SumTree::find_prefix: no positive leaf");
    }

    std::size_t capacity_;
    std::size_t tree_capacity_;
    std::vector<double> nodes_;
    std::size_t used_ = 0;
    mutable std::uint64_t touches_ = 0;
};

} // namespace cuer
