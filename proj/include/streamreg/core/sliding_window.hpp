// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef STREAMREG_CORE_SLIDING_WINDOW_HPP
#define STREAMREG_CORE_SLIDING_WINDOW_HPP

#include <cassert>
#include <optional>
#include <vector>

#include "streamreg/core/types.hpp"

namespace streamreg::core {

/// Fixed-capacity ring buffer of observed pairs. New items are pushed at
/// the head; once full, each push evicts the oldest item and returns it.
/// Iteration via at(i) runs oldest (i = 0) to newest (i = count - 1).
class SlidingWindow {
public:
    explicit SlidingWindow(std::size_t capacity)
        : capacity_(capacity), buffer_(capacity) {
        assert(capacity > 0);
    }

    std::size_t capacity() const { return capacity_; }
    std::size_t count() const { return count_; }
    bool full() const { return count_ == capacity_; }
    bool empty() const { return count_ == 0; }

    /// Pushes a pair; returns the evicted oldest pair when already full.
    std::optional<ObservedPair> push(ObservedPair pair) {
        std::optional<ObservedPair> dropped;
        if (count_ == capacity_) {
            dropped = std::move(buffer_[tail_]);
            buffer_[tail_] = std::move(pair);
            tail_ = (tail_ + 1) % capacity_;
        } else {
            buffer_[(tail_ + count_) % capacity_] = std::move(pair);
            ++count_;
        }
        return dropped;
    }

    const ObservedPair& at(std::size_t i) const {
        assert(i < count_);
        return buffer_[(tail_ + i) % capacity_];
    }

    const ObservedPair& oldest() const { return at(0); }
    const ObservedPair& newest() const { return at(count_ - 1); }

    /// Overwrites the stored target at position i (oldest-based index).
    void set_target(std::size_t i, double target) {
        assert(i < count_);
        buffer_[(tail_ + i) % capacity_].target = target;
    }

    /// Index of a stored pair whose features equal x exactly, if any.
    std::optional<std::size_t> find_duplicate(const DataPoint& x) const {
        for (std::size_t i = 0; i < count_; ++i)
            if (at(i).point == x) return i;
        return std::nullopt;
    }

    void clear() {
        count_ = 0;
        tail_ = 0;
    }

private:
    std::size_t capacity_;
    std::vector<ObservedPair> buffer_;
    std::size_t tail_ = 0;   // index of the oldest element
    std::size_t count_ = 0;
};

}  // namespace streamreg::core

#endif  // STREAMREG_CORE_SLIDING_WINDOW_HPP
