// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <deque>

#include "streamreg/core/learner.hpp"
#include "streamreg/core/lifecycle.hpp"
#include "streamreg/core/sliding_window.hpp"
#include "streamreg/util/rng.hpp"

using namespace streamreg;
using core::Event;
using core::ObservedPair;
using core::Phase;
using core::SlidingWindow;

namespace {
ObservedPair pair_of(double x, double y) { return {{x}, y}; }
}  // namespace

TEST_CASE("push into an empty window returns nothing") {
    SlidingWindow w(3);
    CHECK_FALSE(w.push(pair_of(1.0, 1.0)).has_value());
    CHECK(w.count() == 1);
}

TEST_CASE("push into a full window evicts the oldest, FIFO order") {
    SlidingWindow w(3);
    w.push(pair_of(1.0, 10.0));
    w.push(pair_of(2.0, 20.0));
    w.push(pair_of(3.0, 30.0));
    const auto dropped = w.push(pair_of(4.0, 40.0));
    REQUIRE(dropped.has_value());
    CHECK(dropped->point[0] == 1.0);
    CHECK(w.at(0).point[0] == 2.0);
    CHECK(w.at(1).point[0] == 3.0);
    CHECK(w.at(2).point[0] == 4.0);
}

TEST_CASE("property: window contents track a plain-list replay oracle") {
    util::Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t cap = 2 + static_cast<std::size_t>(rng.next_u64() % 31);
        SlidingWindow w(cap);
        std::deque<double> oracle;
        const int pushes = 1000;
        for (int i = 0; i < pushes; ++i) {
            const double v = rng.uniform(-100.0, 100.0);
            const auto dropped = w.push(pair_of(v, v));
            oracle.push_back(v);
            if (oracle.size() > cap) {
                REQUIRE(dropped.has_value());
                CHECK(dropped->point[0] == oracle.front());
                oracle.pop_front();
            } else {
                CHECK_FALSE(dropped.has_value());
            }
        }
        REQUIRE(w.count() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i)
            CHECK(w.at(i).point[0] == oracle[i]);
    }
}

TEST_CASE("1000 pushes into a cap-32 window keep the last 32 in order") {
    SlidingWindow w(32);
    for (int i = 0; i < 1000; ++i) w.push(pair_of(i, i));
    REQUIRE(w.count() == 32);
    for (std::size_t i = 0; i < 32; ++i)
        CHECK(w.at(i).point[0] == doctest::Approx(968.0 + i));
}

TEST_CASE("state machine: the four legal edges") {
    CHECK(core::advance_state(Phase::ColdStart, Event::WindowFull) == Phase::Tune);
    CHECK(core::advance_state(Phase::Tune, Event::TuneDone) == Phase::Stable);
    CHECK(core::advance_state(Phase::Stable, Event::DriftDetected) ==
          Phase::HighError);
    CHECK(core::advance_state(Phase::HighError, Event::WindowRecycled) ==
          Phase::Tune);
}

TEST_CASE("state machine rejects undefined edges") {
    CHECK_THROWS_AS(core::advance_state(Phase::Stable, Event::WindowFull),
                    core::IllegalTransition);
    CHECK_THROWS_AS(core::advance_state(Phase::ColdStart, Event::TuneDone),
                    core::IllegalTransition);
    CHECK_THROWS_AS(core::advance_state(Phase::HighError, Event::DriftDetected),
                    core::IllegalTransition);
}

TEST_CASE("state machine: Tune is visited before Stable, HighError only from Stable") {
    // Exhaustive: for each phase, the only event that does not throw is
    // the canonical one, so any legal path from ColdStart must pass
    // through Tune to reach Stable, and reach HighError from Stable.
    for (Phase phase : {Phase::ColdStart, Phase::Tune, Phase::Stable,
                        Phase::HighError}) {
        int legal = 0;
        for (Event event : {Event::WindowFull, Event::TuneDone,
                            Event::DriftDetected, Event::WindowRecycled}) {
            try {
                const Phase next = core::advance_state(phase, event);
                ++legal;
                if (next == Phase::Stable) CHECK(phase == Phase::Tune);
                if (next == Phase::HighError) CHECK(phase == Phase::Stable);
            } catch (const core::IllegalTransition&) {
            }
        }
        CHECK(legal == 1);
    }
}

TEST_CASE("drift detector fires on a streak of large errors") {
    core::DriftDetector det;
    for (int i = 0; i < 10; ++i) CHECK_FALSE(det.observe(1.0));
    CHECK(det.baseline_rmse() == doctest::Approx(1.0));
    // five consecutive errors at 10x the baseline with ratio 3, streak 5
    CHECK_FALSE(det.observe(10.0));
    CHECK_FALSE(det.observe(10.0));
    CHECK_FALSE(det.observe(10.0));
    CHECK_FALSE(det.observe(10.0));
    CHECK(det.observe(10.0));
}

TEST_CASE("drift detector ignores alternating outliers") {
    core::DriftDetector det;
    for (int i = 0; i < 10; ++i) det.observe(1.0);
    for (int i = 0; i < 50; ++i) {
        CHECK_FALSE(det.observe(10.0));
        CHECK_FALSE(det.observe(0.1));
    }
}

TEST_CASE("drift detector stays quiet below the arming threshold") {
    core::DriftDetector det;
    for (int i = 0; i < 9; ++i) CHECK_FALSE(det.observe(100.0));
    CHECK_FALSE(det.armed());
}

TEST_CASE("learner config validation") {
    core::LearnerConfig config;
    config.kind = core::Algorithm::MleWindowed;
    CHECK_THROWS(config.validate());  // no window size
    config.window_size = 32;
    CHECK_NOTHROW(config.validate());
    config.forgetting_factor = 0.05;
    CHECK_THROWS(config.validate());  // both set

    core::LearnerConfig forgetting;
    forgetting.kind = core::Algorithm::MleForgetting;
    forgetting.forgetting_factor = 0.05;
    CHECK_NOTHROW(forgetting.validate());
    forgetting.forgetting_factor = 1.0;
    CHECK_THROWS(forgetting.validate());
}
