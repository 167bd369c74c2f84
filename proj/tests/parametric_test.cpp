// Copyright (c) 2026 The streamreg Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <array>
#include <cmath>

#include "streamreg/parametric/feature_map.hpp"
#include "streamreg/parametric/learners.hpp"
#include "streamreg/parametric/recursive_ls.hpp"
#include "streamreg/util/rng.hpp"

using namespace streamreg;
using core::ObservedPair;
using core::SlidingWindow;
using numkit::Matrix;
using numkit::Vector;
using namespace streamreg::parametric;

namespace {

Vector identity_project(const core::DataPoint& x) { return x; }

// Batch closed form (X X^T + regularizer)^-1 X y over explicit pairs,
// assembled independently of the recursive path.
Vector batch_solve(const std::vector<std::pair<Vector, double>>& pairs,
                   const Matrix& regularizer) {
    const std::size_t p = pairs.front().first.size();
    Matrix gram = regularizer;
    Vector xy(p, 0.0);
    for (const auto& [x, y] : pairs) {
        gram.add_scaled_outer(x, 1.0);
        numkit::axpy(y, x, xy);
    }
    return numkit::invert_psd(gram).mul(xy);
}

double rel_error(const Vector& got, const Vector& want) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += (got[i] - want[i]) * (got[i] - want[i]);
        den += want[i] * want[i];
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("map_features enumerates the basis in canonical order") {
    SUBCASE("d = 1") {
        const Vector out = map_features({2.0});
        REQUIRE(out.size() == mapped_dim(1));
        CHECK(out[0] == 2.0);
        CHECK(out[1] == 4.0);
        CHECK(out[2] == doctest::Approx(std::log(2.0)));
        CHECK(out[3] == doctest::Approx(std::sqrt(2.0)));
    }
    SUBCASE("d = 2, all ones") {
        const Vector out = map_features({1.0, 1.0});
        REQUIRE(out.size() == 9);
        for (int i = 0; i < 5; ++i) CHECK(out[i] == 1.0);
        CHECK(out[5] == 0.0);
        CHECK(out[6] == 0.0);
        CHECK(out[7] == 1.0);
        CHECK(out[8] == 1.0);
    }
    SUBCASE("d = 2, distinct values") {
        const Vector out = map_features({2.0, 3.0});
        const Vector want{2.0,
                          3.0,
                          4.0,
                          6.0,
                          9.0,
                          std::log(2.0),
                          std::log(3.0),
                          std::sqrt(2.0),
                          std::sqrt(3.0)};
        REQUIRE(out.size() == want.size());
        for (std::size_t i = 0; i < want.size(); ++i)
            CHECK(out[i] == doctest::Approx(want[i]));
    }
}

TEST_CASE("mapped_dim matches the basis cardinality") {
    CHECK(mapped_dim(1) == 4);
    CHECK(mapped_dim(2) == 9);
    CHECK(mapped_dim(4) == 22);
}

TEST_CASE("map_features rejects non-positive inputs") {
    CHECK_THROWS_AS(map_features({0.0}), NonPositiveFeature);
    CHECK_THROWS_AS(map_features({1.0, -2.0}), NonPositiveFeature);
}

TEST_CASE("forgetting update recovers exact linear data") {
    ParamState state = ParamState::with_gain(1, kRlsInitGain);
    for (int i = 0; i < 20; ++i) {
        forgetting_update(state, {1.0}, 2.0, 0.0);
        forgetting_update(state, {2.0}, 4.0, 0.0);
    }
    CHECK(state.w[0] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("forgetting update with alpha 0 matches batch normal equations") {
    util::Rng rng(31);
    ParamState state = ParamState::with_gain(3, kRlsInitGain);
    const Vector coeffs{1.5, -2.0, 0.75};
    std::vector<std::pair<Vector, double>> seen;
    for (int i = 0; i < 50; ++i) {
        Vector x(3);
        for (double& v : x) v = rng.uniform(0.5, 2.0);
        const double y = numkit::dot(coeffs, x) + 0.1 * rng.normal();
        forgetting_update(state, x, y, 0.0);
        seen.push_back({x, y});
    }
    // The recursion carries a (1 / gain) * I ridge; against the plain
    // normal equations that bias stays below the 1e-4 tolerance.
    const Matrix no_reg(3, 3);
    CHECK(rel_error(state.w, batch_solve(seen, no_reg)) < 1e-4);
}

TEST_CASE("forgetting factor adapts to a coefficient switch") {
    util::Rng rng(37);
    const Vector b_old{5.0, 1.0};
    const Vector b_new{1.0, 4.0};
    ParamState state = ParamState::with_gain(2, kRlsInitGain);
    Vector w_at_210;
    for (int i = 0; i < 400; ++i) {
        Vector x(2);
        for (double& v : x) v = rng.uniform(0.0, 10.0);
        const Vector& b = i < 200 ? b_old : b_new;
        forgetting_update(state, x, numkit::dot(b, x), 0.1);
        if (i == 209) w_at_210 = state.w;
    }
    const auto dist = [&](const Vector& w) {
        Vector diff(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) diff[i] = w[i] - b_new[i];
        return std::sqrt(numkit::dot(diff, diff));
    };
    CHECK(dist(state.w) < dist(w_at_210));
    CHECK(dist(state.w) < 0.05);
}

TEST_CASE("windowed replace stays on the batch closed form") {
    util::Rng rng(41);
    const std::size_t w_cap = 32;
    SlidingWindow window(w_cap);
    Matrix regularizer = Matrix::identity(3);
    regularizer.scale(1.0 / kRlsInitGain);
    ParamState state = ParamState::with_gain(3, kRlsInitGain);

    const auto random_pair = [&] {
        Vector x(3);
        for (double& v : x) v = rng.uniform(0.1, 5.0);
        return ObservedPair{x, rng.uniform(-10.0, 10.0)};
    };
    for (std::size_t i = 0; i < w_cap; ++i) {
        const ObservedPair pair = random_pair();
        window.push(pair);
        windowed_absorb(state, pair.point, pair.target);
    }
    for (int step = 0; step < 100; ++step) {
        const ObservedPair incoming = random_pair();
        const auto dropped = window.push(incoming);
        windowed_remove(state, dropped->point, dropped->target);
        windowed_absorb(state, incoming.point, incoming.target);

        std::vector<std::pair<Vector, double>> contents;
        for (std::size_t i = 0; i < window.count(); ++i)
            contents.push_back({window.at(i).point, window.at(i).target});
        CHECK(rel_error(state.w, batch_solve(contents, regularizer)) < 1e-8);
    }
}

TEST_CASE("replacing a pair with itself leaves the state unchanged") {
    ParamState state = ParamState::with_gain(2, kRlsInitGain);
    const Vector x{1.0, 2.0};
    windowed_absorb(state, x, 3.0);
    windowed_absorb(state, {2.0, 1.0}, 1.0);
    const Vector w_before = state.w;
    windowed_remove(state, x, 3.0);
    windowed_absorb(state, x, 3.0);
    for (std::size_t i = 0; i < 2; ++i)
        CHECK(state.w[i] == doctest::Approx(w_before[i]).epsilon(1e-10));
}

TEST_CASE("windowed learner overwrites the target of a duplicated point") {
    core::LearnerConfig config;
    config.kind = core::Algorithm::MleWindowed;
    config.window_size = 8;
    WindowedLinearLearner learner(Estimator::Mle, config);

    const core::DataPoint repeated{2.0, 3.0};
    for (int i = 0; i < 4; ++i) {
        const ObservedPair pair{{1.0 + i, 2.0 + 0.5 * i},
                                static_cast<double>(i)};
        learner.learn(pair, learner.predict(pair.point));
    }
    learner.learn({repeated, 5.0}, learner.predict(repeated));
    CHECK(learner.window().count() == 5);
    learner.learn({repeated, 9.0}, learner.predict(repeated));
    // no growth, stored target refreshed
    CHECK(learner.window().count() == 5);
    CHECK(learner.window().at(4).target == 9.0);
    // parameters still equal the batch solve on the (updated) window
    std::vector<std::pair<Vector, double>> contents;
    for (std::size_t i = 0; i < learner.window().count(); ++i)
        contents.push_back(
            {learner.window().at(i).point, learner.window().at(i).target});
    CHECK(rel_error(learner.state().w,
                    batch_solve(contents, learner.regularizer())) < 1e-8);
}

TEST_CASE("residual_s2 basics and oracle") {
    SlidingWindow window(8);
    SUBCASE("perfect fit gives zero") {
        window.push({{1.0}, 2.0});
        window.push({{2.0}, 4.0});
        window.push({{3.0}, 6.0});
        CHECK(residual_s2(window, {2.0}, 1, identity_project) ==
              doctest::Approx(0.0));
    }
    SUBCASE("hand-computed residuals") {
        // w = 0 so residuals are the targets: 1, -1, 2 with n=3, p=1
        window.push({{1.0}, 1.0});
        window.push({{1.0}, -1.0});
        window.push({{1.0}, 2.0});
        CHECK(residual_s2(window, {0.0}, 1, identity_project) ==
              doctest::Approx(3.0));
    }
    SUBCASE("matches an independent recomputation") {
        util::Rng rng(47);
        const Vector w{1.0, -0.5};
        double sum = 0.0;
        for (int i = 0; i < 8; ++i) {
            const Vector x{rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
            const double y = rng.uniform(-1.0, 1.0);
            const double r = y - numkit::dot(w, x);
            sum += r * r;
            window.push({x, y});
        }
        CHECK(residual_s2(window, w, 2, identity_project) ==
              doctest::Approx(sum / 6.0));
    }
    SUBCASE("insufficient data throws") {
        window.push({{1.0}, 1.0});
        CHECK_THROWS_AS(residual_s2(window, {0.0}, 1, identity_project),
                        InsufficientData);
    }
}

TEST_CASE("asymptotic bounds") {
    ParamState state;
    state.p = 1;
    state.m1 = Matrix(1, 1);   // zero leverage
    state.w = {1.0};
    SUBCASE("zero s2 collapses the interval") {
        state.s2 = 0.0;
        const auto triple = asymptotic_bounds({2.0}, state, 1.96);
        CHECK(triple.lower == triple.point);
        CHECK(triple.upper == triple.point);
    }
    SUBCASE("unit s2 with zero leverage gives the z half-width") {
        state.s2 = 1.0;
        const auto triple = asymptotic_bounds({2.0}, state, 1.96);
        CHECK(triple.upper - triple.point == doctest::Approx(1.96));
        CHECK(triple.point - triple.lower == doctest::Approx(1.96));
    }
    SUBCASE("width is monotone in s2") {
        state.s2 = 1.0;
        const double w1 = asymptotic_bounds({2.0}, state, 1.96).width();
        state.s2 = 4.0;
        const double w2 = asymptotic_bounds({2.0}, state, 1.96).width();
        CHECK(w2 > w1);
    }
}

TEST_CASE("ensemble bound learners") {
    const std::size_t p = 2;
    EnsembleState ens;
    ens.base = ParamState::with_gain(p, kRlsInitGain);
    ens.upper = ens.base;
    ens.lower = ens.base;

    SUBCASE("identical learners collapse the triple") {
        ens.burn_in_remaining = 10;
        util::Rng rng(51);
        for (int i = 0; i < 5; ++i) {
            const Vector x{rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
            const double y = x[0] + 2.0 * x[1];
            ensemble_update(ens, x, y, ensemble_predict(ens, x), 0.0);
        }
        const auto triple = ensemble_predict(ens, {1.0, 1.0});
        CHECK(triple.lower == doctest::Approx(triple.point));
        CHECK(triple.upper == doctest::Approx(triple.point));
    }

    SUBCASE("update filters follow the bound rules") {
        ens.burn_in_remaining = 0;
        for (int i = 0; i < 3; ++i) {
            const Vector x{1.0, 1.0};
            forgetting_update(ens.base, x, 1.0, 0.0);
            forgetting_update(ens.upper, x, 1.0, 0.0);
            forgetting_update(ens.lower, x, 1.0, 0.0);
        }
        const auto counts = [&] {
            return std::array<std::size_t, 3>{ens.base.n_seen, ens.upper.n_seen,
                                              ens.lower.n_seen};
        };
        const auto before = counts();
        // target above the upper bound: base and upper learn; the lower
        // learner skips it (target < upper fails)
        const core::PredictionTriple last{0.5, 1.0, 1.5};
        ensemble_update(ens, {1.0, 1.0}, 99.0, last, 0.0);
        const auto after = counts();
        CHECK(after[0] == before[0] + 1);
        CHECK(after[1] == before[1] + 1);
        CHECK(after[2] == before[2]);
        // target strictly between bounds: all three learn
        ensemble_update(ens, {1.0, 1.0}, 1.0, last, 0.0);
        const auto final_counts = counts();
        CHECK(final_counts[0] == after[0] + 1);
        CHECK(final_counts[1] == after[1] + 1);
        CHECK(final_counts[2] == after[2] + 1);
    }

    SUBCASE("upper learner sits above the base on noisy data") {
        ens.burn_in_remaining = 30;
        util::Rng rng(53);
        const Vector coeffs{2.0, 1.0};
        std::size_t upper_above = 0;
        std::size_t checks = 0;
        for (int i = 0; i < 700; ++i) {
            const Vector x{rng.uniform(0.5, 3.0), rng.uniform(0.5, 3.0)};
            const double y = numkit::dot(coeffs, x) + rng.normal();
            const auto last = ensemble_predict(ens, x);
            ensemble_update(ens, x, y, last, 0.05);
            if (i >= 200) {
                if (ens.upper.predict(x) >= ens.base.predict(x)) ++upper_above;
                ++checks;
            }
        }
        CHECK(static_cast<double>(upper_above) / static_cast<double>(checks) >
              0.65);
    }

    SUBCASE("clamping repairs inverted raw bounds") {
        const auto triple = core::PredictionTriple::clamped(2.0, 1.0, 0.5);
        CHECK(triple.lower <= triple.point);
        CHECK(triple.point <= triple.upper);
        CHECK(triple.upper == 1.0);
    }
}

TEST_CASE("prior initialization") {
    SUBCASE("identity prior gives identity m1") {
        const ParamState state = ParamState::from_regularizer(
            MapPrior::identity(2).sigma_w_inv_scaled);
        CHECK(numkit::max_abs_diff(state.m1, Matrix::identity(2)) < 1e-12);
    }
    SUBCASE("diagonal prior arithmetic") {
        // Sigma_w = diag(4, 1), sigma_y = 2 -> regularizer diag(1, 4)
        Matrix reg(2, 2);
        reg(0, 0) = 1.0;
        reg(1, 1) = 4.0;
        const ParamState state = ParamState::from_regularizer(reg);
        CHECK(state.m1(0, 0) == doctest::Approx(1.0));
        CHECK(state.m1(1, 1) == doctest::Approx(0.25));
    }
    SUBCASE("degenerate prior falls back to identity") {
        const ParamState state = ParamState::from_regularizer(Matrix(2, 2));
        CHECK(numkit::max_abs_diff(state.m1, Matrix::identity(2)) < 1e-12);
    }
}

TEST_CASE("MAP shrinks parameters relative to MLE on the same window") {
    util::Rng rng(59);
    SlidingWindow window(64);
    for (int i = 0; i < 64; ++i) {
        const Vector x{rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0)};
        window.push({x, 3.0 * x[0] - 1.0 * x[1] + rng.normal()});
    }
    std::vector<std::pair<Vector, double>> contents;
    for (std::size_t i = 0; i < window.count(); ++i)
        contents.push_back({window.at(i).point, window.at(i).target});

    Matrix mle_reg = Matrix::identity(2);
    mle_reg.scale(1.0 / kRlsInitGain);
    const Vector w_mle = batch_solve(contents, mle_reg);
    const Vector w_map = batch_solve(contents, Matrix::identity(2));
    CHECK(std::sqrt(numkit::dot(w_map, w_map)) <=
          std::sqrt(numkit::dot(w_mle, w_mle)) + 1e-12);
}

TEST_CASE("prior tuning") {
    SUBCASE("noise-free linear window picks the smallest sigma") {
        util::Rng rng(61);
        SlidingWindow window(32);
        for (int i = 0; i < 32; ++i) {
            const Vector x{rng.uniform(0.5, 5.0), rng.uniform(0.5, 5.0)};
            window.push({x, 2.0 * x[0] + 1.0 * x[1]});
        }
        const MapPrior prior = tune_map_prior(window, identity_project, {});
        CHECK(prior.sigma_y == doctest::Approx(0.1));
    }
    SUBCASE("single-value grid returns that value") {
        util::Rng rng(67);
        SlidingWindow window(16);
        for (int i = 0; i < 16; ++i) {
            const Vector x{rng.uniform(0.5, 5.0)};
            window.push({x, x[0] + rng.normal()});
        }
        const MapPrior prior =
            tune_map_prior(window, identity_project, {2.0, 2.0, 1.0});
        CHECK(prior.sigma_y == doctest::Approx(2.0));
    }
    SUBCASE("tuned refit equals the direct posterior formula") {
        util::Rng rng(71);
        SlidingWindow window(24);
        for (int i = 0; i < 24; ++i) {
            const Vector x{rng.uniform(0.5, 5.0), rng.uniform(0.5, 5.0)};
            window.push({x, x[0] - 0.5 * x[1] + 0.3 * rng.normal()});
        }
        const MapPrior prior = tune_map_prior(window, identity_project, {});
        ParamState state;
        state.p = 2;
        windowed_recompute(state, prior.sigma_w_inv_scaled, window.count(),
                           [&](std::size_t i) {
                               return std::make_pair(window.at(i).point,
                                                     window.at(i).target);
                           });
        std::vector<std::pair<Vector, double>> contents;
        for (std::size_t i = 0; i < window.count(); ++i)
            contents.push_back({window.at(i).point, window.at(i).target});
        CHECK(rel_error(state.w,
                        batch_solve(contents, prior.sigma_w_inv_scaled)) < 1e-8);
    }
}
