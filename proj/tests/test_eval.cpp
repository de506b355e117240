#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "nbekcf/eval.hpp"
#include "test_support.hpp"

using nbekcf::BoundingBox;
using nbekcf::TrackingMetrics;
using nbekcf::center_error;
using nbekcf::overlap_ratio;
using nbekcf::summarize;

TEST_CASE("center_error is the Euclidean distance between centers") {
    BoundingBox a{0.0, 0.0, 10.0, 10.0};
    BoundingBox b{3.0, 4.0, 10.0, 10.0};
    CHECK(center_error(a, b) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(center_error(a, a) == 0.0);
    // Centers can coincide for different box sizes.
    BoundingBox c{2.5, 2.5, 5.0, 5.0};
    CHECK(center_error(a, c) == 0.0);
}

TEST_CASE("overlap_ratio hand cases") {
    BoundingBox base{0.0, 0.0, 2.0, 2.0};
    CHECK(overlap_ratio(base, base) == 1.0);

    BoundingBox half{1.0, 0.0, 2.0, 2.0};
    CHECK(overlap_ratio(base, half) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    BoundingBox touching{2.0, 0.0, 2.0, 2.0};
    CHECK(overlap_ratio(base, touching) == 0.0);

    BoundingBox disjoint{5.0, 5.0, 2.0, 2.0};
    CHECK(overlap_ratio(base, disjoint) == 0.0);

    BoundingBox outer{0.0, 0.0, 4.0, 4.0};
    BoundingBox inner{1.0, 1.0, 2.0, 2.0};
    CHECK(overlap_ratio(outer, inner) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(overlap_ratio(inner, outer) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("box validation rejects degenerate and non-finite boxes") {
    BoundingBox good{0.0, 0.0, 2.0, 2.0};
    BoundingBox flat{0.0, 0.0, 0.0, 2.0};
    BoundingBox negative{0.0, 0.0, 2.0, -1.0};
    BoundingBox nan_box{std::numeric_limits<double>::quiet_NaN(), 0.0, 2.0, 2.0};
    CHECK_THROWS_AS(center_error(good, flat), std::invalid_argument);
    CHECK_THROWS_AS(overlap_ratio(negative, good), std::invalid_argument);
    CHECK_THROWS_AS(overlap_ratio(good, nan_box), std::invalid_argument);
}

TEST_CASE("perfect tracking metrics") {
    std::vector<BoundingBox> boxes(5, BoundingBox{10.0, 20.0, 30.0, 40.0});
    TrackingMetrics m = summarize(boxes, boxes);
    CHECK(m.mean_center_error == 0.0);
    CHECK(m.distance_precision == 1.0);
    CHECK(m.mean_overlap == 1.0);
    CHECK(m.overlap_precision == 1.0);
    // Success at threshold 1.0 requires overlap strictly above 1, so the
    // last of the 21 curve samples is 0 and the mean lands at 20/21.
    CHECK(m.success_curve[20] == 0.0);
    CHECK(m.auc == doctest::Approx(20.0 / 21.0).epsilon(1e-14));
    for (int k = 0; k <= 50; ++k) {
        CHECK(m.precision_curve[k] == 1.0);
    }
    for (int k = 0; k < 20; ++k) {
        CHECK(m.success_curve[k] == 1.0);
    }
}

TEST_CASE("three-frame hand-computed metrics") {
    // Frame errors 0, 5, 25; overlaps 1, 1/3, 0.
    std::vector<BoundingBox> gt(3, BoundingBox{0.0, 0.0, 10.0, 10.0});
    std::vector<BoundingBox> pred = {
        {0.0, 0.0, 10.0, 10.0},
        {5.0, 0.0, 10.0, 10.0},
        {25.0, 0.0, 10.0, 10.0},
    };
    TrackingMetrics m = summarize(pred, gt);
    CHECK(m.mean_center_error == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(m.mean_overlap == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK(m.distance_precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(m.overlap_precision == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    // Precision curve: error 0 counts everywhere, error 5 from threshold 5,
    // error 25 from threshold 25.
    for (int k = 0; k <= 4; ++k) {
        CHECK(m.precision_curve[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    for (int k = 5; k <= 24; ++k) {
        CHECK(m.precision_curve[k] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
    for (int k = 25; k <= 50; ++k) {
        CHECK(m.precision_curve[k] == 1.0);
    }

    // Success curve: overlap 1/3 survives thresholds up to 0.30 (7 samples),
    // overlap 1 survives everything below 1.0, nothing survives 1.0.
    for (int k = 0; k <= 6; ++k) {
        CHECK(m.success_curve[k] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    }
    for (int k = 7; k <= 19; ++k) {
        CHECK(m.success_curve[k] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    CHECK(m.success_curve[20] == 0.0);
    CHECK(m.auc == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("fully disjoint predictions zero the overlap metrics") {
    std::vector<BoundingBox> gt(4, BoundingBox{0.0, 0.0, 5.0, 5.0});
    std::vector<BoundingBox> pred(4, BoundingBox{100.0, 100.0, 5.0, 5.0});
    TrackingMetrics m = summarize(pred, gt);
    CHECK(m.mean_overlap == 0.0);
    CHECK(m.overlap_precision == 0.0);
    CHECK(m.auc == 0.0);
    CHECK(m.mean_center_error == doctest::Approx(100.0 * std::sqrt(2.0)).epsilon(1e-15));
    CHECK(m.distance_precision == 0.0);
}

TEST_CASE("curves are monotone in the expected direction") {
    std::vector<BoundingBox> gt;
    std::vector<BoundingBox> pred;
    for (int t = 0; t < 9; ++t) {
        gt.push_back({0.0, 0.0, 12.0, 12.0});
        pred.push_back({1.5 * t, 0.75 * t, 12.0, 12.0});
    }
    TrackingMetrics m = summarize(pred, gt);
    for (int k = 1; k <= 50; ++k) {
        CHECK(m.precision_curve[k] >= m.precision_curve[k - 1]);
    }
    for (int k = 1; k <= 20; ++k) {
        CHECK(m.success_curve[k] <= m.success_curve[k - 1]);
    }
    CHECK(m.distance_precision == m.precision_curve[20]);
    // Overlap precision reads the success curve at threshold 0.5 exactly.
    CHECK(m.overlap_precision == m.success_curve[10]);
}

TEST_CASE("summarize is deterministic") {
    std::vector<BoundingBox> gt = {{0.0, 0.0, 7.0, 9.0}, {3.0, 1.0, 7.0, 9.0}};
    std::vector<BoundingBox> pred = {{0.5, 0.25, 7.0, 9.0}, {3.5, 1.5, 7.0, 9.0}};
    TrackingMetrics a = summarize(pred, gt);
    TrackingMetrics b = summarize(pred, gt);
    CHECK(a.mean_center_error == b.mean_center_error);
    CHECK(a.precision_curve == b.precision_curve);
    CHECK(a.success_curve == b.success_curve);
    CHECK(a.auc == b.auc);
}

TEST_CASE("summarize input validation") {
    std::vector<BoundingBox> one = {{0.0, 0.0, 2.0, 2.0}};
    std::vector<BoundingBox> two = {{0.0, 0.0, 2.0, 2.0}, {1.0, 1.0, 2.0, 2.0}};
    CHECK_THROWS_AS(summarize({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(summarize(one, two), std::invalid_argument);

    std::vector<BoundingBox> bad = {{0.0, 0.0, 0.0, 2.0}};
    CHECK_THROWS_AS(summarize(one, bad), std::invalid_argument);
}
