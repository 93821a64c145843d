#include <gtest/gtest.h>

#include <random>

#include "floorplan/errors.hpp"
#include "floorplan/geometry.hpp"

using namespace floorplan;

namespace {

AlignedBox box(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y1}}; }

Polygon2 square10() { return rectangle_polygon(box(0, 0, 10, 10)); }

// L-shaped room: 10x10 with the top-right 5x5 quadrant removed.
Polygon2 l_shape() { return Polygon2{{{0, 0}, {10, 0}, {10, 5}, {5, 5}, {5, 10}, {0, 10}}}; }

}  // namespace

TEST(BoxDistance, OverlapIsZero) { EXPECT_DOUBLE_EQ(box_distance(box(0, 0, 2, 2), box(1, 1, 3, 3)), 0.0); }

TEST(BoxDistance, TouchingEdgesIsZero) { EXPECT_DOUBLE_EQ(box_distance(box(0, 0, 1, 1), box(1, 0, 2, 1)), 0.0); }

TEST(BoxDistance, CornerGapIsEuclidean) { EXPECT_DOUBLE_EQ(box_distance(box(0, 0, 1, 1), box(4, 5, 6, 7)), 5.0); }

TEST(BoxDistance, SymmetricAndZeroExactlyWhenIntersecting) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    std::uniform_int_distribution<int> lattice(-20, 20);
    for (int n = 0; n < 5000; ++n) {
        // Half the cases on a coarse lattice so exact contact occurs often.
        auto value = [&] { return n % 2 ? coord(rng) : lattice(rng) * 0.5; };
        auto random_box = [&] {
            double x0 = value(), x1 = value(), y0 = value(), y1 = value();
            return box(std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1));
        };
        const AlignedBox a = random_box();
        const AlignedBox b = random_box();
        EXPECT_EQ(box_distance(a, b), box_distance(b, a));
        EXPECT_EQ(box_distance(a, b) == 0.0, boxes_intersect(a, b, 0.0));
    }
}

TEST(BoxFromCenter, Examples) {
    EXPECT_EQ(box_from_center({5, 5}, 2, 4), box(4, 3, 6, 7));
    EXPECT_EQ(box_from_center({0, 0}, 2, 2), box(-1, -1, 1, 1));
    EXPECT_EQ(box_from_center({15, 35}, 6.5, 5), box(11.75, 32.5, 18.25, 37.5));
}

TEST(BoxFromCenter, RejectsNonPositiveDimensions) {
    EXPECT_THROW(box_from_center({0, 0}, 0, 1), PlanError);
    EXPECT_THROW(box_from_center({0, 0}, 1, -2), PlanError);
}

TEST(BoxFromCenter, CenterRoundTripsExactly) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coord(-100.0, 100.0);
    std::uniform_int_distribution<int> half_steps(1, 40);
    for (int n = 0; n < 2000; ++n) {
        const Point2 c{coord(rng), coord(rng)};
        const AlignedBox b = box_from_center(c, half_steps(rng) * 0.25, half_steps(rng) * 0.25);
        const Point2 back = b.center();
        EXPECT_NEAR(back.x, c.x, 1e-12);
        EXPECT_NEAR(back.y, c.y, 1e-12);
    }
}

TEST(BoxInsidePolygon, Examples) {
    EXPECT_TRUE(box_inside_polygon(box(1, 1, 2, 2), square10()));
    EXPECT_FALSE(box_inside_polygon(box(-1, 1, 2, 2), square10()));
    EXPECT_FALSE(box_inside_polygon(box(0, 0, 2, 2), square10()));
}

TEST(BoxInsidePolygon, NonConvexRoomRejectsBoxSpanningTheNotch) {
    // All four corners are inside the L, but the reflex corner pokes into the box.
    EXPECT_FALSE(box_inside_polygon(box(4, 4, 6, 6), Polygon2{{{0, 0}, {10, 0}, {10, 5}, {6, 5}, {6, 6}, {5, 6}, {5, 10}, {0, 10}}}));
    EXPECT_FALSE(box_inside_polygon(box(1, 1, 9, 9), l_shape()));
    EXPECT_TRUE(box_inside_polygon(box(1, 1, 9, 4), l_shape()));
    EXPECT_TRUE(box_inside_polygon(box(1, 1, 4, 9), l_shape()));
}

TEST(PointToSegment, Examples) {
    const Segment2 s{{0, 0}, {10, 0}};
    EXPECT_DOUBLE_EQ(point_to_segment_distance({5, 3}, s), 3.0);
    EXPECT_DOUBLE_EQ(point_to_segment_distance({12, 0}, s), 2.0);
    EXPECT_DOUBLE_EQ(point_to_segment_distance({0, 0}, s), 0.0);
}

TEST(CollinearOverlap, Examples) {
    const Segment2 a{{0, 0}, {10, 0}};
    const auto shared = segments_collinear_overlap(a, {{3, 0}, {6, 0}});
    ASSERT_TRUE(shared);
    EXPECT_EQ(*shared, (Segment2{{3, 0}, {6, 0}}));
    EXPECT_FALSE(segments_collinear_overlap(a, {{3, 1}, {6, 1}}));
    EXPECT_FALSE(segments_collinear_overlap(a, {{10, 0}, {12, 0}}));
}

TEST(CollinearOverlap, ReversedVerticalSegments) {
    const auto shared = segments_collinear_overlap({{5, 40}, {5, 20}}, {{5, 25}, {5, 50}});
    ASSERT_TRUE(shared);
    EXPECT_EQ(*shared, (Segment2{{5, 25}, {5, 40}}));
}

TEST(MakeSegment, RejectsZeroLength) {
    EXPECT_THROW(make_segment({1, 1}, {1, 1}), PlanError);
    EXPECT_NO_THROW(make_segment({0, 0}, {0, 1}));
}

TEST(ValidatePolygon, RejectsBowTieAndClockwise) {
    EXPECT_THROW(validate_polygon(Polygon2{{{0, 0}, {2, 2}, {2, 0}, {0, 2}}}), PlanError);
    EXPECT_THROW(validate_polygon(Polygon2{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}}), PlanError);
    EXPECT_NO_THROW(validate_polygon(l_shape()));
    EXPECT_DOUBLE_EQ(area(l_shape()), 75.0);
}

TEST(BoxInsidePolygon, RandomBoxesNeverThrowAndImplyDistanceIsDefined) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> q(-4, 44);
    const Polygon2 room = l_shape();
    for (int n = 0; n < 3000; ++n) {
        double x0 = q(rng) * 0.25, x1 = q(rng) * 0.25, y0 = q(rng) * 0.25, y1 = q(rng) * 0.25;
        const AlignedBox b = box(std::min(x0, x1), std::min(y0, y1), std::max(x0, x1), std::max(y0, y1));
        const bool inside = box_inside_polygon(b, room);
        if (inside) {
            EXPECT_GE(box_distance(b, box(20, 20, 21, 21)), 0.0);
            // Dense interior sampling agrees: no sample falls outside the L.
            for (int s = 0; s <= 4; ++s) {
                for (int t = 0; t <= 4; ++t) {
                    const Point2 p{b.min_corner.x + b.width() * s / 4.0, b.min_corner.y + b.height() * t / 4.0};
                    EXPECT_FALSE(p.x > 5 && p.y > 5);
                    EXPECT_TRUE(p.x > 0 && p.x < 10 && p.y > 0 && p.y < 10);
                }
            }
        }
    }
}
