#pragma once

#include <optional>
#include <vector>

namespace floorplan {

// Absolute tolerance for every length comparison, in feet.
inline constexpr double kEpsilon = 1e-6;

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double norm(Point2 v);
bool nearly_equal(Point2 a, Point2 b, double tol = kEpsilon);
bool is_finite(Point2 p);

struct Segment2 {
    Point2 start;
    Point2 end;

    bool is_horizontal() const;
    bool is_vertical() const;
    bool is_axis_aligned() const { return is_horizontal() || is_vertical(); }
    double length() const;
    Point2 midpoint() const { return {(start.x + end.x) / 2.0, (start.y + end.y) / 2.0}; }

    friend bool operator==(const Segment2&, const Segment2&) = default;
};

// Throws PlanError(GeometryError) for zero-length or non-finite segments.
Segment2 make_segment(Point2 start, Point2 end);

struct AlignedBox {
    Point2 min_corner;
    Point2 max_corner;

    double width() const { return max_corner.x - min_corner.x; }
    double height() const { return max_corner.y - min_corner.y; }
    double area() const { return width() * height(); }
    Point2 center() const {
        return {(min_corner.x + max_corner.x) / 2.0, (min_corner.y + max_corner.y) / 2.0};
    }
    AlignedBox inflated(double margin) const {
        return {{min_corner.x - margin, min_corner.y - margin},
                {max_corner.x + margin, max_corner.y + margin}};
    }

    friend bool operator==(const AlignedBox&, const AlignedBox&) = default;
};

bool is_valid(const AlignedBox& box);
AlignedBox box_of_segment(const Segment2& segment, double half_thickness = 0.0);

// Throws PlanError(GeometryError) unless width > 0 and depth > 0.
AlignedBox box_from_center(Point2 center, double width, double depth);

// Euclidean gap between the closest points of two boxes; 0 on overlap or contact.
double box_distance(const AlignedBox& a, const AlignedBox& b);

// Closed-set intersection test, independent of box_distance.
bool boxes_intersect(const AlignedBox& a, const AlignedBox& b, double tol = kEpsilon);

// True when the closed `obstacle` meets the open interior of `region`.
bool box_meets_interior(const AlignedBox& obstacle, const AlignedBox& region, double tol = kEpsilon);

struct Polygon2 {
    std::vector<Point2> vertices;  // counterclockwise, implicitly closed

    friend bool operator==(const Polygon2&, const Polygon2&) = default;
};

double signed_area(const Polygon2& polygon);
double area(const Polygon2& polygon);
AlignedBox bounds(const Polygon2& polygon);
Polygon2 rectangle_polygon(const AlignedBox& box);

// Throws PlanError(GeometryError) when the polygon has fewer than three
// vertices, non-positive area, or intersecting non-adjacent edges.
void validate_polygon(const Polygon2& polygon);

std::vector<Segment2> edges(const Polygon2& polygon);

bool point_on_boundary(Point2 p, const Polygon2& polygon, double tol = kEpsilon);
bool point_strictly_inside(Point2 p, const Polygon2& polygon, double tol = kEpsilon);

// Every corner strictly inside and no polygon edge reaching into the box interior.
bool box_inside_polygon(const AlignedBox& box, const Polygon2& polygon, double tol = kEpsilon);

bool segment_meets_open_box(const Segment2& segment, const AlignedBox& box, double tol = kEpsilon);
bool segment_meets_closed_box(const Segment2& segment, const AlignedBox& box, double tol = kEpsilon);

Point2 closest_point_on_segment(Point2 p, const Segment2& segment);
double point_to_segment_distance(Point2 p, const Segment2& segment);
double point_to_box_distance(Point2 p, const AlignedBox& box);

// Shared sub-segment of two segments lying on one axis-aligned line, ordered
// from the lower to the higher coordinate. Absent for zero-length contact.
std::optional<Segment2> segments_collinear_overlap(const Segment2& a, const Segment2& b,
                                                   double tol = kEpsilon);

}  // namespace floorplan
