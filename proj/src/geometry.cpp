#include "floorplan/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "floorplan/errors.hpp"

namespace floorplan {

double norm(Point2 v) { return std::hypot(v.x, v.y); }

bool nearly_equal(Point2 a, Point2 b, double tol) {
    return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol;
}

bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

bool Segment2::is_horizontal() const { return std::abs(start.y - end.y) <= kEpsilon; }
bool Segment2::is_vertical() const { return std::abs(start.x - end.x) <= kEpsilon; }
double Segment2::length() const { return norm(end - start); }

Segment2 make_segment(Point2 start, Point2 end) {
    if (!is_finite(start) || !is_finite(end)) {
        throw PlanError(ErrorCode::GeometryError, "segment has non-finite coordinates");
    }
    Segment2 s{start, end};
    if (s.length() <= kEpsilon) {
        throw PlanError(ErrorCode::GeometryError, "zero-length segment");
    }
    return s;
}

bool is_valid(const AlignedBox& box) {
    return is_finite(box.min_corner) && is_finite(box.max_corner) &&
           box.min_corner.x <= box.max_corner.x && box.min_corner.y <= box.max_corner.y;
}

AlignedBox box_of_segment(const Segment2& segment, double half_thickness) {
    AlignedBox box{{std::min(segment.start.x, segment.end.x), std::min(segment.start.y, segment.end.y)},
                   {std::max(segment.start.x, segment.end.x), std::max(segment.start.y, segment.end.y)}};
    return half_thickness > 0.0 ? box.inflated(half_thickness) : box;
}

AlignedBox box_from_center(Point2 center, double width, double depth) {
    if (!(width > 0.0) || !(depth > 0.0)) {
        throw PlanError(ErrorCode::GeometryError, "footprint dimensions must be positive");
    }
    const double hw = width / 2.0;
    const double hd = depth / 2.0;
    return {{center.x - hw, center.y - hd}, {center.x + hw, center.y + hd}};
}

double box_distance(const AlignedBox& a, const AlignedBox& b) {
    const double dx = std::max({0.0, b.min_corner.x - a.max_corner.x, a.min_corner.x - b.max_corner.x});
    const double dy = std::max({0.0, b.min_corner.y - a.max_corner.y, a.min_corner.y - b.max_corner.y});
    return std::hypot(dx, dy);
}

bool boxes_intersect(const AlignedBox& a, const AlignedBox& b, double tol) {
    return a.min_corner.x <= b.max_corner.x + tol && b.min_corner.x <= a.max_corner.x + tol &&
           a.min_corner.y <= b.max_corner.y + tol && b.min_corner.y <= a.max_corner.y + tol;
}

bool box_meets_interior(const AlignedBox& obstacle, const AlignedBox& region, double tol) {
    return obstacle.min_corner.x < region.max_corner.x - tol &&
           obstacle.max_corner.x > region.min_corner.x + tol &&
           obstacle.min_corner.y < region.max_corner.y - tol &&
           obstacle.max_corner.y > region.min_corner.y + tol;
}

double signed_area(const Polygon2& polygon) {
    const auto& v = polygon.vertices;
    double twice = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point2& p = v[i];
        const Point2& q = v[(i + 1) % v.size()];
        twice += p.x * q.y - q.x * p.y;
    }
    return twice / 2.0;
}

double area(const Polygon2& polygon) { return std::abs(signed_area(polygon)); }

AlignedBox bounds(const Polygon2& polygon) {
    AlignedBox box{polygon.vertices.front(), polygon.vertices.front()};
    for (const Point2& p : polygon.vertices) {
        box.min_corner.x = std::min(box.min_corner.x, p.x);
        box.min_corner.y = std::min(box.min_corner.y, p.y);
        box.max_corner.x = std::max(box.max_corner.x, p.x);
        box.max_corner.y = std::max(box.max_corner.y, p.y);
    }
    return box;
}

Polygon2 rectangle_polygon(const AlignedBox& box) {
    return Polygon2{{box.min_corner,
                     {box.max_corner.x, box.min_corner.y},
                     box.max_corner,
                     {box.min_corner.x, box.max_corner.y}}};
}

std::vector<Segment2> edges(const Polygon2& polygon) {
    std::vector<Segment2> out;
    const auto& v = polygon.vertices;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back({v[i], v[(i + 1) % v.size()]});
    }
    return out;
}

namespace {

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment_closed(Point2 p, const Segment2& s, double tol) {
    return point_to_segment_distance(p, s) <= tol;
}

bool segments_intersect(const Segment2& a, const Segment2& b, double tol) {
    const double d1 = cross(b.start, b.end, a.start);
    const double d2 = cross(b.start, b.end, a.end);
    const double d3 = cross(a.start, a.end, b.start);
    const double d4 = cross(a.start, a.end, b.end);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    return on_segment_closed(a.start, b, tol) || on_segment_closed(a.end, b, tol) ||
           on_segment_closed(b.start, a, tol) || on_segment_closed(b.end, a, tol);
}

// Liang-Barsky clip of the segment's parameter range against [lo, hi] on one
// axis. Returns false when the range becomes empty.
bool clip_axis(double origin, double delta, double lo, double hi, bool strict, double& t0, double& t1) {
    if (std::abs(delta) < 1e-15) {
        return strict ? (origin > lo && origin < hi) : (origin >= lo && origin <= hi);
    }
    double ta = (lo - origin) / delta;
    double tb = (hi - origin) / delta;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return strict ? t0 < t1 : t0 <= t1;
}

bool segment_meets_box(const Segment2& segment, const AlignedBox& box, bool strict) {
    if (box.min_corner.x > box.max_corner.x || box.min_corner.y > box.max_corner.y) return false;
    double t0 = 0.0;
    double t1 = 1.0;
    const Point2 d = segment.end - segment.start;
    return clip_axis(segment.start.x, d.x, box.min_corner.x, box.max_corner.x, strict, t0, t1) &&
           clip_axis(segment.start.y, d.y, box.min_corner.y, box.max_corner.y, strict, t0, t1);
}

}  // namespace

void validate_polygon(const Polygon2& polygon) {
    const auto& v = polygon.vertices;
    if (v.size() < 3) {
        throw PlanError(ErrorCode::GeometryError, "polygon needs at least three vertices");
    }
    for (const Point2& p : v) {
        if (!is_finite(p)) throw PlanError(ErrorCode::GeometryError, "polygon has non-finite vertex");
    }
    if (signed_area(polygon) <= kEpsilon) {
        throw PlanError(ErrorCode::GeometryError, "polygon must have positive counterclockwise area");
    }
    const auto es = edges(polygon);
    const std::size_t n = es.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(es[i], es[j], kEpsilon)) {
                throw PlanError(ErrorCode::GeometryError, "polygon is not simple");
            }
        }
    }
}

bool point_on_boundary(Point2 p, const Polygon2& polygon, double tol) {
    for (const Segment2& e : edges(polygon)) {
        if (point_to_segment_distance(p, e) <= tol) return true;
    }
    return false;
}

bool point_strictly_inside(Point2 p, const Polygon2& polygon, double tol) {
    if (point_on_boundary(p, polygon, tol)) return false;
    bool inside = false;
    const auto& v = polygon.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        const bool crosses = (v[i].y > p.y) != (v[j].y > p.y);
        if (crosses) {
            const double x_at = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
            if (p.x < x_at) inside = !inside;
        }
    }
    return inside;
}

bool box_inside_polygon(const AlignedBox& box, const Polygon2& polygon, double tol) {
    const Point2 corners[] = {box.min_corner,
                              {box.max_corner.x, box.min_corner.y},
                              box.max_corner,
                              {box.min_corner.x, box.max_corner.y}};
    for (const Point2& c : corners) {
        if (!point_strictly_inside(c, polygon, tol)) return false;
    }
    for (const Segment2& e : edges(polygon)) {
        if (segment_meets_open_box(e, box, tol)) return false;
    }
    return true;
}

bool segment_meets_open_box(const Segment2& segment, const AlignedBox& box, double tol) {
    AlignedBox shrunk{{box.min_corner.x + tol, box.min_corner.y + tol},
                      {box.max_corner.x - tol, box.max_corner.y - tol}};
    return segment_meets_box(segment, shrunk, true);
}

bool segment_meets_closed_box(const Segment2& segment, const AlignedBox& box, double tol) {
    return segment_meets_box(segment, box.inflated(tol), false);
}

Point2 closest_point_on_segment(Point2 p, const Segment2& segment) {
    const Point2 d = segment.end - segment.start;
    const double len2 = d.x * d.x + d.y * d.y;
    if (len2 <= 0.0) return segment.start;
    const double t = std::clamp(((p.x - segment.start.x) * d.x + (p.y - segment.start.y) * d.y) / len2, 0.0, 1.0);
    return segment.start + t * d;
}

double point_to_segment_distance(Point2 p, const Segment2& segment) {
    return norm(p - closest_point_on_segment(p, segment));
}

double point_to_box_distance(Point2 p, const AlignedBox& box) {
    const double dx = std::max({0.0, box.min_corner.x - p.x, p.x - box.max_corner.x});
    const double dy = std::max({0.0, box.min_corner.y - p.y, p.y - box.max_corner.y});
    return std::hypot(dx, dy);
}

std::optional<Segment2> segments_collinear_overlap(const Segment2& a, const Segment2& b, double tol) {
    if (a.is_horizontal() && b.is_horizontal() && std::abs(a.start.y - b.start.y) <= tol) {
        const double lo = std::max(std::min(a.start.x, a.end.x), std::min(b.start.x, b.end.x));
        const double hi = std::min(std::max(a.start.x, a.end.x), std::max(b.start.x, b.end.x));
        if (hi - lo > tol) return Segment2{{lo, a.start.y}, {hi, a.start.y}};
        return std::nullopt;
    }
    if (a.is_vertical() && b.is_vertical() && std::abs(a.start.x - b.start.x) <= tol) {
        const double lo = std::max(std::min(a.start.y, a.end.y), std::min(b.start.y, b.end.y));
        const double hi = std::min(std::max(a.start.y, a.end.y), std::max(b.start.y, b.end.y));
        if (hi - lo > tol) return Segment2{{a.start.x, lo}, {a.start.x, hi}};
        return std::nullopt;
    }
    return std::nullopt;
}

}  // namespace floorplan
