#include "floorplan/refiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "floorplan/errors.hpp"

namespace floorplan {

void RefinerConfig::validate() const {
    if (!(clearance_delta >= 0.0) || !std::isfinite(clearance_delta)) {
        throw PlanError(ErrorCode::ConfigError, "clearance delta must be >= 0");
    }
    if (!(step_lambda > 0.0) || !std::isfinite(step_lambda)) {
        throw PlanError(ErrorCode::ConfigError, "step lambda must be > 0");
    }
    if (!(flush_tolerance >= 0.0) || !std::isfinite(flush_tolerance)) {
        throw PlanError(ErrorCode::ConfigError, "flush tolerance must be >= 0");
    }
    if (max_iterations < 1) throw PlanError(ErrorCode::ConfigError, "max iterations must be >= 1");
    if (!(wall_half_thickness >= 0.0)) throw PlanError(ErrorCode::ConfigError, "wall half-thickness must be >= 0");
}

RoomGeometry room_geometry(const FloorPlan& plan, const RoomRegion& room) {
    RoomGeometry geometry{room.name, room.boundary, {}};
    for (WallId id : room.bounding_walls) {
        if (const Wall* wall = plan.find_wall(id)) geometry.walls.push_back(*wall);
    }
    return geometry;
}

namespace {

struct Headboard {
    bool horizontal = true;
    double line = 0.0;  // y for horizontal edges, x for vertical ones
    double lo = 0.0;
    double hi = 0.0;
};

Headboard headboard_of(const AlignedBox& box, Facing facing) {
    switch (facing) {
        case Facing::north: return {true, box.max_corner.y, box.min_corner.x, box.max_corner.x};
        case Facing::south: return {true, box.min_corner.y, box.min_corner.x, box.max_corner.x};
        case Facing::east: return {false, box.max_corner.x, box.min_corner.y, box.max_corner.y};
        case Facing::west: return {false, box.min_corner.x, box.min_corner.y, box.max_corner.y};
    }
    return {};
}

// Containment is tested on the footprint pulled back from the headboard
// side, so a flush headboard does not count as leaving the room.
AlignedBox relaxed_for_containment(AlignedBox box, Facing facing, double amount) {
    switch (facing) {
        case Facing::north: box.max_corner.y -= amount; break;
        case Facing::south: box.min_corner.y += amount; break;
        case Facing::east: box.max_corner.x -= amount; break;
        case Facing::west: box.min_corner.x += amount; break;
    }
    return box;
}

// Walls starting in the flush band and running away from the footprint are
// the ones the headboard rests on; they are exempt from the clearance test.
bool wall_behind_headboard(const Segment2& wall, Facing facing, double line, double band) {
    const double near_coord = [&] {
        switch (facing) {
            case Facing::north: return std::min(wall.start.y, wall.end.y);
            case Facing::south: return std::max(wall.start.y, wall.end.y);
            case Facing::east: return std::min(wall.start.x, wall.end.x);
            case Facing::west: return std::max(wall.start.x, wall.end.x);
        }
        return 0.0;
    }();
    return std::abs(near_coord - line) <= band;
}

bool headboard_against_wall(const Headboard& hb, const std::vector<Wall>& walls, double band) {
    for (const Wall& w : walls) {
        const Segment2& s = w.centerline;
        if (hb.horizontal != s.is_horizontal()) continue;
        const double wall_line = hb.horizontal ? s.start.y : s.start.x;
        if (std::abs(wall_line - hb.line) > band) continue;
        const double wlo = hb.horizontal ? std::min(s.start.x, s.end.x) : std::min(s.start.y, s.end.y);
        const double whi = hb.horizontal ? std::max(s.start.x, s.end.x) : std::max(s.start.y, s.end.y);
        if (std::min(whi, hb.hi) - std::max(wlo, hb.lo) > kEpsilon) return true;
    }
    return false;
}

}  // namespace

FeasibilityVerdict is_feasible(const FurnitureInstance& item, const Placement& placement, const RoomGeometry& room,
                               const OccupancySet& occ, const RefinerConfig& cfg) {
    FeasibilityVerdict verdict;
    const AlignedBox box = footprint_box(item, placement.center, placement.facing);
    const Headboard hb = headboard_of(box, placement.facing);
    const double band = cfg.flush_tolerance + kEpsilon;

    const AlignedBox containment =
        item.wall_adjacent ? relaxed_for_containment(box, placement.facing, cfg.flush_tolerance + 2.0 * kEpsilon) : box;
    verdict.inside = box_inside_polygon(containment, room.boundary);

    double clearance = std::numeric_limits<double>::infinity();
    for (const Obstacle& obstacle : occ.obstacles) {
        if (item.wall_adjacent && obstacle.centerline &&
            wall_behind_headboard(*obstacle.centerline, placement.facing, hb.line, band)) {
            continue;
        }
        clearance = std::min(clearance, box_distance(box, obstacle.box));
    }
    verdict.min_clearance = clearance;
    verdict.clear = clearance >= cfg.clearance_delta - kEpsilon;

    verdict.flush = !item.wall_adjacent || headboard_against_wall(hb, room.walls, band);
    return verdict;
}

WallDirection nearest_wall_direction(Point2 p, const std::vector<Wall>& walls) {
    if (walls.empty()) throw PlanError(ErrorCode::GeometryError, "no walls to move toward");
    const Wall* best = nullptr;
    double best_distance = std::numeric_limits<double>::infinity();
    for (const Wall& w : walls) {
        const double d = point_to_segment_distance(p, w.centerline);
        if (d < best_distance - kEpsilon || (std::abs(d - best_distance) <= kEpsilon && w.id < best->id)) {
            best = &w;
            best_distance = d;
        }
    }
    if (best_distance <= kEpsilon) {
        throw PlanError(ErrorCode::ZeroDirection, "point lies on wall " + std::to_string(best->id.value));
    }
    const Point2 delta = closest_point_on_segment(p, best->centerline) - p;
    return {(1.0 / best_distance) * delta, best->id, best_distance};
}

namespace {

class GreedyRun {
public:
    GreedyRun(const FurnitureInstance& item, const RoomGeometry& room, const OccupancySet& occ,
              const RefinerConfig& cfg)
        : item_(item), room_(room), occ_(occ), cfg_(cfg) {}

    std::optional<Placement> run(PlacementTrace& trace) {
        trace_ = &trace;
        Placement start{item_.initial_center, item_.facing};
        if (evaluate(start)) return start;

        if (!point_strictly_inside(start.center, room_.boundary)) {
            if (!budget_left()) return exhausted();
            start.center = pull_inside(start);
            if (move_to(start)) return start;
        }
        if (room_.walls.empty()) return fail("room has no bounding walls");

        for (const Wall* wall : walls_by_distance(start.center)) {
            if (!budget_left()) return exhausted();
            if (auto placed = try_wall(*wall, start)) return placed;
        }
        return budget_left() ? fail("no feasible position along any room wall") : exhausted();
    }

private:
    bool budget_left() const { return moves_ < cfg_.max_iterations; }

    bool evaluate(const Placement& placement) {
        const FeasibilityVerdict verdict = is_feasible(item_, placement, room_, occ_, cfg_);
        trace_->entries.push_back({placement, verdict});
        return verdict.feasible();
    }

    bool move_to(const Placement& placement) {
        ++moves_;
        return evaluate(placement);
    }

    std::optional<Placement> fail(std::string reason) {
        trace_->failure_reason = std::move(reason);
        return std::nullopt;
    }

    std::optional<Placement> exhausted() { return fail("iteration budget exhausted"); }

    Point2 pull_inside(const Placement& placement) const {
        const AlignedBox room_box = bounds(room_.boundary);
        const auto [ex, ey] = oriented_extent(*item_.footprint, placement.facing);
        auto clamp_axis = [](double v, double lo, double hi) { return lo <= hi ? std::clamp(v, lo, hi) : (lo + hi) / 2.0; };
        return {clamp_axis(placement.center.x, room_box.min_corner.x + ex / 2.0, room_box.max_corner.x - ex / 2.0),
                clamp_axis(placement.center.y, room_box.min_corner.y + ey / 2.0, room_box.max_corner.y - ey / 2.0)};
    }

    std::vector<const Wall*> walls_by_distance(Point2 p) const {
        std::vector<const Wall*> order;
        for (const Wall& w : room_.walls) order.push_back(&w);
        std::stable_sort(order.begin(), order.end(), [&](const Wall* a, const Wall* b) {
            const double da = point_to_segment_distance(p, a->centerline);
            const double db = point_to_segment_distance(p, b->centerline);
            if (std::abs(da - db) > kEpsilon) return da < db;
            return a->id < b->id;
        });
        return order;
    }

    std::optional<Placement> try_wall(const Wall& wall, const Placement& start) {
        const Segment2& s = wall.centerline;
        if (point_to_segment_distance(start.center, s) <= kEpsilon) return std::nullopt;  // zero direction

        const bool horizontal = s.is_horizontal();
        const double wall_line = horizontal ? s.start.y : s.start.x;
        const double coord = horizontal ? start.center.y : start.center.x;
        if (std::abs(wall_line - coord) <= kEpsilon) return std::nullopt;
        const double sign = wall_line > coord ? 1.0 : -1.0;

        Facing facing = start.facing;
        if (item_.wall_adjacent) {
            const Facing toward = horizontal ? (sign > 0 ? Facing::north : Facing::south)
                                             : (sign > 0 ? Facing::east : Facing::west);
            if (toward != facing && !cfg_.rotation_allowed) return std::nullopt;
            facing = toward;
        }
        const auto [ex, ey] = oriented_extent(*item_.footprint, facing);
        const double half_normal = (horizontal ? ey : ex) / 2.0;
        const double standoff = item_.wall_adjacent ? 0.0 : cfg_.clearance_delta;
        const double target = wall_line - sign * (half_normal + standoff);

        Placement current{start.center, facing};
        auto set_normal = [&](double v) { (horizontal ? current.center.y : current.center.x) = v; };
        auto set_tangent = [&](double v) { (horizontal ? current.center.x : current.center.y) = v; };

        // Approach along the wall normal, never overshooting the contact position.
        double c = coord;
        bool moved = false;
        while (std::abs(target - c) > kEpsilon) {
            if (!budget_left()) return std::nullopt;
            c += std::clamp(target - c, -cfg_.step_lambda, cfg_.step_lambda);
            if (std::abs(target - c) <= kEpsilon) c = target;
            set_normal(c);
            moved = true;
            if (move_to(current)) return current;
        }
        if (!moved && !(current == trace_->entries.back().placement)) {
            if (!budget_left()) return std::nullopt;
            if (move_to(current)) return current;
        }

        // Slide along the wall, alternating sides, within the room's bounds.
        const AlignedBox room_box = bounds(room_.boundary);
        const double half_tangent = (horizontal ? ex : ey) / 2.0;
        const double lo = (horizontal ? room_box.min_corner.x : room_box.min_corner.y) + half_tangent;
        const double hi = (horizontal ? room_box.max_corner.x : room_box.max_corner.y) - half_tangent;
        if (lo > hi + kEpsilon) return std::nullopt;

        const double raw_base = horizontal ? current.center.x : current.center.y;
        const double base = std::clamp(raw_base, lo, hi);
        if (std::abs(base - raw_base) > kEpsilon) {
            if (!budget_left()) return std::nullopt;
            set_tangent(base);
            if (move_to(current)) return current;
        }

        std::vector<double> up;
        std::vector<double> down;
        for (double k = 1.0; base + k * cfg_.step_lambda <= hi + kEpsilon; k += 1.0) {
            up.push_back(std::min(base + k * cfg_.step_lambda, hi));
        }
        if (hi - (up.empty() ? base : up.back()) > kEpsilon) up.push_back(hi);
        for (double k = 1.0; base - k * cfg_.step_lambda >= lo - kEpsilon; k += 1.0) {
            down.push_back(std::max(base - k * cfg_.step_lambda, lo));
        }
        if ((down.empty() ? base : down.back()) - lo > kEpsilon) down.push_back(lo);

        for (std::size_t k = 0; k < std::max(up.size(), down.size()); ++k) {
            for (const std::vector<double>* side : {&up, &down}) {
                if (k >= side->size()) continue;
                if (!budget_left()) return std::nullopt;
                set_tangent((*side)[k]);
                if (move_to(current)) return current;
            }
        }
        return std::nullopt;
    }

    const FurnitureInstance& item_;
    const RoomGeometry& room_;
    const OccupancySet& occ_;
    const RefinerConfig& cfg_;
    PlacementTrace* trace_ = nullptr;
    std::size_t moves_ = 0;
};

}  // namespace

PlacementResult greedy_wall_placement(const FurnitureInstance& item, const RoomGeometry& room, OccupancySet& occ,
                                      const RefinerConfig& cfg) {
    cfg.validate();
    if (!item.footprint) {
        throw PlanError(ErrorCode::UnknownFurnitureKind, "footprint of '" + item.name + "' is not resolved");
    }
    PlacementResult result;
    result.trace.name = item.name;
    result.trace.room = room.name;
    GreedyRun run(item, room, occ, cfg);
    result.placement = run.run(result.trace);
    if (result.placement) {
        result.trace.outcome = PlacementOutcome::placed;
        occ.add({footprint_box(item, result.placement->center, result.placement->facing),
                 {ObstacleSource::Kind::furniture, 0},
                 std::nullopt});
    }
    return result;
}

std::size_t RefineResult::placed_count() const {
    return static_cast<std::size_t>(std::count_if(traces.begin(), traces.end(), [](const PlacementTrace& t) {
        return t.outcome == PlacementOutcome::placed;
    }));
}

std::vector<std::size_t> refinement_order(const FloorPlan& plan) {
    std::vector<std::size_t> order(plan.furniture.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return plan.furniture[a].room_name < plan.furniture[b].room_name;
    });
    return order;
}

namespace {

FloorPlan unrefined(const FloorPlan& plan) {
    FloorPlan out = plan;
    for (FurnitureInstance& item : out.furniture) item.refined_center.reset();
    return out;
}

}  // namespace

RefineResult refine_plan(const FloorPlan& plan, const RefinerConfig& cfg) {
    cfg.validate();
    RefineResult result;
    result.plan = unrefined(plan);
    result.occupancy = occupancy_from_plan(result.plan, std::nullopt, cfg.wall_half_thickness);

    for (std::size_t index : refinement_order(result.plan)) {
        FurnitureInstance& item = result.plan.furniture[index];
        const RoomRegion* room = result.plan.find_room(item.room_name);
        PlacementTrace trace;
        if (room == nullptr) {
            trace.name = item.name;
            trace.room = item.room_name;
            trace.failure_reason = "no room named '" + item.room_name + "'";
        } else {
            PlacementResult placed = greedy_wall_placement(item, room_geometry(result.plan, *room), result.occupancy, cfg);
            trace = std::move(placed.trace);
            if (placed.placement) {
                result.occupancy.obstacles.back().source.index = static_cast<std::uint32_t>(index);
                item.refined_center = placed.placement->center;
                item.facing = placed.placement->facing;
            }
        }
        trace.item = index;
        result.traces.push_back(std::move(trace));
    }
    return result;
}

std::vector<Facing> candidate_facings(const FurnitureInstance& item, const RefinerConfig& cfg) {
    if (!cfg.rotation_allowed) return {item.facing};
    if (item.wall_adjacent) return {Facing::north, Facing::east, Facing::south, Facing::west};
    return {Facing::north, Facing::east};
}

std::vector<Placement> brute_force_feasible_set(const FurnitureInstance& item, const RoomGeometry& room,
                                                const OccupancySet& occ, const RefinerConfig& cfg, double resolution) {
    if (!(resolution > 0.0)) throw PlanError(ErrorCode::ConfigError, "oracle resolution must be > 0");
    const AlignedBox room_box = bounds(room.boundary);
    const auto columns = static_cast<long>(std::floor(room_box.width() / resolution + kEpsilon));
    const auto rows = static_cast<long>(std::floor(room_box.height() / resolution + kEpsilon));
    std::vector<Placement> feasible;
    for (Facing facing : candidate_facings(item, cfg)) {
        for (long j = 0; j <= rows; ++j) {
            for (long i = 0; i <= columns; ++i) {
                const Placement candidate{{room_box.min_corner.x + static_cast<double>(i) * resolution,
                                           room_box.min_corner.y + static_cast<double>(j) * resolution},
                                          facing};
                if (is_feasible(item, candidate, room, occ, cfg).feasible()) feasible.push_back(candidate);
            }
        }
    }
    return feasible;
}

std::vector<OracleCheck> verify_refinement(const FloorPlan& input, const RefineResult& result,
                                           const RefinerConfig& cfg, double resolution, double proximity) {
    const FloorPlan base = unrefined(input);
    OccupancySet occ = occupancy_from_plan(base, std::nullopt, cfg.wall_half_thickness);
    std::vector<OracleCheck> checks;
    for (const PlacementTrace& trace : result.traces) {
        const FurnitureInstance& item = base.furniture[trace.item];
        OracleCheck check;
        check.item = trace.item;
        check.name = item.name;
        check.greedy_placed = trace.outcome == PlacementOutcome::placed;
        const RoomRegion* room = base.find_room(item.room_name);
        if (room == nullptr) {
            check.agrees = !check.greedy_placed;
            checks.push_back(check);
            continue;
        }
        const RoomGeometry geometry = room_geometry(base, *room);
        const auto members = brute_force_feasible_set(item, geometry, occ, cfg, resolution);
        check.oracle_size = members.size();
        if (check.greedy_placed) {
            const FurnitureInstance& placed = result.plan.furniture[trace.item];
            double best = std::numeric_limits<double>::infinity();
            for (const Placement& m : members) {
                if (m.facing == placed.facing) best = std::min(best, norm(m.center - *placed.refined_center));
            }
            check.nearest_member_distance = std::isfinite(best) ? best : -1.0;
            check.agrees = std::isfinite(best) && best <= proximity + kEpsilon;
            occ.add({footprint_box(placed), {ObstacleSource::Kind::furniture, static_cast<std::uint32_t>(trace.item)},
                     std::nullopt});
        } else {
            check.agrees = members.empty();
        }
        checks.push_back(check);
    }
    return checks;
}

}  // namespace floorplan
