#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "floorplan/plan.hpp"

namespace floorplan {

struct RefinerConfig {
    double clearance_delta = 1.0;  // minimum walking gap to every obstacle
    double step_lambda = 0.5;      // greedy move length
    double flush_tolerance = 0.05;
    std::size_t max_iterations = 10000;
    bool rotation_allowed = true;
    double wall_half_thickness = 0.0;

    // Throws PlanError(ConfigError) when a field is out of range.
    void validate() const;
};

// A room's outline together with the wall segments that bound it.
struct RoomGeometry {
    std::string name;
    Polygon2 boundary;
    std::vector<Wall> walls;
};

RoomGeometry room_geometry(const FloorPlan& plan, const RoomRegion& room);

struct Placement {
    Point2 center;
    Facing facing = Facing::north;

    friend bool operator==(const Placement&, const Placement&) = default;
};

struct FeasibilityVerdict {
    bool inside = false;      // footprint within the room
    bool clear = false;       // clearance to every obstacle at least delta
    bool flush = false;       // headboard against a room wall (always true for freestanding items)
    double min_clearance = 0.0;

    bool feasible() const { return inside && clear && flush; }
};

FeasibilityVerdict is_feasible(const FurnitureInstance& item, const Placement& placement, const RoomGeometry& room,
                               const OccupancySet& occ, const RefinerConfig& cfg);

struct WallDirection {
    Point2 direction;  // unit vector
    WallId wall;
    double distance = 0.0;
};

// Unit vector from p to the closest point of the nearest wall; ties go to the
// lowest wall id. Throws PlanError(ZeroDirection) when p lies on that wall.
WallDirection nearest_wall_direction(Point2 p, const std::vector<Wall>& walls);

enum class PlacementOutcome { placed, failed };

struct TraceEntry {
    Placement placement;
    FeasibilityVerdict verdict;
};

struct PlacementTrace {
    std::size_t item = 0;
    std::string name;
    std::string room;
    std::vector<TraceEntry> entries;
    PlacementOutcome outcome = PlacementOutcome::failed;
    std::string failure_reason;
};

struct PlacementResult {
    std::optional<Placement> placement;
    PlacementTrace trace;
};

// Moves the item from its initial centre toward the nearest room wall in
// steps of at most lambda until the predicate holds, sliding along the wall
// once in contact and falling back to farther walls. On success the placed
// footprint is appended to `occ`; on failure `occ` is left untouched.
PlacementResult greedy_wall_placement(const FurnitureInstance& item, const RoomGeometry& room, OccupancySet& occ,
                                      const RefinerConfig& cfg);

struct RefineResult {
    FloorPlan plan;
    std::vector<PlacementTrace> traces;  // processing order
    OccupancySet occupancy;

    std::size_t placed_count() const;
};

// Processing order: room name ascending, then input order within the room.
std::vector<std::size_t> refinement_order(const FloorPlan& plan);

// Refines every item in refinement_order against a shared occupancy set.
// Requires named rooms and a resolved catalog.
RefineResult refine_plan(const FloorPlan& plan, const RefinerConfig& cfg);

// Facings the oracle enumerates for an item.
std::vector<Facing> candidate_facings(const FurnitureInstance& item, const RefinerConfig& cfg);

// Every grid centre (anchored at the room's lower-left bound, spacing
// `resolution`) and candidate facing that passes is_feasible.
std::vector<Placement> brute_force_feasible_set(const FurnitureInstance& item, const RoomGeometry& room,
                                                const OccupancySet& occ, const RefinerConfig& cfg, double resolution);

struct OracleCheck {
    std::size_t item = 0;
    std::string name;
    bool greedy_placed = false;
    std::size_t oracle_size = 0;
    double nearest_member_distance = -1.0;  // same facing; -1 when not applicable
    bool agrees = false;
};

// Replays refinement order and compares each outcome with the brute-force set
// built from the same occupancy the greedy saw.
std::vector<OracleCheck> verify_refinement(const FloorPlan& input, const RefineResult& result,
                                           const RefinerConfig& cfg, double resolution, double proximity);

}  // namespace floorplan
