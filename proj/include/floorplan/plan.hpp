#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floorplan/geometry.hpp"

namespace floorplan {

inline constexpr double kDefaultWallHeight = 10.0;

struct WallId {
    std::uint32_t value = 0;
    friend auto operator<=>(const WallId&, const WallId&) = default;
};

struct Wall {
    WallId id;
    Segment2 centerline;
    double height = kDefaultWallHeight;

    friend bool operator==(const Wall&, const Wall&) = default;
};

enum class OpeningKind { door, window };

std::string_view opening_kind_name(OpeningKind kind);

struct Opening {
    OpeningKind kind = OpeningKind::door;
    std::uint32_t index = 0;  // position within its kind's input array
    Segment2 span;
    std::optional<WallId> host_wall;
    // Names of the one or two regions the opening joins; "exterior" stands in
    // for the outside of the plan. Filled by host_openings.
    std::vector<std::string> connects;
    // Unmodelled input keys (sill height, type, ...) kept as compact JSON text.
    std::vector<std::pair<std::string, std::string>> extra_fields;

    std::string label() const;
    friend bool operator==(const Opening&, const Opening&) = default;
};

// Side of the footprint carrying the headboard edge. North is the max-y edge.
enum class Facing { north, east, south, west };

std::string_view facing_name(Facing facing);
std::optional<Facing> parse_facing(std::string_view text);
bool is_quarter_turn(Facing facing);

struct Footprint {
    double width = 0.0;  // along x when facing north
    double depth = 0.0;  // along y when facing north

    friend bool operator==(const Footprint&, const Footprint&) = default;
};

struct FurnitureInstance {
    std::string name;
    std::string room_name;
    Point2 initial_center;
    std::optional<Point2> refined_center;
    std::optional<Footprint> footprint;  // bound by resolve_catalog
    bool wall_adjacent = false;
    Facing facing = Facing::north;

    Point2 current_center() const { return refined_center.value_or(initial_center); }
    friend bool operator==(const FurnitureInstance&, const FurnitureInstance&) = default;
};

// Axis-aligned extents (along x, along y) of a footprint turned to `facing`.
std::pair<double, double> oriented_extent(const Footprint& footprint, Facing facing);
AlignedBox footprint_box(const FurnitureInstance& item, Point2 center, Facing facing);
AlignedBox footprint_box(const FurnitureInstance& item);

struct CatalogEntry {
    double width = 0.0;
    double depth = 0.0;
    bool wall_adjacent = false;

    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct FurnitureCatalog {
    int version = 1;
    std::map<std::string, CatalogEntry> entries;

    const CatalogEntry* find(std::string_view kind) const;
    static FurnitureCatalog defaults();
};

struct RoomRegion {
    std::string name;
    Polygon2 boundary;
    std::vector<WallId> bounding_walls;

    friend bool operator==(const RoomRegion&, const RoomRegion&) = default;
};

struct FloorPlan {
    AlignedBox extent;
    std::vector<Wall> walls;
    std::vector<Opening> openings;  // doors first, then windows, each in input order
    std::vector<FurnitureInstance> furniture;
    // Room keys of the furniture object in input order, including empty groups.
    std::vector<std::string> furniture_groups;
    std::vector<RoomRegion> rooms;

    const Wall* find_wall(WallId id) const;
    const RoomRegion* find_room(std::string_view name) const;

    friend bool operator==(const FloorPlan&, const FloorPlan&) = default;
};

// Binds footprint and wall adjacency to every item. Throws
// PlanError(UnknownFurnitureKind) without touching the input on a miss.
FloorPlan resolve_catalog(const FloorPlan& plan, const FurnitureCatalog& catalog);

struct ObstacleSource {
    enum class Kind { wall, door, window, furniture };
    Kind kind = Kind::wall;
    std::uint32_t index = 0;

    friend bool operator==(const ObstacleSource&, const ObstacleSource&) = default;
};

std::string describe(const ObstacleSource& source);

struct Obstacle {
    AlignedBox box;
    ObstacleSource source;
    std::optional<Segment2> centerline;  // walls only
};

struct OccupancySet {
    std::vector<Obstacle> obstacles;

    void add(Obstacle obstacle) { obstacles.push_back(std::move(obstacle)); }
    std::size_t size() const { return obstacles.size(); }
};

// One box per wall (inflated by `wall_half_thickness`), per opening, and per
// already-refined furniture item other than `exclude`.
OccupancySet occupancy_from_plan(const FloorPlan& plan, std::optional<std::size_t> exclude = std::nullopt,
                                 double wall_half_thickness = 0.0);

}  // namespace floorplan
