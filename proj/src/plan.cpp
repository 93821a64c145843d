#include "floorplan/plan.hpp"

#include <algorithm>

#include "floorplan/errors.hpp"

namespace floorplan {

std::string_view opening_kind_name(OpeningKind kind) {
    return kind == OpeningKind::door ? "door" : "window";
}

std::string Opening::label() const {
    return std::string(opening_kind_name(kind)) + "[" + std::to_string(index) + "]";
}

std::string_view facing_name(Facing facing) {
    switch (facing) {
        case Facing::north: return "north";
        case Facing::east: return "east";
        case Facing::south: return "south";
        case Facing::west: return "west";
    }
    return "north";
}

std::optional<Facing> parse_facing(std::string_view text) {
    if (text == "north") return Facing::north;
    if (text == "east") return Facing::east;
    if (text == "south") return Facing::south;
    if (text == "west") return Facing::west;
    return std::nullopt;
}

bool is_quarter_turn(Facing facing) { return facing == Facing::east || facing == Facing::west; }

std::pair<double, double> oriented_extent(const Footprint& footprint, Facing facing) {
    if (is_quarter_turn(facing)) return {footprint.depth, footprint.width};
    return {footprint.width, footprint.depth};
}

AlignedBox footprint_box(const FurnitureInstance& item, Point2 center, Facing facing) {
    if (!item.footprint) {
        throw PlanError(ErrorCode::UnknownFurnitureKind, "footprint of '" + item.name + "' is not resolved");
    }
    const auto [w, d] = oriented_extent(*item.footprint, facing);
    return box_from_center(center, w, d);
}

AlignedBox footprint_box(const FurnitureInstance& item) {
    return footprint_box(item, item.current_center(), item.facing);
}

const CatalogEntry* FurnitureCatalog::find(std::string_view kind) const {
    const auto it = entries.find(std::string(kind));
    return it == entries.end() ? nullptr : &it->second;
}

FurnitureCatalog FurnitureCatalog::defaults() {
    FurnitureCatalog catalog;
    catalog.entries = {
        {"Sofa", {6.0, 3.0, true}},
        {"TVUnit", {5.0, 1.5, true}},
        {"OfficeDesk", {5.0, 2.5, true}},
        {"Bed", {6.5, 5.0, true}},
        {"Wardrobe", {6.0, 2.0, true}},
        {"DiningTable", {6.0, 3.5, false}},
        {"Bench", {4.0, 1.5, false}},
    };
    return catalog;
}

const Wall* FloorPlan::find_wall(WallId id) const {
    const auto it = std::find_if(walls.begin(), walls.end(), [&](const Wall& w) { return w.id == id; });
    return it == walls.end() ? nullptr : &*it;
}

const RoomRegion* FloorPlan::find_room(std::string_view name) const {
    const auto it = std::find_if(rooms.begin(), rooms.end(), [&](const RoomRegion& r) { return r.name == name; });
    return it == rooms.end() ? nullptr : &*it;
}

FloorPlan resolve_catalog(const FloorPlan& plan, const FurnitureCatalog& catalog) {
    FloorPlan out = plan;
    for (std::size_t i = 0; i < out.furniture.size(); ++i) {
        FurnitureInstance& item = out.furniture[i];
        const CatalogEntry* entry = catalog.find(item.name);
        if (entry == nullptr) {
            throw PlanError(ErrorCode::UnknownFurnitureKind, "no catalog entry for '" + item.name + "'",
                            "/Furniture/" + item.room_name);
        }
        item.footprint = Footprint{entry->width, entry->depth};
        item.wall_adjacent = entry->wall_adjacent;
    }
    return out;
}

std::string describe(const ObstacleSource& source) {
    switch (source.kind) {
        case ObstacleSource::Kind::wall: return "wall[" + std::to_string(source.index) + "]";
        case ObstacleSource::Kind::door: return "door[" + std::to_string(source.index) + "]";
        case ObstacleSource::Kind::window: return "window[" + std::to_string(source.index) + "]";
        case ObstacleSource::Kind::furniture: return "furniture[" + std::to_string(source.index) + "]";
    }
    return "unknown";
}

OccupancySet occupancy_from_plan(const FloorPlan& plan, std::optional<std::size_t> exclude,
                                 double wall_half_thickness) {
    OccupancySet occ;
    for (const Wall& wall : plan.walls) {
        occ.add({box_of_segment(wall.centerline, wall_half_thickness),
                 {ObstacleSource::Kind::wall, wall.id.value},
                 wall.centerline});
    }
    for (const Opening& opening : plan.openings) {
        const auto kind =
            opening.kind == OpeningKind::door ? ObstacleSource::Kind::door : ObstacleSource::Kind::window;
        occ.add({box_of_segment(opening.span), {kind, opening.index}, std::nullopt});
    }
    for (std::size_t i = 0; i < plan.furniture.size(); ++i) {
        const FurnitureInstance& item = plan.furniture[i];
        if ((exclude && *exclude == i) || !item.refined_center) continue;
        occ.add({footprint_box(item), {ObstacleSource::Kind::furniture, static_cast<std::uint32_t>(i)}, std::nullopt});
    }
    return occ;
}

}  // namespace floorplan
