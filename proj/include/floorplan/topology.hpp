#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floorplan/plan.hpp"

namespace floorplan {

// Name used for the outside of the building wherever a region is expected.
inline constexpr std::string_view kExteriorName = "exterior";

struct Diagnostic {
    std::string code;
    std::string subject;
    std::string message;
};

struct RoomExtraction {
    std::vector<RoomRegion> rooms;  // unnamed faces, ordered by lowest then leftmost cell
    std::vector<Diagnostic> warnings;
};

// Faces of the arrangement the wall centerlines cut out of the site extent.
// Throws OpenEnvelope when the extent boundary is not fully walled and
// NonSimpleFace for faces with holes or pinch points.
RoomExtraction extract_rooms(const FloorPlan& plan);

struct RoomNaming {
    std::vector<RoomRegion> rooms;
    // FurnitureOutsideAllRooms / FurnitureOutsideAssignedRoom flags, one per item.
    std::vector<Diagnostic> flags;
};

// Each furniture group names the face holding most of its items' initial
// centers; ties go to the face of the item listed first. Leftover faces get
// room_1, room_2, ... Throws AmbiguousRoomAssignment when two groups claim a face.
RoomNaming name_rooms(std::vector<RoomRegion> rooms, const FloorPlan& plan);

// Resolves every opening to the lowest-id wall that collinearly contains it
// and records the regions on either side. Unhosted openings keep no host.
FloorPlan host_openings(const FloorPlan& plan);

// Index into plan.rooms of the room whose interior strictly contains p.
std::optional<std::size_t> room_containing(const FloorPlan& plan, Point2 p);

struct TopologyResult {
    FloorPlan plan;
    std::vector<Diagnostic> diagnostics;
};

// extract_rooms, name_rooms and host_openings in sequence.
TopologyResult build_topology(const FloorPlan& plan);

}  // namespace floorplan
