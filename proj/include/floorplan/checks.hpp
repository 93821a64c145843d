#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "floorplan/plan.hpp"

namespace floorplan {

enum class Severity { error, warning, info };

std::string_view severity_name(Severity severity);

struct Finding {
    Severity severity = Severity::error;
    std::string code;
    std::string subject;
    std::string message;
    std::string suggested_action;
};

struct CheckReport {
    std::vector<Finding> findings;  // ordered by code, then subject

    std::size_t count(Severity severity) const;
    // 0 clean, 2 warnings only, 3 any error.
    int exit_code() const;
};

struct RoomRequirement {
    std::vector<std::string> required_kinds;
    double min_area = 0.0;  // square feet
};

struct RoomRequirements {
    int version = 1;
    std::map<std::string, RoomRequirement> rooms;  // keyed by room name

    static RoomRequirements defaults();
};

RoomRequirements parse_requirements(std::string_view text);
std::string emit_requirements(const RoomRequirements& requirements);

struct CheckConfig {
    double clearance_delta = 1.0;  // narrowest acceptable passage
    double grid = 0.5;             // pathfinding lattice spacing
};

std::vector<Finding> check_room_contents(const FloorPlan& plan, const RoomRequirements& requirements);

// Square of side equal to the door span, on the side of the region the
// door opens into: the interior for exterior doors, else the larger room.
std::optional<AlignedBox> door_swing(const FloorPlan& plan, const Opening& door);

std::vector<Finding> check_openings(const FloorPlan& plan);

struct RoomPairVerdict {
    std::string first;
    std::string second;
    bool connected = false;  // some free lattice path joins their door cells
    bool wide = false;       // such a path keeps delta/2 clear on both sides
};

// Grid pathfinding over a lattice covering the site plus an exterior ring.
// One verdict per pair of regions joined through the door graph.
std::vector<RoomPairVerdict> connectivity_verdicts(const FloorPlan& plan, const CheckConfig& cfg);

std::vector<Finding> check_connectivity(const FloorPlan& plan, const CheckConfig& cfg);

CheckReport run_all_checks(const FloorPlan& plan, const RoomRequirements& requirements, const CheckConfig& cfg);

std::string report_text(const CheckReport& report);
std::string report_structured(const CheckReport& report);

}  // namespace floorplan
