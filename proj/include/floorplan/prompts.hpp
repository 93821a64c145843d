#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace floorplan {

struct RoomBrief {
    std::string name;
    std::string suffix;  // free text after the name, e.g. "with an attached toilet"
};

struct FurnitureBrief {
    std::string room;
    std::vector<std::string> items;
};

struct LayoutBrief {
    double width = 0.0;   // along x, feet
    double length = 0.0;  // along y, feet
    std::vector<RoomBrief> rooms;
    std::vector<FurnitureBrief> furniture;
    // Append the expanded clearance, window and door rules.
    bool directives = false;

    static LayoutBrief case_study();
};

// {"width": 30, "length": 40, "rooms": [{"name": ..., "suffix": ...}],
//  "furniture": [{"room": ..., "items": [...]}], "directives": false}
LayoutBrief parse_brief(std::string_view text);

// Throws PlanError(EmptyBrief) for a non-positive extent or no rooms.
std::string build_layout_prompt(const LayoutBrief& brief);

enum class ElementClass { walls, doors, windows, furniture };

std::string_view element_class_name(ElementClass element);
std::string build_script_prompt(ElementClass element);

}  // namespace floorplan
