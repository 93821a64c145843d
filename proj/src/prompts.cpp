#include "floorplan/prompts.hpp"

#include <sstream>

#include <json.hpp>

#include "floorplan/codec.hpp"
#include "floorplan/errors.hpp"

namespace floorplan {

LayoutBrief LayoutBrief::case_study() {
    LayoutBrief brief;
    brief.width = 30;
    brief.length = 40;
    brief.rooms = {{"LivingHall", ""}, {"Kitchen", ""}, {"OfficeRoom", ""}, {"Bedroom", "with an attached toilet"}};
    brief.furniture = {{"LivingHall", {"Sofa", "TVUnit"}},
                       {"OfficeRoom", {"Sofa", "OfficeDesk"}},
                       {"Bedroom", {"Bed", "Wardrobe"}},
                       {"Kitchen", {"DiningTable", "Bench"}}};
    return brief;
}

LayoutBrief parse_brief(std::string_view text) {
    using Json = nlohmann::json;
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PlanError(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what(), "/");
    }
    if (!doc.is_object()) throw PlanError(ErrorCode::SchemaError, "brief must be an object", "/");
    auto number = [&](const char* key) {
        const auto it = doc.find(key);
        if (it == doc.end() || !it->is_number()) {
            throw PlanError(ErrorCode::SchemaError, "expected a number", std::string("/") + key);
        }
        return it->get<double>();
    };
    LayoutBrief brief;
    brief.width = number("width");
    brief.length = number("length");
    try {
        for (const Json& room : doc.value("rooms", Json::array())) {
            brief.rooms.push_back({room.at("name").get<std::string>(), room.value("suffix", std::string())});
        }
        for (const Json& group : doc.value("furniture", Json::array())) {
            brief.furniture.push_back(
                {group.at("room").get<std::string>(), group.at("items").get<std::vector<std::string>>()});
        }
        brief.directives = doc.value("directives", false);
    } catch (const Json::exception& e) {
        throw PlanError(ErrorCode::SchemaError, e.what(), "/");
    }
    return brief;
}

namespace {

std::string join_list(const std::vector<std::string>& parts) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += parts.size() == 2 ? " and " : (i + 1 == parts.size() ? ", and " : ", ");
        out += parts[i];
    }
    return out;
}

}  // namespace

std::string build_layout_prompt(const LayoutBrief& brief) {
    if (!(brief.width > 0.0) || !(brief.length > 0.0)) {
        throw PlanError(ErrorCode::EmptyBrief, "brief extent must be positive");
    }
    if (brief.rooms.empty()) throw PlanError(ErrorCode::EmptyBrief, "brief lists no rooms");

    const std::string w = format_number(brief.width);
    const std::string l = format_number(brief.length);
    std::vector<std::string> rooms;
    for (const RoomBrief& r : brief.rooms) rooms.push_back(r.suffix.empty() ? r.name : r.name + " " + r.suffix);

    std::ostringstream out;
    out << "Generate a JSON object representing a floor plan for a single-story building with overall dimensions of "
        << w << " feet in width (x-axis: 0 to " << w << ") and " << l << " feet in length (y-axis: 0 to " << l
        << "). The output must be a JSON object with four top-level keys: \"walls\", \"doors\", \"windows\", and "
           "\"Furniture\".\n\n";
    out << "walls: Provide an array of objects where each object represents a wall segment with \"start\" and \"end\" "
           "coordinates in the format [x, y, 0]. The exterior walls must form a "
        << w << "x" << l << " ft rectangle. Include interior walls to define the following "
        << (rooms.size() == 1 ? "room: " : "rooms: ") << join_list(rooms)
        << ". The AI should decide the placement and dimensions of "
        << (rooms.size() == 1 ? "this room" : "these rooms") << ".\n\n";
    out << "doors: List each door with \"start\" and \"end\" coordinates. Place doors on wall segments with no overlap. "
           "Ensure logical connectivity between rooms and include at least one exterior entry door.\n\n";
    out << "windows: Provide an array of \"start\" and \"end\" coordinates. Place only on exterior walls, avoiding any "
           "overlap with doors.\n\n";
    out << "Furniture: For each room, include furniture as objects with \"name\" and \"position\" fields. Position is "
           "[x, y, 0], representing the center.\n";
    for (const FurnitureBrief& group : brief.furniture) {
        std::string items;
        for (const std::string& item : group.items) items += (items.empty() ? "" : ", ") + item;
        out << "- " << group.room << ": " << items << "\n";
    }
    out << "\nAssume standard furniture dimensions and ensure no overlaps with walls, doors, or other furniture. All "
           "components must lie within the defined room boundaries.\n\n";
    if (brief.directives) {
        out << "Additional rules:\n"
            << "- Keep every furniture item at least 1 ft from walls, doors, windows, and other furniture.\n"
            << "- Place at least one exterior door to the " << brief.rooms.front().name
            << " and interior doors that connect all rooms; no door may overlap a window.\n"
            << "- Place windows on exterior walls only, each at least 2 ft from any door edge.\n\n";
    }
    out << "Note: Avoid unnecessary text or metadata. Output should be a clean JSON object only.\n";
    return out.str();
}

std::string_view element_class_name(ElementClass element) {
    switch (element) {
        case ElementClass::walls: return "walls";
        case ElementClass::doors: return "doors";
        case ElementClass::windows: return "windows";
        case ElementClass::furniture: return "furniture";
    }
    return "walls";
}

namespace {

constexpr const char* kOutputRule =
    "- Output only executable Python code. Do not include any explanations, comments, or markdown.\n";

std::string opening_prompt(const char* plural, const char* singular, const char* others, const char* category) {
    std::ostringstream out;
    out << "You are a Revit Python expert. Given the variable `data` that stores a JSON object with a top-level key \""
        << plural << "\", where each element has \"start\" and \"end\" coordinates in the format [x, y, 0], generate a "
        << "Python script that places all the " << plural << " in Autodesk Revit.\n\n"
        << "Requirements:\n"
        << "- Import the necessary Revit API classes (e.g., Autodesk.Revit.DB).\n"
        << "- Begin a Transaction.\n"
        << "- For each " << singular << ":\n"
        << "  - Compute the midpoint XYZ((x1 + x2) / 2, (y1 + y2) / 2, 0) of its span.\n"
        << "  - Find the existing wall whose location curve contains the midpoint and use it as the host.\n"
        << "  - Use doc.Create.NewFamilyInstance(point, " << singular << "Type, host, level, "
        << "StructuralType.NonStructural) to place the " << singular << ".\n"
        << "- Use the first available " << singular << " family symbol (" << singular << "Type) from "
        << category << ", activated if needed, and the first level (level) in the document.\n"
        << "- Commit the Transaction.\n"
        << "- Do NOT generate " << others << ".\n"
        << kOutputRule;
    return out.str();
}

}  // namespace

std::string build_script_prompt(ElementClass element) {
    switch (element) {
        case ElementClass::walls:
            return std::string(
                       "You are a Revit Python expert. Given the variable `data` that stores a JSON object with a "
                       "top-level key \"walls\", where each element has \"start\" and \"end\" coordinates in the format "
                       "[x, y, 0], generate a Python script that creates all the walls in Autodesk Revit.\n\n"
                       "Requirements:\n"
                       "- Import the necessary Revit API classes (e.g., Autodesk.Revit.DB).\n"
                       "- Begin a Transaction.\n"
                       "- For each wall segment:\n"
                       "  - Create a Line using Line.CreateBound(XYZ(x1, y1, 0), XYZ(x2, y2, 0)).\n"
                       "  - Use Wall.Create(doc, line, wallType.Id, level.Id, 10, 0, False, False) to place a "
                       "10-ft-high basic wall.\n"
                       "- Use the first available wall type (wallType) and the first level (level) in the document.\n"
                       "- Commit the Transaction.\n"
                       "- Do NOT generate doors, windows, or furniture.\n") +
                   kOutputRule;
        case ElementClass::doors:
            return opening_prompt("doors", "door", "walls, windows, or furniture", "BuiltInCategory.OST_Doors");
        case ElementClass::windows:
            return opening_prompt("windows", "window", "walls, doors, or furniture", "BuiltInCategory.OST_Windows");
        case ElementClass::furniture:
            return std::string(
                       "You are a Revit Python expert. Given the variable `data` that stores a JSON object with a "
                       "top-level key \"Furniture\", whose keys are room names and whose values are arrays of items "
                       "with a \"name\" and a \"position\" center point in the format [x, y, 0], generate a Python "
                       "script that inserts every item as a predefined Family instance in Autodesk Revit.\n\n"
                       "Requirements:\n"
                       "- Import the necessary Revit API classes (e.g., Autodesk.Revit.DB).\n"
                       "- Begin a Transaction.\n"
                       "- For each furniture item:\n"
                       "  - Find the family symbol whose family name equals the item's \"name\", activated if "
                       "needed.\n"
                       "  - Use doc.Create.NewFamilyInstance(XYZ(x, y, 0), symbol, level, "
                       "StructuralType.NonStructural) to place it at its center point.\n"
                       "- Use the first level (level) in the document.\n"
                       "- Commit the Transaction.\n"
                       "- Do NOT generate walls, doors, or windows.\n") +
                   kOutputRule;
    }
    return {};
}

}  // namespace floorplan
