#include "floorplan/codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "floorplan/errors.hpp"

namespace floorplan {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& reason) {
    throw PlanError(ErrorCode::SchemaError, reason, path);
}

const Json& require_key(const Json& object, const char* key, const std::string& path) {
    const auto it = object.find(key);
    if (it == object.end()) schema_error(path + "/" + key, "missing key");
    return *it;
}

Point2 parse_coordinate(const Json& value, const std::string& path) {
    if (!value.is_array() || value.size() != 3) schema_error(path, "expected [x, y, 0]");
    for (std::size_t i = 0; i < 3; ++i) {
        if (!value[i].is_number()) schema_error(path + "/" + std::to_string(i), "coordinate is not numeric");
    }
    const double z = value[2].get<double>();
    if (std::abs(z) > kEpsilon) {
        throw PlanError(ErrorCode::NonZeroElevation, "z component must be 0", path + "/2");
    }
    Point2 p{value[0].get<double>(), value[1].get<double>()};
    if (!is_finite(p)) schema_error(path, "coordinate is not finite");
    return p;
}

Segment2 parse_span(const Json& entry, const std::string& path) {
    if (!entry.is_object()) schema_error(path, "expected an object with start/end");
    const Point2 start = parse_coordinate(require_key(entry, "start", path), path + "/start");
    const Point2 end = parse_coordinate(require_key(entry, "end", path), path + "/end");
    Segment2 segment;
    try {
        segment = make_segment(start, end);
    } catch (const PlanError& e) {
        throw PlanError(ErrorCode::GeometryError, e.detail(), path);
    }
    if (!segment.is_axis_aligned()) {
        throw PlanError(ErrorCode::GeometryError, "segment is not axis-aligned", path);
    }
    return segment;
}

const Json& require_array(const Json& object, const char* key) {
    const Json& value = require_key(object, key, "");
    if (!value.is_array()) schema_error(std::string("/") + key, "expected an array");
    return value;
}

void parse_openings(const Json& array, OpeningKind kind, const char* key, FloorPlan& plan) {
    for (std::size_t i = 0; i < array.size(); ++i) {
        const std::string path = std::string("/") + key + "/" + std::to_string(i);
        Opening opening;
        opening.kind = kind;
        opening.index = static_cast<std::uint32_t>(i);
        opening.span = parse_span(array[i], path);
        for (const auto& [name, value] : array[i].items()) {
            if (name == "start" || name == "end") continue;
            opening.extra_fields.emplace_back(name, value.dump());
        }
        plan.openings.push_back(std::move(opening));
    }
}

void parse_furniture(const Json& groups, FloorPlan& plan) {
    const std::string base = "/Furniture";
    if (!groups.is_object()) schema_error(base, "expected an object keyed by room name");
    for (const auto& [room, items] : groups.items()) {
        const std::string room_path = base + "/" + room;
        if (room.empty()) schema_error(room_path, "room name is empty");
        if (!items.is_array()) schema_error(room_path, "expected an array of items");
        plan.furniture_groups.push_back(room);
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::string path = room_path + "/" + std::to_string(i);
            const Json& entry = items[i];
            if (!entry.is_object()) schema_error(path, "expected an object with name/position");
            const Json& name = require_key(entry, "name", path);
            if (!name.is_string() || name.get<std::string>().empty()) {
                schema_error(path + "/name", "name must be a non-empty string");
            }
            FurnitureInstance item;
            item.name = name.get<std::string>();
            item.room_name = room;
            item.initial_center = parse_coordinate(require_key(entry, "position", path), path + "/position");
            if (const auto it = entry.find("facing"); it != entry.end()) {
                const auto facing = it->is_string() ? parse_facing(it->get<std::string>()) : std::nullopt;
                if (!facing) schema_error(path + "/facing", "expected north, east, south or west");
                item.facing = *facing;
            }
            plan.furniture.push_back(std::move(item));
        }
    }
}

AlignedBox bounding_box_of(const std::vector<Point2>& points) {
    AlignedBox box{points.front(), points.front()};
    for (const Point2& p : points) {
        box.min_corner.x = std::min(box.min_corner.x, p.x);
        box.min_corner.y = std::min(box.min_corner.y, p.y);
        box.max_corner.x = std::max(box.max_corner.x, p.x);
        box.max_corner.y = std::max(box.max_corner.y, p.y);
    }
    return box;
}

bool contains(const AlignedBox& box, Point2 p) {
    return p.x >= box.min_corner.x - kEpsilon && p.x <= box.max_corner.x + kEpsilon &&
           p.y >= box.min_corner.y - kEpsilon && p.y <= box.max_corner.y + kEpsilon;
}

void check_extent(const FloorPlan& plan) {
    auto check = [&](Point2 p, const std::string& path) {
        if (!contains(plan.extent, p)) {
            throw PlanError(ErrorCode::OutsideExtent, "geometry lies outside the site extent", path);
        }
    };
    for (const Wall& w : plan.walls) {
        const std::string path = "/walls/" + std::to_string(w.id.value);
        check(w.centerline.start, path);
        check(w.centerline.end, path);
    }
    for (const Opening& o : plan.openings) {
        const std::string path = std::string("/") + (o.kind == OpeningKind::door ? "doors/" : "windows/") +
                                 std::to_string(o.index);
        check(o.span.start, path);
        check(o.span.end, path);
    }
    for (const FurnitureInstance& f : plan.furniture) {
        check(f.initial_center, "/Furniture/" + f.room_name);
    }
}

std::string coordinate_text(Point2 p) {
    return "[" + format_number(p.x) + ", " + format_number(p.y) + ", 0]";
}

std::string span_text(const Segment2& s) {
    return "{\"start\": " + coordinate_text(s.start) + ", \"end\": " + coordinate_text(s.end);
}

void emit_array(std::ostringstream& out, const char* key, const std::vector<std::string>& entries, bool last) {
    out << "  \"" << key << "\": [";
    if (entries.empty()) {
        out << "]";
    } else {
        out << "\n";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            out << "    " << entries[i] << (i + 1 < entries.size() ? ",\n" : "\n");
        }
        out << "  ]";
    }
    out << (last ? "\n" : ",\n");
}

}  // namespace

std::string format_number(double value) {
    double rounded = std::round(value * 1e4) / 1e4;
    if (rounded == 0.0) rounded = 0.0;  // folds -0
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.4f", rounded);
    std::string text(buffer);
    while (text.back() == '0') text.pop_back();
    if (text.back() == '.') text.pop_back();
    return text;
}

FloorPlan parse_plan(std::string_view text, const ParseOptions& options) {
    if (text.empty()) schema_error("/", "input is empty");
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        schema_error("/", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) schema_error("/", "top level must be an object");

    FloorPlan plan;
    const Json& walls = require_array(doc, "walls");
    for (std::size_t i = 0; i < walls.size(); ++i) {
        const std::string path = "/walls/" + std::to_string(i);
        Wall wall;
        wall.id = WallId{static_cast<std::uint32_t>(i)};
        wall.centerline = parse_span(walls[i], path);
        if (const auto it = walls[i].find("height"); it != walls[i].end()) {
            if (!it->is_number() || !(it->get<double>() > 0.0)) schema_error(path + "/height", "height must be positive");
            wall.height = it->get<double>();
        }
        plan.walls.push_back(wall);
    }
    parse_openings(require_array(doc, "doors"), OpeningKind::door, "doors", plan);
    parse_openings(require_array(doc, "windows"), OpeningKind::window, "windows", plan);

    const auto furniture_it = doc.contains("Furniture") ? doc.find("Furniture") : doc.find("furniture");
    if (furniture_it == doc.end()) schema_error("/Furniture", "missing key");
    parse_furniture(*furniture_it, plan);

    if (options.extent) {
        plan.extent = *options.extent;
    } else if (!plan.walls.empty()) {
        std::vector<Point2> points;
        for (const Wall& w : plan.walls) {
            points.push_back(w.centerline.start);
            points.push_back(w.centerline.end);
        }
        plan.extent = bounding_box_of(points);
    } else {
        std::vector<Point2> points;
        for (const Opening& o : plan.openings) {
            points.push_back(o.span.start);
            points.push_back(o.span.end);
        }
        for (const FurnitureInstance& f : plan.furniture) points.push_back(f.initial_center);
        plan.extent = points.empty() ? AlignedBox{} : bounding_box_of(points);
    }
    check_extent(plan);
    return plan;
}

std::string emit_plan(const FloorPlan& plan) {
    std::vector<std::string> walls;
    for (const Wall& w : plan.walls) {
        std::string entry = span_text(w.centerline);
        if (std::abs(w.height - kDefaultWallHeight) > kEpsilon) entry += ", \"height\": " + format_number(w.height);
        walls.push_back(entry + "}");
    }
    std::vector<std::string> doors;
    std::vector<std::string> windows;
    for (const Opening& o : plan.openings) {
        std::string entry = span_text(o.span);
        for (const auto& [key, value] : o.extra_fields) {
            entry += ", " + Json(key).dump() + ": " + value;
        }
        (o.kind == OpeningKind::door ? doors : windows).push_back(entry + "}");
    }

    std::vector<std::string> groups = plan.furniture_groups;
    for (const FurnitureInstance& f : plan.furniture) {
        if (std::find(groups.begin(), groups.end(), f.room_name) == groups.end()) groups.push_back(f.room_name);
    }

    std::ostringstream out;
    out << "{\n";
    emit_array(out, "walls", walls, false);
    emit_array(out, "doors", doors, false);
    emit_array(out, "windows", windows, false);
    out << "  \"Furniture\": {";
    if (groups.empty()) {
        out << "}\n";
    } else {
        out << "\n";
        for (std::size_t g = 0; g < groups.size(); ++g) {
            out << "    " << Json(groups[g]).dump() << ": [";
            std::vector<std::string> items;
            for (const FurnitureInstance& f : plan.furniture) {
                if (f.room_name != groups[g]) continue;
                std::string entry = "{\"name\": " + Json(f.name).dump() +
                                    ", \"position\": " + coordinate_text(f.current_center());
                if (f.facing != Facing::north) entry += ", \"facing\": \"" + std::string(facing_name(f.facing)) + "\"";
                items.push_back(entry + "}");
            }
            if (items.empty()) {
                out << "]";
            } else {
                out << "\n";
                for (std::size_t i = 0; i < items.size(); ++i) {
                    out << "      " << items[i] << (i + 1 < items.size() ? ",\n" : "\n");
                }
                out << "    ]";
            }
            out << (g + 1 < groups.size() ? ",\n" : "\n");
        }
        out << "  }\n";
    }
    out << "}\n";
    return out.str();
}

std::string sanitize_llm_response(std::string_view raw) {
    for (std::size_t open = raw.find('{'); open != std::string_view::npos; open = raw.find('{', open + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = open; i < raw.size(); ++i) {
            const char c = raw[i];
            if (in_string) {
                if (escaped) {
                    escaped = false;
                } else if (c == '\\') {
                    escaped = true;
                } else if (c == '"') {
                    in_string = false;
                }
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == '{') {
                ++depth;
            } else if (c == '}') {
                if (--depth == 0) return std::string(raw.substr(open, i - open + 1));
            }
        }
    }
    throw PlanError(ErrorCode::NoJsonObjectFound, "response contains no balanced JSON object");
}

FurnitureCatalog parse_catalog(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PlanError(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what(), "/");
    }
    if (!doc.is_object()) throw PlanError(ErrorCode::SchemaError, "top level must be an object", "/");
    const auto version = doc.find("catalog_version");
    if (version == doc.end() || !version->is_number_integer()) {
        throw PlanError(ErrorCode::SchemaError, "missing integer catalog_version", "/catalog_version");
    }
    FurnitureCatalog catalog;
    catalog.version = version->get<int>();
    for (const auto& [kind, record] : doc.items()) {
        if (kind == "catalog_version") continue;
        const std::string path = "/" + kind;
        if (!record.is_object()) throw PlanError(ErrorCode::SchemaError, "expected a record", path);
        CatalogEntry entry;
        const Json& width = require_key(record, "width", path);
        const Json& depth = require_key(record, "depth", path);
        if (!width.is_number() || !depth.is_number() || !(width.get<double>() > 0.0) || !(depth.get<double>() > 0.0)) {
            throw PlanError(ErrorCode::SchemaError, "width and depth must be positive numbers", path);
        }
        entry.width = width.get<double>();
        entry.depth = depth.get<double>();
        if (const auto it = record.find("wall_adjacent"); it != record.end()) {
            if (!it->is_boolean()) throw PlanError(ErrorCode::SchemaError, "wall_adjacent must be boolean", path);
            entry.wall_adjacent = it->get<bool>();
        }
        catalog.entries[kind] = entry;
    }
    return catalog;
}

std::string emit_catalog(const FurnitureCatalog& catalog) {
    std::ostringstream out;
    out << "{\n  \"catalog_version\": " << catalog.version;
    for (const auto& [kind, entry] : catalog.entries) {
        out << ",\n  " << Json(kind).dump() << ": {\"width\": " << format_number(entry.width)
            << ", \"depth\": " << format_number(entry.depth)
            << ", \"wall_adjacent\": " << (entry.wall_adjacent ? "true" : "false") << "}";
    }
    out << "\n}\n";
    return out.str();
}

std::string emit_traces(const std::vector<PlacementTrace>& traces) {
    std::ostringstream out;
    out << "[";
    for (std::size_t t = 0; t < traces.size(); ++t) {
        const PlacementTrace& trace = traces[t];
        out << (t ? ",\n" : "\n") << "  {\"item\": " << trace.item << ", \"name\": " << Json(trace.name).dump()
            << ", \"room\": " << Json(trace.room).dump() << ", \"outcome\": \""
            << (trace.outcome == PlacementOutcome::placed ? "placed" : "failed") << "\"";
        if (!trace.failure_reason.empty()) out << ", \"failure_reason\": " << Json(trace.failure_reason).dump();
        out << ", \"steps\": [";
        for (std::size_t i = 0; i < trace.entries.size(); ++i) {
            const TraceEntry& e = trace.entries[i];
            out << (i ? ",\n" : "\n") << "    {\"center\": [" << format_number(e.placement.center.x) << ", "
                << format_number(e.placement.center.y) << "], \"facing\": \"" << facing_name(e.placement.facing)
                << "\", \"inside\": " << std::boolalpha << e.verdict.inside << ", \"clear\": " << e.verdict.clear
                << ", \"flush\": " << e.verdict.flush << "}";
        }
        out << (trace.entries.empty() ? "]}" : "\n  ]}");
    }
    out << (traces.empty() ? "]\n" : "\n]\n");
    return out.str();
}

}  // namespace floorplan
