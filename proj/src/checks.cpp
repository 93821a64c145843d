#include "floorplan/checks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "floorplan/codec.hpp"
#include "floorplan/errors.hpp"
#include "floorplan/topology.hpp"

namespace floorplan {

using Json = nlohmann::ordered_json;

std::string_view severity_name(Severity severity) {
    switch (severity) {
        case Severity::error: return "error";
        case Severity::warning: return "warning";
        case Severity::info: return "info";
    }
    return "error";
}

std::size_t CheckReport::count(Severity severity) const {
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [&](const Finding& f) { return f.severity == severity; }));
}

int CheckReport::exit_code() const {
    if (count(Severity::error) > 0) return 3;
    if (count(Severity::warning) > 0) return 2;
    return 0;
}

RoomRequirements RoomRequirements::defaults() {
    RoomRequirements r;
    r.rooms = {
        {"LivingHall", {{"Sofa", "TVUnit"}, 200.0}},
        {"OfficeRoom", {{"Sofa", "OfficeDesk"}, 80.0}},
        {"Bedroom", {{"Bed", "Wardrobe"}, 80.0}},
        {"Kitchen", {{"DiningTable", "Bench"}, 80.0}},
    };
    return r;
}

RoomRequirements parse_requirements(std::string_view text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw PlanError(ErrorCode::SchemaError, std::string("invalid JSON: ") + e.what(), "/");
    }
    if (!doc.is_object()) throw PlanError(ErrorCode::SchemaError, "top level must be an object", "/");
    const auto version = doc.find("requirements_version");
    if (version == doc.end() || !version->is_number_integer()) {
        throw PlanError(ErrorCode::SchemaError, "missing integer requirements_version", "/requirements_version");
    }
    RoomRequirements requirements;
    requirements.version = version->get<int>();
    for (const auto& [room, record] : doc.items()) {
        if (room == "requirements_version") continue;
        const std::string path = "/" + room;
        if (!record.is_object()) throw PlanError(ErrorCode::SchemaError, "expected a record", path);
        RoomRequirement requirement;
        if (const auto it = record.find("required"); it != record.end()) {
            if (!it->is_array()) throw PlanError(ErrorCode::SchemaError, "required must be an array", path + "/required");
            for (const Json& kind : *it) {
                if (!kind.is_string()) throw PlanError(ErrorCode::SchemaError, "kinds must be strings", path + "/required");
                requirement.required_kinds.push_back(kind.get<std::string>());
            }
        }
        const auto area = record.find("min_area");
        if (area == record.end() || !area->is_number() || !(area->get<double>() > 0.0)) {
            throw PlanError(ErrorCode::SchemaError, "min_area must be a positive number", path + "/min_area");
        }
        requirement.min_area = area->get<double>();
        requirements.rooms[room] = std::move(requirement);
    }
    return requirements;
}

std::string emit_requirements(const RoomRequirements& requirements) {
    std::ostringstream out;
    out << "{\n  \"requirements_version\": " << requirements.version;
    for (const auto& [room, requirement] : requirements.rooms) {
        out << ",\n  " << Json(room).dump() << ": {\"required\": [";
        for (std::size_t i = 0; i < requirement.required_kinds.size(); ++i) {
            out << (i ? ", " : "") << Json(requirement.required_kinds[i]).dump();
        }
        out << "], \"min_area\": " << format_number(requirement.min_area) << "}";
    }
    out << "\n}\n";
    return out.str();
}

std::vector<Finding> check_room_contents(const FloorPlan& plan, const RoomRequirements& requirements) {
    std::vector<Finding> findings;
    const std::string action = "redesign the room or merge it with an adjacent zone";
    for (const RoomRegion& room : plan.rooms) {
        const auto it = requirements.rooms.find(room.name);
        if (it == requirements.rooms.end()) continue;
        for (const std::string& kind : it->second.required_kinds) {
            const bool present = std::any_of(plan.furniture.begin(), plan.furniture.end(), [&](const FurnitureInstance& f) {
                return f.room_name == room.name && f.name == kind;
            });
            if (!present) {
                findings.push_back({Severity::error, "MISSING_FURNITURE", room.name + ":" + kind,
                                    room.name + " has no " + kind, action});
            }
        }
        const double room_area = area(room.boundary);
        if (room_area < it->second.min_area - kEpsilon) {
            findings.push_back({Severity::error, "ROOM_TOO_SMALL", room.name,
                                room.name + " covers " + format_number(room_area) + " sq ft, below the minimum of " +
                                    format_number(it->second.min_area),
                                action});
        }
    }
    return findings;
}

namespace {

std::optional<std::size_t> room_index(const FloorPlan& plan, const std::string& name) {
    for (std::size_t i = 0; i < plan.rooms.size(); ++i) {
        if (plan.rooms[i].name == name) return i;
    }
    return std::nullopt;
}

// 0 for the low side (below / left of the span), 1 for the high side.
std::optional<std::size_t> swing_side(const FloorPlan& plan, const Opening& door) {
    if (door.connects.size() != 2) return std::nullopt;
    const bool low_exterior = door.connects[0] == kExteriorName;
    const bool high_exterior = door.connects[1] == kExteriorName;
    if (low_exterior && high_exterior) return std::nullopt;
    if (low_exterior) return 1;
    if (high_exterior) return 0;
    const auto low = room_index(plan, door.connects[0]);
    const auto high = room_index(plan, door.connects[1]);
    if (!low || !high) return std::nullopt;
    const double low_area = area(plan.rooms[*low].boundary);
    const double high_area = area(plan.rooms[*high].boundary);
    if (std::abs(low_area - high_area) > kEpsilon) return low_area > high_area ? 0 : 1;
    return *low < *high ? 0 : 1;
}

std::string pair_subject(const Opening& a, const Opening& b) { return a.label() + "+" + b.label(); }

bool opening_order(const Opening& a, const Opening& b) {
    return std::make_tuple(a.kind != OpeningKind::door, a.index) < std::make_tuple(b.kind != OpeningKind::door, b.index);
}

}  // namespace

std::optional<AlignedBox> door_swing(const FloorPlan& plan, const Opening& door) {
    if (door.kind != OpeningKind::door || !door.host_wall) return std::nullopt;
    const auto side = swing_side(plan, door);
    if (!side) return std::nullopt;
    const AlignedBox span = box_of_segment(door.span);
    const double reach = door.span.length();
    AlignedBox swing = span;
    if (door.span.is_horizontal()) {
        (*side == 0 ? swing.min_corner.y : swing.max_corner.y) += (*side == 0 ? -reach : reach);
    } else {
        (*side == 0 ? swing.min_corner.x : swing.max_corner.x) += (*side == 0 ? -reach : reach);
    }
    return swing;
}

std::vector<Finding> check_openings(const FloorPlan& plan) {
    std::vector<Finding> findings;
    std::vector<const Opening*> openings;
    for (const Opening& o : plan.openings) openings.push_back(&o);
    std::sort(openings.begin(), openings.end(), [](const Opening* a, const Opening* b) { return opening_order(*a, *b); });

    for (const Opening* o : openings) {
        if (!o->host_wall) {
            findings.push_back({Severity::error, "ORPHAN_OPENING", o->label(),
                                o->label() + " does not lie on any wall segment", "move it onto a wall"});
            continue;
        }
        if (o->kind == OpeningKind::window &&
            std::find(o->connects.begin(), o->connects.end(), kExteriorName) == o->connects.end()) {
            findings.push_back({Severity::error, "WINDOW_ON_INTERIOR_WALL", o->label(),
                                o->label() + " sits on interior wall " + std::to_string(o->host_wall->value),
                                "move the window to an exterior wall"});
        }
    }

    for (std::size_t i = 0; i < openings.size(); ++i) {
        for (std::size_t j = i + 1; j < openings.size(); ++j) {
            const Opening& a = *openings[i];
            const Opening& b = *openings[j];
            if (!a.host_wall || !b.host_wall || *a.host_wall != *b.host_wall) continue;
            if (segments_collinear_overlap(a.span, b.span)) {
                findings.push_back({Severity::error, "OPENING_OVERLAP", pair_subject(a, b),
                                    a.label() + " and " + b.label() + " overlap on wall " +
                                        std::to_string(a.host_wall->value),
                                    "separate the openings"});
                continue;
            }
            if (a.kind == b.kind) continue;
            const double gap = box_distance(box_of_segment(a.span), box_of_segment(b.span));
            if (gap < 2.0 - kEpsilon) {
                findings.push_back({Severity::error, "WINDOW_DOOR_CLEARANCE", pair_subject(a, b),
                                    "window and door edges are " + format_number(gap) + " ft apart, need 2 ft",
                                    "shift the window away from the door"});
            }
        }
    }

    for (const Opening* o : openings) {
        const auto swing = door_swing(plan, *o);
        if (!swing) continue;
        std::vector<std::string> blockers;
        for (const Wall& w : plan.walls) {
            if (o->host_wall && w.id == *o->host_wall) continue;
            if (segments_collinear_overlap(w.centerline, o->span)) continue;
            if (segment_meets_open_box(w.centerline, *swing)) blockers.push_back("wall[" + std::to_string(w.id.value) + "]");
        }
        for (std::size_t k = 0; k < plan.furniture.size(); ++k) {
            const FurnitureInstance& f = plan.furniture[k];
            if (!f.footprint) continue;
            if (box_meets_interior(footprint_box(f), *swing)) blockers.push_back(f.name);
        }
        if (!blockers.empty()) {
            std::string list;
            for (const std::string& b : blockers) list += (list.empty() ? "" : ", ") + b;
            findings.push_back({Severity::error, "DOOR_SWING_BLOCKED", o->label(),
                                o->label() + " swing is obstructed by " + list, "clear the door swing area"});
        }
    }
    return findings;
}

namespace {

struct Circulation {
    // Lattice nodes first, door nodes after.
    std::vector<Point2> nodes;
    std::vector<bool> free;
    std::vector<double> clearance;
    std::vector<std::vector<std::size_t>> adjacency;
    std::vector<std::string> region;  // owning region name, empty on walls
    // For each door node, the sides (0 low, 1 high) and the lattice nodes linked there.
    struct DoorLinks {
        std::size_t node = 0;
        const Opening* door = nullptr;
        std::vector<std::size_t> side_nodes[2];
    };
    std::vector<DoorLinks> doors;
};

std::vector<Segment2> solid_wall_pieces(const FloorPlan& plan) {
    std::vector<Segment2> pieces;
    for (const Wall& w : plan.walls) {
        const Segment2& s = w.centerline;
        const bool horizontal = s.is_horizontal();
        const double lo = horizontal ? std::min(s.start.x, s.end.x) : std::min(s.start.y, s.end.y);
        const double hi = horizontal ? std::max(s.start.x, s.end.x) : std::max(s.start.y, s.end.y);
        std::vector<std::pair<double, double>> gaps;
        for (const Opening& o : plan.openings) {
            if (o.kind != OpeningKind::door) continue;
            if (const auto shared = segments_collinear_overlap(s, o.span)) {
                gaps.emplace_back(horizontal ? shared->start.x : shared->start.y,
                                  horizontal ? shared->end.x : shared->end.y);
            }
        }
        std::sort(gaps.begin(), gaps.end());
        double cursor = lo;
        auto emit = [&](double a, double b) {
            if (b - a <= kEpsilon) return;
            pieces.push_back(horizontal ? Segment2{{a, s.start.y}, {b, s.start.y}} : Segment2{{s.start.x, a}, {s.start.x, b}});
        };
        for (const auto& [a, b] : gaps) {
            emit(cursor, a);
            cursor = std::max(cursor, b);
        }
        emit(cursor, hi);
    }
    return pieces;
}

Circulation build_circulation(const FloorPlan& plan, const CheckConfig& cfg) {
    const double g = cfg.grid;
    const std::vector<Segment2> walls = solid_wall_pieces(plan);
    std::vector<AlignedBox> furniture;
    for (const FurnitureInstance& f : plan.furniture) {
        if (f.footprint) furniture.push_back(footprint_box(f));
    }

    auto clearance_at = [&](Point2 p) {
        double d = std::numeric_limits<double>::infinity();
        for (const Segment2& w : walls) d = std::min(d, point_to_segment_distance(p, w));
        for (const AlignedBox& b : furniture) d = std::min(d, point_to_box_distance(p, b));
        return d;
    };
    auto passable = [&](Point2 a, Point2 b) {
        const Segment2 step{a, b};
        for (const Segment2& w : walls) {
            if (segment_meets_closed_box(step, box_of_segment(w))) return false;
        }
        for (const AlignedBox& box : furniture) {
            if (segment_meets_closed_box(step, box)) return false;
        }
        return true;
    };
    auto region_of = [&](Point2 p) -> std::string {
        const AlignedBox& e = plan.extent;
        const bool outside = p.x < e.min_corner.x - kEpsilon || p.x > e.max_corner.x + kEpsilon ||
                             p.y < e.min_corner.y - kEpsilon || p.y > e.max_corner.y + kEpsilon;
        if (outside) return std::string(kExteriorName);
        const auto r = room_containing(plan, p);
        return r ? plan.rooms[*r].name : std::string();
    };

    const double margin = g * std::ceil((cfg.clearance_delta + 2.0 * g) / g);
    const Point2 origin{plan.extent.min_corner.x - margin, plan.extent.min_corner.y - margin};
    const auto columns = static_cast<std::size_t>(std::floor((plan.extent.width() + 2.0 * margin) / g + kEpsilon)) + 1;
    const auto rows = static_cast<std::size_t>(std::floor((plan.extent.height() + 2.0 * margin) / g + kEpsilon)) + 1;

    Circulation c;
    const std::size_t lattice = columns * rows;
    c.nodes.reserve(lattice);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = 0; i < columns; ++i) {
            c.nodes.push_back({origin.x + static_cast<double>(i) * g, origin.y + static_cast<double>(j) * g});
        }
    }
    for (const Opening& o : plan.openings) {
        if (o.kind != OpeningKind::door || !o.host_wall || o.connects.size() != 2) continue;
        c.doors.push_back({c.nodes.size(), &o, {}});
        c.nodes.push_back(o.span.midpoint());
    }
    c.free.resize(c.nodes.size());
    c.clearance.resize(c.nodes.size());
    c.region.resize(c.nodes.size());
    c.adjacency.resize(c.nodes.size());
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
        c.clearance[n] = clearance_at(c.nodes[n]);
        c.free[n] = c.clearance[n] > kEpsilon;
        c.region[n] = region_of(c.nodes[n]);
    }
    auto link = [&](std::size_t a, std::size_t b) {
        c.adjacency[a].push_back(b);
        c.adjacency[b].push_back(a);
    };
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = 0; i < columns; ++i) {
            const std::size_t n = j * columns + i;
            if (!c.free[n]) continue;
            if (i + 1 < columns && c.free[n + 1] && passable(c.nodes[n], c.nodes[n + 1])) link(n, n + 1);
            if (j + 1 < rows && c.free[n + columns] && passable(c.nodes[n], c.nodes[n + columns])) link(n, n + columns);
        }
    }
    const double reach = 1.5 * g;
    for (auto& d : c.doors) {
        if (!c.free[d.node]) continue;
        const Point2 mid = c.nodes[d.node];
        const bool horizontal = d.door->span.is_horizontal();
        const auto i0 = static_cast<long>(std::floor((mid.x - origin.x - reach) / g));
        const auto j0 = static_cast<long>(std::floor((mid.y - origin.y - reach) / g));
        const auto span = static_cast<long>(std::ceil(2.0 * reach / g)) + 1;
        for (long j = j0; j <= j0 + span; ++j) {
            for (long i = i0; i <= i0 + span; ++i) {
                if (i < 0 || j < 0 || i >= static_cast<long>(columns) || j >= static_cast<long>(rows)) continue;
                const std::size_t n = static_cast<std::size_t>(j) * columns + static_cast<std::size_t>(i);
                if (!c.free[n] || norm(c.nodes[n] - mid) > reach + kEpsilon) continue;
                if (!passable(mid, c.nodes[n])) continue;
                link(d.node, n);
                const double offset = horizontal ? c.nodes[n].y - mid.y : c.nodes[n].x - mid.x;
                if (std::abs(offset) > kEpsilon) d.side_nodes[offset > 0 ? 1 : 0].push_back(n);
            }
        }
    }
    return c;
}

// Component label per node, restricted to nodes accepted by `keep`.
std::vector<long> label_components(const Circulation& c, const std::vector<bool>& keep) {
    std::vector<long> label(c.nodes.size(), -1);
    long next = 0;
    for (std::size_t s = 0; s < c.nodes.size(); ++s) {
        if (!keep[s] || label[s] >= 0) continue;
        std::deque<std::size_t> queue{s};
        label[s] = next;
        while (!queue.empty()) {
            const std::size_t n = queue.front();
            queue.pop_front();
            for (std::size_t m : c.adjacency[n]) {
                if (keep[m] && label[m] < 0) {
                    label[m] = next;
                    queue.push_back(m);
                }
            }
        }
        ++next;
    }
    return label;
}

// Components each region reaches through its doors.
std::map<std::string, std::set<long>> region_components(const Circulation& c, const std::vector<bool>& keep,
                                                        const std::vector<long>& label) {
    std::map<std::string, std::set<long>> out;
    for (const auto& d : c.doors) {
        if (!keep[d.node]) continue;
        for (std::size_t side = 0; side < 2; ++side) {
            const std::string& region = d.door->connects[side];
            for (std::size_t n : d.side_nodes[side]) {
                if (keep[n] && c.region[n] == region) {
                    out[region].insert(label[d.node]);
                    break;
                }
            }
        }
    }
    return out;
}

bool share_component(const std::map<std::string, std::set<long>>& comps, const std::string& a, const std::string& b) {
    const auto ia = comps.find(a);
    const auto ib = comps.find(b);
    if (ia == comps.end() || ib == comps.end()) return false;
    for (long l : ia->second) {
        if (ib->second.count(l)) return true;
    }
    return false;
}

}  // namespace

std::vector<RoomPairVerdict> connectivity_verdicts(const FloorPlan& plan, const CheckConfig& cfg) {
    if (!(cfg.grid > 0.0)) throw PlanError(ErrorCode::ConfigError, "grid spacing must be > 0");
    // Door graph over region names.
    std::map<std::string, std::size_t> index;
    std::vector<std::pair<std::string, std::string>> edges;
    for (const Opening& o : plan.openings) {
        if (o.kind != OpeningKind::door || !o.host_wall || o.connects.size() != 2) continue;
        if (o.connects[0] == o.connects[1]) continue;
        for (const std::string& r : o.connects) index.emplace(r, 0);
        edges.emplace_back(o.connects[0], o.connects[1]);
    }
    std::vector<std::string> names;
    for (auto& [name, i] : index) {
        i = names.size();
        names.push_back(name);
    }
    std::vector<std::size_t> group(names.size());
    for (std::size_t i = 0; i < group.size(); ++i) group[i] = i;
    auto find = [&](std::size_t v) {
        while (group[v] != v) v = group[v] = group[group[v]];
        return v;
    };
    for (const auto& [a, b] : edges) group[find(index[a])] = find(index[b]);

    std::vector<RoomPairVerdict> verdicts;
    if (names.size() < 2) return verdicts;

    const Circulation c = build_circulation(plan, cfg);
    const std::vector<bool>& base_keep = c.free;
    std::vector<bool> wide_keep(c.nodes.size());
    for (std::size_t n = 0; n < c.nodes.size(); ++n) {
        wide_keep[n] = c.free[n] && c.clearance[n] >= cfg.clearance_delta / 2.0 - kEpsilon;
    }
    const auto base_comps = region_components(c, base_keep, label_components(c, base_keep));
    const auto wide_comps = region_components(c, wide_keep, label_components(c, wide_keep));

    for (std::size_t i = 0; i < names.size(); ++i) {
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            if (find(i) != find(j)) continue;
            RoomPairVerdict v{names[i], names[j], false, false};
            v.connected = share_component(base_comps, names[i], names[j]);
            v.wide = v.connected && share_component(wide_comps, names[i], names[j]);
            verdicts.push_back(v);
        }
    }
    return verdicts;
}

std::vector<Finding> check_connectivity(const FloorPlan& plan, const CheckConfig& cfg) {
    std::vector<Finding> findings;
    for (const RoomPairVerdict& v : connectivity_verdicts(plan, cfg)) {
        const std::string subject = v.first + "<->" + v.second;
        if (!v.connected) {
            findings.push_back({Severity::error, "PATH_BLOCKED", subject,
                                "no free path between " + v.first + " and " + v.second,
                                "move furniture off the circulation route"});
        } else if (!v.wide) {
            findings.push_back({Severity::warning, "PATH_NARROW", subject,
                                "every path between " + v.first + " and " + v.second + " is narrower than " +
                                    format_number(cfg.clearance_delta) + " ft",
                                "widen the circulation route"});
        }
    }
    return findings;
}

CheckReport run_all_checks(const FloorPlan& plan, const RoomRequirements& requirements, const CheckConfig& cfg) {
    CheckReport report;
    for (auto&& part : {check_room_contents(plan, requirements), check_openings(plan), check_connectivity(plan, cfg)}) {
        report.findings.insert(report.findings.end(), part.begin(), part.end());
    }
    std::stable_sort(report.findings.begin(), report.findings.end(), [](const Finding& a, const Finding& b) {
        return std::tie(a.code, a.subject) < std::tie(b.code, b.subject);
    });
    return report;
}

std::string report_text(const CheckReport& report) {
    std::ostringstream out;
    for (const Finding& f : report.findings) {
        out << severity_name(f.severity) << " " << f.code << " [" << f.subject << "] " << f.message;
        if (!f.suggested_action.empty()) out << " (" << f.suggested_action << ")";
        out << "\n";
    }
    out << report.count(Severity::error) << " error(s), " << report.count(Severity::warning) << " warning(s), "
        << report.count(Severity::info) << " info\n";
    return out.str();
}

std::string report_structured(const CheckReport& report) {
    Json doc;
    doc["findings"] = Json::array();
    for (const Finding& f : report.findings) {
        doc["findings"].push_back({{"severity", severity_name(f.severity)},
                                   {"code", f.code},
                                   {"subject", f.subject},
                                   {"message", f.message},
                                   {"suggested_action", f.suggested_action}});
    }
    doc["summary"] = {{"errors", report.count(Severity::error)},
                      {"warnings", report.count(Severity::warning)},
                      {"info", report.count(Severity::info)}};
    doc["exit_code"] = report.exit_code();
    return doc.dump(2) + "\n";
}

}  // namespace floorplan
