#include "floorplan/topology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "floorplan/errors.hpp"

namespace floorplan {

namespace {

std::vector<double> unique_sorted(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    for (double v : values) {
        if (out.empty() || v - out.back() > kEpsilon) out.push_back(v);
    }
    return out;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

// Axis-aligned arrangement: the distinct wall coordinates cut the extent
// into cells; a unit edge between neighbouring cells is blocked when a wall
// covers it.
struct Arrangement {
    std::vector<double> xs;
    std::vector<double> ys;
    std::size_t nx = 0;
    std::size_t ny = 0;
    // Walls covering the vertical edge x = xs[i], y in [ys[j], ys[j+1]]; index i * ny + j.
    std::vector<std::vector<WallId>> vertical;
    // Walls covering the horizontal edge y = ys[j], x in [xs[i], xs[i+1]]; index j * nx + i.
    std::vector<std::vector<WallId>> horizontal;

    std::size_t cell(std::size_t i, std::size_t j) const { return j * nx + i; }
    const std::vector<WallId>& vertical_at(std::size_t i, std::size_t j) const { return vertical[i * ny + j]; }
    const std::vector<WallId>& horizontal_at(std::size_t i, std::size_t j) const { return horizontal[j * nx + i]; }
};

Arrangement build_arrangement(const FloorPlan& plan) {
    Arrangement a;
    std::vector<double> xs{plan.extent.min_corner.x, plan.extent.max_corner.x};
    std::vector<double> ys{plan.extent.min_corner.y, plan.extent.max_corner.y};
    for (const Wall& w : plan.walls) {
        xs.push_back(w.centerline.start.x);
        xs.push_back(w.centerline.end.x);
        ys.push_back(w.centerline.start.y);
        ys.push_back(w.centerline.end.y);
    }
    a.xs = unique_sorted(xs);
    a.ys = unique_sorted(ys);
    if (a.xs.size() < 2 || a.ys.size() < 2) {
        throw PlanError(ErrorCode::OpenEnvelope, "walls do not enclose a positive area");
    }
    a.nx = a.xs.size() - 1;
    a.ny = a.ys.size() - 1;
    a.vertical.assign((a.nx + 1) * a.ny, {});
    a.horizontal.assign(a.nx * (a.ny + 1), {});

    for (const Wall& w : plan.walls) {
        const Segment2& s = w.centerline;
        if (s.is_vertical()) {
            const double lo = std::min(s.start.y, s.end.y);
            const double hi = std::max(s.start.y, s.end.y);
            for (std::size_t i = 0; i <= a.nx; ++i) {
                if (std::abs(a.xs[i] - s.start.x) > kEpsilon) continue;
                for (std::size_t j = 0; j < a.ny; ++j) {
                    const double mid = (a.ys[j] + a.ys[j + 1]) / 2.0;
                    if (mid > lo && mid < hi) a.vertical[i * a.ny + j].push_back(w.id);
                }
            }
        } else {
            const double lo = std::min(s.start.x, s.end.x);
            const double hi = std::max(s.start.x, s.end.x);
            for (std::size_t j = 0; j <= a.ny; ++j) {
                if (std::abs(a.ys[j] - s.start.y) > kEpsilon) continue;
                for (std::size_t i = 0; i < a.nx; ++i) {
                    const double mid = (a.xs[i] + a.xs[i + 1]) / 2.0;
                    if (mid > lo && mid < hi) a.horizontal[j * a.nx + i].push_back(w.id);
                }
            }
        }
    }
    return a;
}

void require_closed_envelope(const Arrangement& a) {
    for (std::size_t j = 0; j < a.ny; ++j) {
        if (a.vertical_at(0, j).empty() || a.vertical_at(a.nx, j).empty()) {
            throw PlanError(ErrorCode::OpenEnvelope, "exterior walls leave a gap on a vertical side near y=" +
                                                         std::to_string(a.ys[j]));
        }
    }
    for (std::size_t i = 0; i < a.nx; ++i) {
        if (a.horizontal_at(i, 0).empty() || a.horizontal_at(i, a.ny).empty()) {
            throw PlanError(ErrorCode::OpenEnvelope, "exterior walls leave a gap on a horizontal side near x=" +
                                                         std::to_string(a.xs[i]));
        }
    }
}

struct GridVertex {
    std::size_t i;
    std::size_t j;
    friend auto operator<=>(const GridVertex&, const GridVertex&) = default;
};

// Traces the counterclockwise outline of one face from its directed boundary edges.
Polygon2 trace_outline(const Arrangement& a, const std::map<GridVertex, std::vector<GridVertex>>& outgoing,
                       std::size_t edge_count) {
    for (const auto& [from, targets] : outgoing) {
        if (targets.size() != 1) throw PlanError(ErrorCode::NonSimpleFace, "face boundary touches itself");
    }
    std::vector<GridVertex> loop;
    const GridVertex start = outgoing.begin()->first;  // lowest row, then leftmost
    GridVertex at = start;
    do {
        loop.push_back(at);
        at = outgoing.at(at).front();
    } while (!(at == start) && loop.size() <= edge_count);
    if (loop.size() != edge_count) throw PlanError(ErrorCode::NonSimpleFace, "face has a hole");

    Polygon2 polygon;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; ++k) {
        const GridVertex& prev = loop[(k + n - 1) % n];
        const GridVertex& cur = loop[k];
        const GridVertex& next = loop[(k + 1) % n];
        const bool straight = (prev.i == cur.i && cur.i == next.i) || (prev.j == cur.j && cur.j == next.j);
        if (!straight) polygon.vertices.push_back({a.xs[cur.i], a.ys[cur.j]});
    }
    return polygon;
}

}  // namespace

RoomExtraction extract_rooms(const FloorPlan& plan) {
    if (plan.walls.empty()) throw PlanError(ErrorCode::OpenEnvelope, "plan has no walls");
    const Arrangement a = build_arrangement(plan);
    require_closed_envelope(a);

    DisjointSets sets(a.nx * a.ny);
    for (std::size_t j = 0; j < a.ny; ++j) {
        for (std::size_t i = 0; i < a.nx; ++i) {
            if (i + 1 < a.nx && a.vertical_at(i + 1, j).empty()) sets.unite(a.cell(i, j), a.cell(i + 1, j));
            if (j + 1 < a.ny && a.horizontal_at(i, j + 1).empty()) sets.unite(a.cell(i, j), a.cell(i, j + 1));
        }
    }

    // Faces numbered in row-major order of their first cell.
    std::vector<std::size_t> face_of(a.nx * a.ny);
    std::map<std::size_t, std::size_t> root_to_face;
    for (std::size_t c = 0; c < face_of.size(); ++c) {
        const auto [it, inserted] = root_to_face.emplace(sets.find(c), root_to_face.size());
        face_of[c] = it->second;
    }
    const std::size_t face_count = root_to_face.size();
    constexpr std::size_t kOutside = static_cast<std::size_t>(-1);
    auto face_at = [&](long i, long j) -> std::size_t {
        if (i < 0 || j < 0 || i >= static_cast<long>(a.nx) || j >= static_cast<long>(a.ny)) return kOutside;
        return face_of[a.cell(static_cast<std::size_t>(i), static_cast<std::size_t>(j))];
    };

    std::vector<std::map<GridVertex, std::vector<GridVertex>>> outgoing(face_count);
    std::vector<std::size_t> edge_count(face_count, 0);
    std::vector<std::set<WallId>> bounding(face_count);
    std::set<WallId> separating;

    for (std::size_t j = 0; j < a.ny; ++j) {
        for (std::size_t i = 0; i < a.nx; ++i) {
            const std::size_t f = face_of[a.cell(i, j)];
            const long li = static_cast<long>(i);
            const long lj = static_cast<long>(j);
            struct Side {
                std::size_t neighbour;
                GridVertex from;
                GridVertex to;
                const std::vector<WallId>* walls;
            };
            const Side sides[] = {
                {face_at(li, lj - 1), {i, j}, {i + 1, j}, &a.horizontal_at(i, j)},
                {face_at(li + 1, lj), {i + 1, j}, {i + 1, j + 1}, &a.vertical_at(i + 1, j)},
                {face_at(li, lj + 1), {i + 1, j + 1}, {i, j + 1}, &a.horizontal_at(i, j + 1)},
                {face_at(li - 1, lj), {i, j + 1}, {i, j}, &a.vertical_at(i, j)},
            };
            for (const Side& side : sides) {
                if (side.neighbour == f) continue;
                outgoing[f][side.from].push_back(side.to);
                ++edge_count[f];
                for (WallId id : *side.walls) {
                    bounding[f].insert(id);
                    separating.insert(id);
                }
            }
        }
    }

    RoomExtraction result;
    for (std::size_t f = 0; f < face_count; ++f) {
        RoomRegion room;
        room.boundary = trace_outline(a, outgoing[f], edge_count[f]);
        room.bounding_walls.assign(bounding[f].begin(), bounding[f].end());
        result.rooms.push_back(std::move(room));
    }
    for (const Wall& w : plan.walls) {
        if (!separating.count(w.id)) {
            result.warnings.push_back({"DanglingWall", "wall[" + std::to_string(w.id.value) + "]",
                                       "wall splits no face; kept as an obstacle only"});
        }
    }
    return result;
}

std::optional<std::size_t> room_containing(const FloorPlan& plan, Point2 p) {
    for (std::size_t r = 0; r < plan.rooms.size(); ++r) {
        if (point_strictly_inside(p, plan.rooms[r].boundary)) return r;
    }
    return std::nullopt;
}

RoomNaming name_rooms(std::vector<RoomRegion> rooms, const FloorPlan& plan) {
    RoomNaming naming;
    auto face_of = [&](Point2 p) -> std::optional<std::size_t> {
        for (std::size_t r = 0; r < rooms.size(); ++r) {
            if (point_strictly_inside(p, rooms[r].boundary)) return r;
        }
        return std::nullopt;
    };

    std::vector<std::string> groups = plan.furniture_groups;
    for (const FurnitureInstance& f : plan.furniture) {
        if (std::find(groups.begin(), groups.end(), f.room_name) == groups.end()) groups.push_back(f.room_name);
    }

    std::vector<std::optional<std::string>> claimed(rooms.size());
    std::map<std::string, std::size_t> group_face;
    for (const std::string& group : groups) {
        std::vector<std::size_t> votes(rooms.size(), 0);
        std::vector<std::optional<std::size_t>> item_faces;
        for (std::size_t i = 0; i < plan.furniture.size(); ++i) {
            const FurnitureInstance& f = plan.furniture[i];
            if (f.room_name != group) continue;
            const auto face = face_of(f.initial_center);
            item_faces.push_back(face);
            if (face) {
                ++votes[*face];
            } else {
                naming.flags.push_back({"FurnitureOutsideAllRooms", "furniture[" + std::to_string(i) + "]",
                                        f.name + " in " + group + " is centred on a wall or outside every room"});
            }
        }
        const std::size_t best = votes.empty() ? 0 : *std::max_element(votes.begin(), votes.end());
        if (best == 0) continue;
        std::optional<std::size_t> chosen;
        for (const auto& face : item_faces) {
            if (face && votes[*face] == best) {
                chosen = face;
                break;
            }
        }
        if (claimed[*chosen]) {
            throw PlanError(ErrorCode::AmbiguousRoomAssignment,
                            "groups '" + *claimed[*chosen] + "' and '" + group + "' both claim the same room",
                            "/Furniture/" + group);
        }
        claimed[*chosen] = group;
        group_face[group] = *chosen;
    }

    for (std::size_t i = 0; i < plan.furniture.size(); ++i) {
        const FurnitureInstance& f = plan.furniture[i];
        const auto assigned = group_face.find(f.room_name);
        const auto face = face_of(f.initial_center);
        if (face && assigned != group_face.end() && *face != assigned->second) {
            naming.flags.push_back({"FurnitureOutsideAssignedRoom", "furniture[" + std::to_string(i) + "]",
                                    f.name + " is centred outside room " + f.room_name});
        }
    }

    std::set<std::string> used(groups.begin(), groups.end());
    std::size_t counter = 0;
    for (std::size_t r = 0; r < rooms.size(); ++r) {
        if (claimed[r]) {
            rooms[r].name = *claimed[r];
            continue;
        }
        std::string name;
        do {
            name = "room_" + std::to_string(++counter);
        } while (used.count(name));
        used.insert(name);
        rooms[r].name = name;
    }
    naming.rooms = std::move(rooms);
    return naming;
}

FloorPlan host_openings(const FloorPlan& plan) {
    FloorPlan out = plan;
    constexpr double kProbe = 0.01;
    for (Opening& opening : out.openings) {
        opening.host_wall.reset();
        opening.connects.clear();
        for (const Wall& wall : out.walls) {
            const auto overlap = segments_collinear_overlap(opening.span, wall.centerline);
            if (overlap && overlap->length() >= opening.span.length() - kEpsilon) {
                if (!opening.host_wall || wall.id < *opening.host_wall) opening.host_wall = wall.id;
            }
        }
        if (!opening.host_wall) continue;
        const Point2 mid = opening.span.midpoint();
        const Point2 normal = opening.span.is_horizontal() ? Point2{0.0, 1.0} : Point2{1.0, 0.0};
        for (const Point2 probe : {mid - kProbe * normal, mid + kProbe * normal}) {
            const auto room = room_containing(out, probe);
            opening.connects.push_back(room ? out.rooms[*room].name : std::string(kExteriorName));
        }
    }
    return out;
}

TopologyResult build_topology(const FloorPlan& plan) {
    TopologyResult result;
    RoomExtraction extraction = extract_rooms(plan);
    RoomNaming naming = name_rooms(std::move(extraction.rooms), plan);
    FloorPlan named = plan;
    named.rooms = std::move(naming.rooms);
    result.plan = host_openings(named);
    result.diagnostics = std::move(extraction.warnings);
    result.diagnostics.insert(result.diagnostics.end(), naming.flags.begin(), naming.flags.end());
    return result;
}

}  // namespace floorplan
