#include "floorplan/render.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "floorplan/codec.hpp"
#include "floorplan/errors.hpp"

namespace floorplan {

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

class Canvas {
public:
    Canvas(const AlignedBox& extent, double scale) : extent_(extent), scale_(scale) {}

    std::string x(double v) const { return format_number((v - extent_.min_corner.x) * scale_); }
    std::string y(double v) const { return format_number((extent_.max_corner.y - v) * scale_); }
    std::string len(double v) const { return format_number(v * scale_); }

private:
    AlignedBox extent_;
    double scale_;
};

}  // namespace

std::string render_svg(const FloorPlan& plan, const SvgStyle& style) {
    const Canvas canvas(plan.extent, style.scale);
    const std::string w = canvas.len(plan.extent.width());
    const std::string h = canvas.len(plan.extent.height());
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
        << "<style>.wall{stroke:#404040;stroke-width:3;stroke-linecap:square}"
           ".door{stroke:#1f6fd1;stroke-width:5}.window{stroke:#8cc4ff;stroke-width:5}"
           ".furniture{fill:#b39ddb;fill-opacity:0.6;stroke:#5e35b1;stroke-width:1}"
           ".label{font-family:sans-serif;font-size:10px;text-anchor:middle;fill:#222}"
           ".step{fill:#e65100}.final{fill:#2e7d32}</style>\n";

    out << "<g id=\"walls\">\n";
    for (const Wall& wall : plan.walls) {
        const Segment2& s = wall.centerline;
        out << "<line class=\"wall\" data-id=\"" << wall.id.value << "\" x1=\"" << canvas.x(s.start.x) << "\" y1=\""
            << canvas.y(s.start.y) << "\" x2=\"" << canvas.x(s.end.x) << "\" y2=\"" << canvas.y(s.end.y) << "\"/>\n";
    }
    out << "</g>\n<g id=\"openings\">\n";
    for (const Opening& o : plan.openings) {
        const Segment2& s = o.span;
        out << "<line class=\"" << opening_kind_name(o.kind) << "\" data-id=\"" << o.label() << "\" x1=\""
            << canvas.x(s.start.x) << "\" y1=\"" << canvas.y(s.start.y) << "\" x2=\"" << canvas.x(s.end.x)
            << "\" y2=\"" << canvas.y(s.end.y) << "\"/>\n";
    }
    out << "</g>\n<g id=\"furniture\">\n";
    for (const FurnitureInstance& f : plan.furniture) {
        const Point2 c = f.current_center();
        if (f.footprint) {
            const AlignedBox b = footprint_box(f);
            out << "<rect class=\"furniture\" data-room=\"" << xml_escape(f.room_name) << "\" data-facing=\""
                << facing_name(f.facing) << "\" x=\"" << canvas.x(b.min_corner.x) << "\" y=\""
                << canvas.y(b.max_corner.y) << "\" width=\"" << canvas.len(b.width()) << "\" height=\""
                << canvas.len(b.height()) << "\"/>\n";
        } else {
            out << "<circle class=\"furniture\" data-room=\"" << xml_escape(f.room_name) << "\" cx=\"" << canvas.x(c.x)
                << "\" cy=\"" << canvas.y(c.y) << "\" r=\"" << canvas.len(0.5) << "\"/>\n";
        }
        if (style.labels) {
            out << "<text class=\"label\" x=\"" << canvas.x(c.x) << "\" y=\"" << canvas.y(c.y) << "\">"
                << xml_escape(f.name) << "</text>\n";
        }
    }
    out << "</g>\n";
    if (style.traces) {
        out << "<g id=\"traces\">\n";
        for (const PlacementTrace& t : *style.traces) {
            for (std::size_t i = 0; i < t.entries.size(); ++i) {
                const Point2 p = t.entries[i].placement.center;
                const bool last = i + 1 == t.entries.size() && t.outcome == PlacementOutcome::placed;
                out << "<circle class=\"" << (last ? "final" : "step") << "\" data-item=\"" << t.item << "\" cx=\""
                    << canvas.x(p.x) << "\" cy=\"" << canvas.y(p.y) << "\" r=\"" << (last ? "3" : "1.5") << "\"/>\n";
            }
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

constexpr const char* kPreamble =
    "import clr\n"
    "clr.AddReference('RevitAPI')\n"
    "from Autodesk.Revit.DB import *\n"
    "from Autodesk.Revit.DB.Structure import StructuralType\n"
    "\n"
    "doc = __revit__.ActiveUIDocument.Document\n"
    "level = FilteredElementCollector(doc).OfClass(Level).FirstElement()\n";

std::string xyz(Point2 p) { return "XYZ(" + format_number(p.x) + ", " + format_number(p.y) + ", 0)"; }

std::string py_string(std::string_view text) { return nlohmann::json(std::string(text)).dump(); }

bool wall_contains(const Wall& wall, const Segment2& span) {
    const auto shared = segments_collinear_overlap(wall.centerline, span);
    return shared && shared->length() >= span.length() - kEpsilon;
}

}  // namespace

std::string export_walls_script(const FloorPlan& plan) {
    std::ostringstream out;
    out << kPreamble << "wallType = FilteredElementCollector(doc).OfClass(WallType).FirstElement()\n\n"
        << "t = Transaction(doc, \"Create walls\")\n"
        << "t.Start()\n";
    for (const Wall& wall : plan.walls) {
        out << "line = Line.CreateBound(" << xyz(wall.centerline.start) << ", " << xyz(wall.centerline.end) << ")\n"
            << "Wall.Create(doc, line, wallType.Id, level.Id, " << format_number(wall.height) << ", 0, False, False)\n";
    }
    out << "t.Commit()\n";
    return out.str();
}

std::string export_openings_script(const FloorPlan& plan) {
    for (const Opening& o : plan.openings) {
        const bool hosted = std::any_of(plan.walls.begin(), plan.walls.end(),
                                        [&](const Wall& w) { return wall_contains(w, o.span); });
        if (!hosted) {
            throw PlanError(ErrorCode::UnsupportedElement, o.label() + " is not contained in any wall",
                            "/" + std::string(opening_kind_name(o.kind)) + "s/" + std::to_string(o.index));
        }
    }
    std::ostringstream out;
    out << kPreamble
        << "doorType = FilteredElementCollector(doc).OfClass(FamilySymbol).OfCategory(BuiltInCategory.OST_Doors).FirstElement()\n"
        << "windowType = FilteredElementCollector(doc).OfClass(FamilySymbol).OfCategory(BuiltInCategory.OST_Windows).FirstElement()\n"
        << "walls = list(FilteredElementCollector(doc).OfClass(Wall))\n"
        << "\n"
        << "def host_wall(point):\n"
        << "    for wall in walls:\n"
        << "        if wall.Location.Curve.Distance(point) < 1e-6:\n"
        << "            return wall\n"
        << "    raise Exception(\"no wall at \" + str(point))\n"
        << "\n"
        << "t = Transaction(doc, \"Create openings\")\n"
        << "t.Start()\n"
        << "if not doorType.IsActive:\n"
        << "    doorType.Activate()\n"
        << "if not windowType.IsActive:\n"
        << "    windowType.Activate()\n";
    for (const Opening& o : plan.openings) {
        const std::string point = xyz(o.span.midpoint());
        const char* symbol = o.kind == OpeningKind::door ? "doorType" : "windowType";
        out << "doc.Create.NewFamilyInstance(" << point << ", " << symbol << ", host_wall(" << point
            << "), level, StructuralType.NonStructural)\n";
    }
    out << "t.Commit()\n";
    return out.str();
}

std::string export_furniture_script(const FloorPlan& plan) {
    std::ostringstream out;
    out << kPreamble << "\n"
        << "def family_symbol(name):\n"
        << "    for symbol in FilteredElementCollector(doc).OfClass(FamilySymbol):\n"
        << "        if symbol.Family.Name == name:\n"
        << "            if not symbol.IsActive:\n"
        << "                symbol.Activate()\n"
        << "            return symbol\n"
        << "    raise Exception(\"no family named \" + name)\n"
        << "\n"
        << "t = Transaction(doc, \"Place furniture\")\n"
        << "t.Start()\n";
    for (const FurnitureInstance& f : plan.furniture) {
        const Point2 c = f.current_center();
        out << "item = doc.Create.NewFamilyInstance(" << xyz(c) << ", family_symbol(" << py_string(f.name)
            << "), level, StructuralType.NonStructural)\n";
        // Families are authored headboard-north; turn counter-clockwise to the facing.
        const char* angle = nullptr;
        switch (f.facing) {
            case Facing::north: break;
            case Facing::west: angle = "1.5707963268"; break;
            case Facing::south: angle = "3.1415926536"; break;
            case Facing::east: angle = "4.7123889804"; break;
        }
        if (angle) {
            out << "ElementTransformUtils.RotateElement(doc, item.Id, Line.CreateBound(" << xyz(c) << ", XYZ("
                << format_number(c.x) << ", " << format_number(c.y) << ", 1)), " << angle << ")\n";
        }
    }
    out << "t.Commit()\n";
    return out.str();
}

BimScripts export_bim_scripts(const FloorPlan& plan) {
    return {export_walls_script(plan), export_openings_script(plan), export_furniture_script(plan)};
}

}  // namespace floorplan
