#pragma once

#include <string>
#include <vector>

#include "floorplan/plan.hpp"
#include "floorplan/refiner.hpp"

namespace floorplan {

struct SvgStyle {
    double scale = 10.0;  // pixels per foot
    bool labels = true;
    // Step dots for each candidate a placement trace visited.
    const std::vector<PlacementTrace>* traces = nullptr;
};

// y grows upward in plan space and downward in the drawing; the viewBox is
// the site extent scaled.
std::string render_svg(const FloorPlan& plan, const SvgStyle& style = {});

struct BimScripts {
    std::string walls;
    std::string openings;
    std::string furniture;
};

// Revit Python Shell programs. Each is a complete script with one
// transaction; the walls script creates walls only.
std::string export_walls_script(const FloorPlan& plan);
// Throws PlanError(UnsupportedElement) for an opening no wall contains.
std::string export_openings_script(const FloorPlan& plan);
std::string export_furniture_script(const FloorPlan& plan);
BimScripts export_bim_scripts(const FloorPlan& plan);

}  // namespace floorplan
