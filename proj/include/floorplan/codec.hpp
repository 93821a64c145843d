#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "floorplan/plan.hpp"
#include "floorplan/refiner.hpp"

namespace floorplan {

struct ParseOptions {
    // Site rectangle. When absent it is the bounding box of the walls.
    std::optional<AlignedBox> extent;
};

// Reads the plan schema: top-level "walls", "doors", "windows" and
// "Furniture" (or "furniture"). Coordinates are [x, y, 0] triples.
FloorPlan parse_plan(std::string_view text, const ParseOptions& options = {});

// Canonical text: keys in schema order, coordinates as [x, y, 0], numbers in
// minimal decimal form with at most four fractional digits. Furniture is
// written at its refined position when one exists.
std::string emit_plan(const FloorPlan& plan);

// Returns the first balanced top-level JSON object in a raw model response,
// dropping surrounding prose and code fences.
std::string sanitize_llm_response(std::string_view raw);

std::string format_number(double value);

FurnitureCatalog parse_catalog(std::string_view text);
std::string emit_catalog(const FurnitureCatalog& catalog);

// One record per item with every candidate centre and its verdicts.
std::string emit_traces(const std::vector<PlacementTrace>& traces);

}  // namespace floorplan
