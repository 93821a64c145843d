#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "floorplan/codec.hpp"
#include "floorplan/topology.hpp"

inline std::string data_path(const std::string& relative) { return std::string(FLOORPLAN_TEST_DATA) + "/" + relative; }

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Parsed, room-named, opening-hosted, catalog-resolved.
inline floorplan::FloorPlan load_fixture(const std::string& relative) {
    using namespace floorplan;
    return resolve_catalog(build_topology(parse_plan(read_file(data_path(relative)))).plan, FurnitureCatalog::defaults());
}
