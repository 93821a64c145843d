#include <gtest/gtest.h>

#include <regex>

#include "floorplan/errors.hpp"
#include "floorplan/refiner.hpp"
#include "floorplan/render.hpp"
#include "support.hpp"

using namespace floorplan;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
    return n;
}

// Tags open and close in order; attributes are quoted.
bool balanced_tags(const std::string& svg) {
    std::vector<std::string> stack;
    const std::regex tag(R"(<(/?)([a-zA-Z]+)((?:\s+[a-zA-Z-]+="[^"]*")*)\s*(/?)>)");
    std::size_t covered = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), tag); it != std::sregex_iterator(); ++it) {
        const std::smatch& m = *it;
        covered += static_cast<std::size_t>(m.length());
        if (m[1] == "/") {
            if (stack.empty() || stack.back() != m[2]) return false;
            stack.pop_back();
        } else if (m[4] != "/") {
            stack.push_back(m[2]);
        }
    }
    return stack.empty() && covered > 0 && count_of(svg, "<") == count_of(svg, ">");
}

}  // namespace

TEST(Svg, CaseWallsDrawing) {
    const FloorPlan plan = parse_plan(read_file(data_path("case_walls.json")));
    const std::string svg = render_svg(plan);
    EXPECT_NE(svg.find(R"(viewBox="0 0 300 400")"), std::string::npos);
    EXPECT_EQ(count_of(svg, R"(<line class="wall")"), 8u);
    EXPECT_TRUE(balanced_tags(svg));
    EXPECT_EQ(svg, render_svg(plan));
    // Wall 0 runs along y = 0, which is the bottom of the picture.
    EXPECT_NE(svg.find(R"(x1="0" y1="400" x2="300" y2="400")"), std::string::npos);
}

TEST(Svg, RefinedCaseStudyWithOverlay) {
    const RefineResult refined = refine_plan(load_fixture("corpus/case_study.json"), RefinerConfig{});
    SvgStyle style;
    style.traces = &refined.traces;
    const std::string svg = render_svg(refined.plan, style);
    EXPECT_EQ(count_of(svg, R"(class="furniture")"), 8u);
    EXPECT_EQ(count_of(svg, R"(class="label")"), 8u);
    EXPECT_EQ(count_of(svg, R"(class="final")"), 8u);
    EXPECT_TRUE(balanced_tags(svg));
    style.labels = false;
    EXPECT_EQ(count_of(render_svg(refined.plan, style), R"(class="label")"), 0u);
}

TEST(Svg, EmptyPlanStillRenders) {
    FloorPlan plan;
    plan.extent = {{0, 0}, {1, 1}};
    const std::string svg = render_svg(plan);
    EXPECT_TRUE(balanced_tags(svg));
    EXPECT_EQ(count_of(svg, "<line"), 0u);
}

TEST(BimScripts, WallCoordinatesRoundTrip) {
    const FloorPlan plan = parse_plan(read_file(data_path("case_walls.json")));
    const std::string script = export_walls_script(plan);
    EXPECT_EQ(count_of(script, "Wall.Create("), 8u);
    EXPECT_EQ(count_of(script, "Transaction("), 1u);
    const std::regex bound(R"(Line\.CreateBound\(XYZ\(([-0-9.e]+), ([-0-9.e]+), ([-0-9.e]+)\), XYZ\(([-0-9.e]+), ([-0-9.e]+), ([-0-9.e]+)\)\))");
    std::size_t i = 0;
    for (auto it = std::sregex_iterator(script.begin(), script.end(), bound); it != std::sregex_iterator(); ++it, ++i) {
        ASSERT_LT(i, plan.walls.size());
        const Segment2& s = plan.walls[i].centerline;
        EXPECT_EQ(std::stod((*it)[1]), s.start.x);
        EXPECT_EQ(std::stod((*it)[2]), s.start.y);
        EXPECT_EQ(std::stod((*it)[3]), 0.0);
        EXPECT_EQ(std::stod((*it)[4]), s.end.x);
        EXPECT_EQ(std::stod((*it)[5]), s.end.y);
    }
    EXPECT_EQ(i, 8u);
}

TEST(BimScripts, OpeningsAndFurniture) {
    const FloorPlan plan = refine_plan(load_fixture("corpus/case_study.json"), RefinerConfig{}).plan;
    const BimScripts scripts = export_bim_scripts(plan);
    std::size_t doors = 0, windows = 0;
    for (const Opening& o : plan.openings) (o.kind == OpeningKind::door ? doors : windows)++;
    EXPECT_EQ(count_of(scripts.openings, "NewFamilyInstance("), doors + windows);
    EXPECT_EQ(count_of(scripts.openings, "doorType, host_wall"), doors);
    EXPECT_EQ(count_of(scripts.openings, "windowType, host_wall"), windows);
    EXPECT_EQ(count_of(scripts.furniture, "NewFamilyInstance("), plan.furniture.size());
    EXPECT_NE(scripts.furniture.find("family_symbol(\"Wardrobe\")"), std::string::npos);
    EXPECT_EQ(scripts.walls, export_walls_script(plan));
}

TEST(BimScripts, UnhostedOpeningIsUnsupported) {
    const FloorPlan plan = load_fixture("openings/04_orphan_door_mid_room.json");
    try {
        export_openings_script(plan);
        FAIL();
    } catch (const PlanError& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedElement);
    }
}

TEST(BimScripts, EmptyPlanGivesEmptyTransaction) {
    const std::string script = export_walls_script(FloorPlan{});
    EXPECT_EQ(count_of(script, "Wall.Create("), 0u);
    EXPECT_EQ(count_of(script, "Transaction("), 1u);
}
