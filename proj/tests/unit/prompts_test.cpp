#include <gtest/gtest.h>

#include <sstream>

#include "floorplan/errors.hpp"
#include "floorplan/prompts.hpp"
#include "support.hpp"

using namespace floorplan;

namespace {

// Collapses every whitespace run to one space and trims the ends.
std::string squash(const std::string& text) {
    std::istringstream in(text);
    std::string word, out;
    while (in >> word) out += (out.empty() ? "" : " ") + word;
    return out;
}

}  // namespace

TEST(LayoutPrompt, CaseStudyMatchesReferenceText) {
    EXPECT_EQ(squash(build_layout_prompt(LayoutBrief::case_study())), squash(read_file(data_path("layout_prompt.txt"))));
    EXPECT_EQ(build_layout_prompt(parse_brief(read_file(data_path("brief_case_study.json")))),
              build_layout_prompt(LayoutBrief::case_study()));
}

TEST(LayoutPrompt, DirectivesAddRulesBeforeTheNote) {
    LayoutBrief brief = LayoutBrief::case_study();
    const std::string plain = build_layout_prompt(brief);
    brief.directives = true;
    const std::string ruled = build_layout_prompt(brief);
    const std::size_t rules = ruled.find("Additional rules:");
    ASSERT_NE(rules, std::string::npos);
    EXPECT_LT(rules, ruled.rfind("Note"));
    EXPECT_EQ(plain.find("Additional rules:"), std::string::npos);
}

TEST(LayoutPrompt, SingleRoomAndLists) {
    LayoutBrief brief;
    brief.width = 12;
    brief.length = 10.5;
    brief.rooms = {{"Studio", ""}};
    brief.furniture = {{"Studio", {"Bed"}}};
    const std::string prompt = build_layout_prompt(brief);
    EXPECT_NE(prompt.find("12"), std::string::npos);
    EXPECT_NE(prompt.find("10.5"), std::string::npos);
    EXPECT_NE(prompt.find("Studio"), std::string::npos);
    EXPECT_NE(prompt.find("the following room: Studio. The AI should decide the placement and dimensions of this room."), std::string::npos);
    brief.rooms = {{"A", ""}, {"B", ""}, {"C", ""}};
    EXPECT_NE(build_layout_prompt(brief).find("A, B, and C"), std::string::npos);
}

TEST(LayoutPrompt, EmptyBriefs) {
    LayoutBrief brief = LayoutBrief::case_study();
    brief.rooms.clear();
    EXPECT_THROW(build_layout_prompt(brief), PlanError);
    brief = LayoutBrief::case_study();
    brief.width = 0;
    try {
        build_layout_prompt(brief);
        FAIL();
    } catch (const PlanError& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyBrief);
    }
}

TEST(ParseBrief, SchemaErrors) {
    EXPECT_THROW(parse_brief("{"), PlanError);
    EXPECT_THROW(parse_brief(R"({"width": "30", "length": 40})"), PlanError);
    EXPECT_THROW(parse_brief(R"({"width": 30, "length": 40, "rooms": [{"suffix": "x"}]})"), PlanError);
}

TEST(ScriptPrompt, WallsMatchesReferenceText) {
    EXPECT_EQ(squash(build_script_prompt(ElementClass::walls)), squash(read_file(data_path("walls_script_prompt.txt"))));
    for (ElementClass e : {ElementClass::doors, ElementClass::windows, ElementClass::furniture}) {
        const std::string prompt = build_script_prompt(e);
        EXPECT_NE(prompt, build_script_prompt(ElementClass::walls));
        EXPECT_FALSE(prompt.empty()) << element_class_name(e);
    }
}
