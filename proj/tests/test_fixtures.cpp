#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "twin/render.hpp"
#include "twin/suite.hpp"

using namespace twin;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = TWIN_SOURCE_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::u32string decode(const std::string& s) {
    std::u32string out;
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        int len = c < 0x80 ? 1 : c < 0xE0 ? 2 : c < 0xF0 ? 3 : 4;
        char32_t cp = len == 1 ? c : c & (0x3F >> (len - 1));
        for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += static_cast<std::size_t>(len);
    }
    return out;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

// mod kA3 drawn as a triangle: bottom row the simples, [1,1] at cell (4,3)
json mini_fixture() {
    return json::parse(R"({
      "name": "mini",
      "backend": {"kind": "interval_algebra", "algebra": "type_a", "n": 3},
      "grid": {"layout": "interval", "rows": 3, "anchor": {"cell": [4, 3], "coords": [1, 1]}},
      "subcats": {
        "Dots": {"glyph": "•", "cells": [[4, 3], [3, 2]]},
        "Stars": {"glyph": "★", "cells": [[3, 2]]},
        "All": {"all": true},
        "P": {"projectives": true}
      },
      "assertions": [
        {"id": "p_in_all", "check": "subset", "args": ["P", "All"]},
        {"id": "dots_in_p", "check": "subset", "args": ["Dots", "P"]}
      ],
      "figures": [
        {"name": "mini_a", "columns": {"1": [2, 2], "2": [1, 3], "3": [0, 4]},
         "overlays": [["Dots", "•"], ["Stars", "★"]]},
        {"name": "mini_b", "columns": {"1": [2, 2], "2": [1, 3], "3": [0, 4]},
         "overlays": [["Stars", "★"], ["Dots", "•"]]}
      ]
    })");
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(TWINCOT_BIN) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Grid, CellCoordinatesRoundTrip) {
    Fixture a4 = load_fixture((kRoot / "fixtures/a4.json").string());
    Fixture lam = load_fixture((kRoot / "fixtures/lambda.json").string());
    EXPECT_EQ(cell_coords(a4.grid, {14, 1}), (std::array<int, 2>{7, 1}));
    EXPECT_EQ(cell_coords(lam.grid, {10, 2}), (std::array<int, 2>{0, 1}));
    EXPECT_FALSE(cell_coords(a4.grid, {14, 2}));
    for (const Fixture* fx : {&a4, &lam})
        for (int r = 1; r <= fx->grid.rows; ++r)
            for (int c = -20; c <= 40; ++c) {
                auto co = cell_coords(fx->grid, {c, r});
                if (!co) continue;
                EXPECT_EQ(coords_cell(fx->grid, *co), (Cell{c, r}));
            }
}

TEST(Fixture, ParseErrorsCarryLocations) {
    try {
        parse_fixture("{\n  \"name\": ,\n}", "broken.json");
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.where.rfind("broken.json:2:", 0), 0u) << e.where;
    }
    json j = mini_fixture();
    j.erase("backend");
    EXPECT_THROW(parse_fixture(j.dump()), ConfigError);
    j = mini_fixture();
    j["assertions"][0]["check"] = "no_such_check";
    try {
        parse_fixture(j.dump());
        FAIL() << "no error";
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.where, "/assertions/0/check");
    }
    j = mini_fixture();
    j["subcats"]["Stars"]["glyph"] = "•";
    EXPECT_THROW(parse_fixture(j.dump()), ConfigError);
    j = mini_fixture();
    j["subcats"]["Bad"] = {{"union", {"Dots", "Nowhere"}}};
    EXPECT_THROW(parse_fixture(j.dump()), ConfigError);
}

TEST(Fixture, GlyphStacking) {
    const auto& order = glyph_order();
    for (std::size_t i = 0; i < order.size(); ++i) EXPECT_EQ(glyph_rank(order[i]), static_cast<int>(i));
    EXPECT_LT(glyph_rank("•"), glyph_rank("★"));
    EXPECT_EQ(glyph_rank("x"), -1);

    Fixture fx = parse_fixture(mini_fixture().dump());
    World w(fx);
    for (const auto& f : fx.figures) {
        auto rows = lines(render_text(w, f));
        ASSERT_GE(rows.size(), 5u);
        auto mid = decode(rows[2]), bottom = decode(rows[4]);
        ASSERT_GT(mid.size(), 6u);
        EXPECT_EQ(mid[6], U'★') << f.name;
        EXPECT_EQ(bottom[8], U'•') << f.name;
        EXPECT_EQ(bottom[0], U'○') << f.name;
    }
}

TEST(Fixture, MiniSuiteVerdicts) {
    Fixture fx = parse_fixture(mini_fixture().dump());
    World w(fx);
    auto empty = run_suite(w, SuiteOptions{std::vector<std::string>{}, ""});
    EXPECT_EQ(empty.exit_code, exit_pass);
    EXPECT_TRUE(empty.report["assertions"].empty());

    auto r = run_suite(w, SuiteOptions{std::vector<std::string>{"subset"}, ""});
    std::map<std::string, std::string> verdict;
    for (const auto& row : r.report["assertions"]) verdict[row["id"]] = row["verdict"];
    // nothing is expected, so the values are reported but not judged
    EXPECT_EQ(verdict["p_in_all"], "unchecked");
    EXPECT_EQ(verdict["dots_in_p"], "unchecked");

    json j = mini_fixture();
    j["expected"] = {{"p_in_all", true}, {"dots_in_p", true}};
    Fixture fx2 = parse_fixture(j.dump());
    World w2(fx2);
    auto r2 = run_suite(w2, SuiteOptions{std::vector<std::string>{"subset"}, ""});
    EXPECT_EQ(r2.exit_code, exit_fail);
}

class FixtureFiles : public ::testing::TestWithParam<std::string> {
protected:
    Fixture load() const { return load_fixture((kRoot / "fixtures" / (GetParam() + ".json")).string()); }
};

TEST_P(FixtureFiles, FiguresMatchGoldens) {
    Fixture fx = load();
    World w(fx);
    ASSERT_FALSE(fx.figures.empty());
    for (const auto& f : fx.figures) EXPECT_EQ(render_text(w, f), slurp(kRoot / "golden" / f.golden)) << f.name;
}

TEST_P(FixtureFiles, ReportsAreDeterministic) {
    Fixture fx = load();
    std::vector<std::string> suites = GetParam() == "a4" ? std::vector<std::string>{"perps", "hovey", "figures"}
                                                         : std::vector<std::string>{"thick", "G", "figures"};
    World a(fx, {}, Exec::parallel), b(fx, {}, Exec::parallel), c(fx, {}, Exec::serial);
    auto ra = run_suite(a, {suites, ""}), rb = run_suite(b, {suites, ""}), rc = run_suite(c, {suites, ""});
    EXPECT_EQ(ra.report.dump(2), rb.report.dump(2));
    EXPECT_EQ(ra.report.dump(2), rc.report.dump(2));
    EXPECT_EQ(ra.exit_code, exit_pass);
    for (const auto& f : fx.figures) EXPECT_EQ(render_svg(a, f), render_svg(c, f));
}

TEST_P(FixtureFiles, PatchIsIdempotent) {
    Fixture fx = load();
    std::vector<std::string> suites{GetParam() == "a4" ? "perps" : "G"};
    World w(fx);
    auto r = run_suite(w, {suites, ""});
    json patched = patch_expected(fx, r.report);
    EXPECT_EQ(patched["expected"], fx.raw["expected"]);
    Fixture again = parse_fixture(patched.dump());
    World w2(again);
    auto r2 = run_suite(w2, {suites, ""});
    EXPECT_EQ(r2.report.dump(), r.report.dump());
    EXPECT_EQ(patch_expected(again, r2.report).dump(), patched.dump());
}

TEST_P(FixtureFiles, CorruptedMarkersFail) {
    json j = load().raw;
    std::string set = GetParam() == "a4" ? "V" : "Club";
    auto& cells = j["subcats"][set]["cells"];
    ASSERT_TRUE(cells.is_array() && !cells.empty());
    cells.erase(cells.begin());
    Fixture fx = parse_fixture(j.dump());
    World w(fx);
    auto r = run_suite(w, {std::vector<std::string>{GetParam() == "a4" ? "perps" : "G"}, ""});
    EXPECT_EQ(r.exit_code, exit_fail);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, FixtureFiles, ::testing::Values("a4", "lambda"));

TEST(Cli, ExitCodes) {
    std::string lam = (kRoot / "fixtures/lambda.json").string();
    EXPECT_EQ(run_cli("check " + lam + " --suite G"), 0);
    EXPECT_EQ(run_cli("check " + lam + " --suite ''"), 0);
    EXPECT_EQ(run_cli("check " + lam + " --window 3"), 3);
    EXPECT_EQ(run_cli("check /nonexistent.json"), 3);
    EXPECT_EQ(run_cli("render " + lam + " --figure nope"), 3);
    EXPECT_EQ(run_cli("frobnicate"), 3);
}

TEST(Cli, WindowOverrideKeepsFixtureMeaning) {
    Fixture fx = load_fixture((kRoot / "fixtures/lambda.json").string());
    Overrides ov;
    ov.window = std::array<int, 2>{-8, 8};
    World small(fx, ov), big(fx);
    EXPECT_LT(small.window().size(), big.window().size());
    for (const char* name : {"Spade", "Club", "S"}) {
        auto in_small = small.set(name).ids;
        for (int id : in_small) {
            if (!small.cat().indec(id).core) continue;
            auto co = small.cat().indec(id).coords;
            auto other = big.cat().find(co[0], co[1]);
            ASSERT_TRUE(other);
            EXPECT_TRUE(big.set(name).has(*other)) << name << " " << small.cat().indec(id).label;
        }
    }
}
