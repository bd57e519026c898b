#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "twin/cotorsion.hpp"
#include "twin/quotient.hpp"
#include "twin/subcat.hpp"

namespace twin {

using json = nlohmann::ordered_json;

// Bad fixture or bad override. `where` is a JSON pointer or "line:col".
struct ConfigError : std::runtime_error {
    ConfigError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where(where) {}
    std::string where;
};

// Figure cells are (column, row) of the drawn grid: row 1 is the top row and columns count the
// cells of a row from the left edge starting at 0, so vertices of adjacent rows sit in columns
// of opposite parity. The anchor pins one cell to backend coordinates; every other cell follows.
struct Cell {
    int c = 0, r = 0;
    auto operator<=>(const Cell&) const = default;
};

struct Grid {
    enum class Layout { mesh, interval };
    Layout layout = Layout::mesh;
    int rows = 0;
    Cell anchor;
    std::array<int, 2> anchor_coords{};
};

// Backend coordinates of a cell, nullopt when the parity is wrong.
std::optional<std::array<int, 2>> cell_coords(const Grid& g, Cell cell);
// inverse; nullopt when the coordinates are not on any row of the grid
std::optional<Cell> coords_cell(const Grid& g, std::array<int, 2> coords);

// How a transcribed marker set extends past the drawn columns.
struct Continuation {
    bool left = false, right = false;   // per row, repeat the outermost drawn cell's mark
    int period = 0;                     // translate the marks by multiples of this many columns
};

struct SubcatSpec {
    std::string name;
    std::string glyph;              // empty for computed sets without a marker
    std::string kind;               // cells, union, intersect, minus, all, projectives, injectives,
                                    // perp_right, perp_left, closure, s_left, s_right, g_nonzero
    std::vector<Cell> cells;
    Continuation cont;
    std::vector<std::string> args;
    std::string mode;               // closure mode
};

struct FigureSpec {
    std::string name;
    std::map<int, std::array<int, 2>> columns;   // row -> drawn column range
    std::vector<Cell> dots;
    std::vector<std::pair<std::string, std::string>> overlays;   // set, glyph
    std::vector<std::string> iso;   // two set names: arrows between partners are marked ≃
    std::string golden;
};

struct AssertionSpec {
    std::string id, suite, check;
    std::vector<std::string> args;
};

struct Fixture {
    std::string name;
    std::string path;
    json backend;
    Grid grid;
    std::vector<SubcatSpec> subcats;
    std::map<std::string, std::string> twin;   // X, V, U, Y -> set names
    std::vector<AssertionSpec> assertions;
    std::vector<FigureSpec> figures;
    json expected = json::object();
    json raw;

    const SubcatSpec* find(const std::string& name) const;
    // drawn columns of a row over all figures
    std::optional<std::array<int, 2>> drawn_columns(int row) const;
};

Fixture parse_fixture(const std::string& text, const std::string& path = "<string>");
Fixture load_fixture(const std::string& path);

// the glyphs in stacking order; a vertex in several overlays shows the last one
const std::vector<std::string>& glyph_order();
int glyph_rank(const std::string& g);   // -1 when unknown

struct Overrides {
    std::optional<std::array<int, 2>> window;
    std::optional<int> core_margin;
    int budget = 3;
};

// A fixture instantiated on a concrete window, with named sets resolved lazily.
class World {
public:
    World(const Fixture& fx, Overrides ov = {}, Exec ex = Exec::parallel);

    const Fixture& fixture() const { return fx_; }
    const Category& cat() const { return *cat_; }
    const json& backend() const { return backend_; }
    const std::vector<int>& core() const { return core_; }
    const std::vector<int>& window() const { return window_; }
    Budget budget() const { return budget_; }
    Exec exec() const { return ex_; }

    std::optional<int> at(Cell cell) const;
    std::optional<Cell> cell_of(int id) const;

    const Subcat& set(const std::string& name);
    const TwinCertificate& twin();
    const GFunctor& g();
    bool has_g() const { return g_ != nullptr; }

    // the same fixture on a window one step larger with the same core
    json enlarged_backend() const;

private:
    Subcat resolve(const SubcatSpec& s);
    Subcat transcribed(const SubcatSpec& s) const;

    const Fixture& fx_;
    json backend_;
    std::unique_ptr<Category> cat_;
    std::vector<int> core_, window_;
    Budget budget_;
    Exec ex_;
    std::map<std::string, Subcat> sets_;
    std::vector<std::string> resolving_;
    std::unique_ptr<TwinCertificate> twin_;
    std::unique_ptr<GFunctor> g_;
};

std::unique_ptr<Category> make_category(const json& backend);

}  // namespace twin
