#include "twin/fixture.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "twin/derived.hpp"
#include "twin/intervals.hpp"
#include "twin/suite.hpp"

namespace twin {

namespace {

const std::set<std::string> kKinds = {"cells",      "union",     "intersect", "minus",   "all",
                                      "projectives", "injectives", "perp_right", "perp_left", "closure",
                                      "s_left",     "s_right",   "g_nonzero", "twin"};

std::string line_col(const std::string& text, std::size_t byte) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

const json& need(const json& j, const std::string& key, const std::string& at) {
    if (!j.is_object() || !j.contains(key)) throw ConfigError(at, "missing field '" + key + "'");
    return j.at(key);
}

int as_int(const json& j, const std::string& at) {
    if (!j.is_number_integer()) throw ConfigError(at, "expected an integer");
    return j.get<int>();
}

std::string as_str(const json& j, const std::string& at) {
    if (!j.is_string()) throw ConfigError(at, "expected a string");
    return j.get<std::string>();
}

Cell as_cell(const json& j, const std::string& at) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(at, "expected [column, row]");
    return {as_int(j[0], at + "/0"), as_int(j[1], at + "/1")};
}

std::vector<std::string> as_names(const json& j, const std::string& at) {
    std::vector<std::string> out;
    if (j.is_string()) return {j.get<std::string>()};
    if (!j.is_array()) throw ConfigError(at, "expected a set name or a list of names");
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_str(j[i], at + "/" + std::to_string(i)));
    return out;
}

Grid parse_grid(const json& j) {
    Grid g;
    std::string layout = as_str(need(j, "layout", "/grid"), "/grid/layout");
    if (layout == "mesh") g.layout = Grid::Layout::mesh;
    else if (layout == "interval") g.layout = Grid::Layout::interval;
    else throw ConfigError("/grid/layout", "unknown layout '" + layout + "'");
    g.rows = as_int(need(j, "rows", "/grid"), "/grid/rows");
    if (g.rows < 1) throw ConfigError("/grid/rows", "must be positive");
    const json& a = need(j, "anchor", "/grid");
    g.anchor = as_cell(need(a, "cell", "/grid/anchor"), "/grid/anchor/cell");
    Cell co = as_cell(need(a, "coords", "/grid/anchor"), "/grid/anchor/coords");
    g.anchor_coords = {co.c, co.r};
    if (!cell_coords(g, g.anchor)) throw ConfigError("/grid/anchor", "anchor does not sit on the grid");
    return g;
}

SubcatSpec parse_subcat(const std::string& name, const json& j) {
    std::string at = "/subcats/" + name;
    if (!j.is_object()) throw ConfigError(at, "expected an object");
    SubcatSpec s;
    s.name = name;
    if (j.contains("glyph")) {
        s.glyph = as_str(j["glyph"], at + "/glyph");
        if (glyph_rank(s.glyph) < 0) throw ConfigError(at + "/glyph", "unknown glyph '" + s.glyph + "'");
    }
    for (const auto& [k, v] : j.items()) {
        if (k == "glyph" || k == "continue" || k == "mode" || k == "note") continue;
        if (!kKinds.count(k)) throw ConfigError(at + "/" + k, "unknown field");
        if (!s.kind.empty()) throw ConfigError(at, "more than one definition ('" + s.kind + "' and '" + k + "')");
        s.kind = k;
        if (k == "cells") {
            if (!v.is_array()) throw ConfigError(at + "/cells", "expected a list of cells");
            for (std::size_t i = 0; i < v.size(); ++i) s.cells.push_back(as_cell(v[i], at + "/cells/" + std::to_string(i)));
        } else if (k == "all" || k == "projectives" || k == "injectives") {
            if (!v.is_boolean() || !v.get<bool>()) throw ConfigError(at + "/" + k, "expected true");
        } else {
            s.args = as_names(v, at + "/" + k);
        }
    }
    if (s.kind.empty()) throw ConfigError(at, "no definition");
    if (j.contains("continue")) {
        if (s.kind != "cells") throw ConfigError(at + "/continue", "only transcribed cell sets continue");
        const json& c = j["continue"];
        if (c.is_string()) {
            std::string d = c.get<std::string>();
            if (d != "left" && d != "right" && d != "both") throw ConfigError(at + "/continue", "expected left, right or both");
            s.cont.left = d != "right";
            s.cont.right = d != "left";
        } else if (c.is_object() && c.contains("period")) {
            s.cont.period = as_int(c["period"], at + "/continue/period");
            if (s.cont.period <= 0 || s.cont.period % 2) throw ConfigError(at + "/continue/period", "must be positive and even");
        } else {
            throw ConfigError(at + "/continue", "expected left, right, both or {\"period\": n}");
        }
    }
    if (j.contains("mode")) {
        if (s.kind != "closure") throw ConfigError(at + "/mode", "only closures take a mode");
        s.mode = as_str(j["mode"], at + "/mode");
        if (s.mode != "extensions" && s.mode != "cones" && s.mode != "cocones")
            throw ConfigError(at + "/mode", "expected extensions, cones or cocones");
    } else if (s.kind == "closure") {
        s.mode = "extensions";
    }
    std::size_t want = s.kind == "minus" || s.kind == "s_left" || s.kind == "s_right" ? 2
                       : s.kind == "perp_right" || s.kind == "perp_left" || s.kind == "g_nonzero" || s.kind == "twin"
                           ? 1
                           : 0;
    if (want && s.args.size() != want)
        throw ConfigError(at + "/" + s.kind, "expected " + std::to_string(want) + " argument(s)");
    if (s.kind == "twin" && s.args[0] != "Z" && s.args[0] != "W" && s.args[0] != "X" && s.args[0] != "V" &&
        s.args[0] != "U" && s.args[0] != "Y")
        throw ConfigError(at + "/twin", "expected one of X, V, U, Y, Z, W");
    return s;
}

FigureSpec parse_figure(const json& j, const std::string& at) {
    FigureSpec f;
    f.name = as_str(need(j, "name", at), at + "/name");
    if (j.contains("golden")) f.golden = as_str(j["golden"], at + "/golden");
    const json& cols = need(j, "columns", at);
    if (!cols.is_object()) throw ConfigError(at + "/columns", "expected {row: [first, last]}");
    for (const auto& [k, v] : cols.items()) {
        Cell range = as_cell(v, at + "/columns/" + k);
        int row = 0;
        try {
            row = std::stoi(k);
        } catch (...) {
            throw ConfigError(at + "/columns/" + k, "row keys are integers");
        }
        f.columns[row] = {range.c, range.r};
    }
    if (j.contains("dots"))
        for (std::size_t i = 0; i < j["dots"].size(); ++i)
            f.dots.push_back(as_cell(j["dots"][i], at + "/dots/" + std::to_string(i)));
    if (j.contains("overlays")) {
        const json& o = j["overlays"];
        for (std::size_t i = 0; i < o.size(); ++i) {
            std::string ai = at + "/overlays/" + std::to_string(i);
            if (!o[i].is_array() || o[i].size() != 2) throw ConfigError(ai, "expected [set, glyph]");
            std::string g = as_str(o[i][1], ai + "/1");
            if (glyph_rank(g) < 0) throw ConfigError(ai + "/1", "unknown glyph '" + g + "'");
            f.overlays.emplace_back(as_str(o[i][0], ai + "/0"), g);
        }
    }
    if (j.contains("iso")) {
        f.iso = as_names(j["iso"], at + "/iso");
        if (f.iso.size() != 2) throw ConfigError(at + "/iso", "expected two set names");
    }
    return f;
}

}  // namespace

const std::vector<std::string>& glyph_order() {
    static const std::vector<std::string> order = {"○", "•", "♣", "♠", "♥", "✠", "★", "♦"};
    return order;
}

int glyph_rank(const std::string& g) {
    const auto& o = glyph_order();
    auto it = std::find(o.begin(), o.end(), g);
    return it == o.end() ? -1 : static_cast<int>(it - o.begin());
}

std::optional<std::array<int, 2>> cell_coords(const Grid& g, Cell cell) {
    if (cell.r < 1 || cell.r > g.rows) return std::nullopt;
    int d = (cell.c - g.anchor.c) - (cell.r - g.anchor.r);
    if (d % 2) return std::nullopt;
    if (g.layout == Grid::Layout::mesh) return std::array<int, 2>{g.anchor_coords[0] + d / 2, cell.r};
    // interval layout: row r holds the intervals of length rows - r + 1, starts decrease to the right
    int a = g.anchor_coords[0] - d / 2;
    return std::array<int, 2>{a, a + g.rows - cell.r};
}

std::optional<Cell> coords_cell(const Grid& g, std::array<int, 2> co) {
    int r;
    if (g.layout == Grid::Layout::mesh) {
        r = co[1];
        if (r < 1 || r > g.rows) return std::nullopt;
        return Cell{g.anchor.c + 2 * (co[0] - g.anchor_coords[0]) + (r - g.anchor.r), r};
    }
    r = g.rows - (co[1] - co[0]);
    if (r < 1 || r > g.rows) return std::nullopt;
    return Cell{g.anchor.c - 2 * (co[0] - g.anchor_coords[0]) + (r - g.anchor.r), r};
}

const SubcatSpec* Fixture::find(const std::string& n) const {
    for (const auto& s : subcats)
        if (s.name == n) return &s;
    return nullptr;
}

std::optional<std::array<int, 2>> Fixture::drawn_columns(int row) const {
    std::optional<std::array<int, 2>> out;
    for (const auto& f : figures) {
        auto it = f.columns.find(row);
        if (it == f.columns.end()) continue;
        std::array<int, 2> c = it->second;
        for (const auto& d : f.dots) {
            if (d.r != row) continue;
            if (d.c == c[0]) ++c[0];
            if (d.c == c[1]) --c[1];
        }
        if (!out) out = c;
        else out = std::array<int, 2>{std::min((*out)[0], c[0]), std::max((*out)[1], c[1])};
    }
    return out;
}

Fixture parse_fixture(const std::string& text, const std::string& path) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ":" + line_col(text, e.byte == 0 ? 0 : e.byte - 1), "JSON syntax error");
    }
    if (!j.is_object()) throw ConfigError("/", "fixture must be a JSON object");
    Fixture fx;
    fx.path = path;
    fx.raw = j;
    fx.name = as_str(need(j, "name", ""), "/name");
    fx.backend = need(j, "backend", "");
    make_category(fx.backend);   // validates parameters early
    fx.grid = parse_grid(need(j, "grid", ""));

    std::set<std::string> glyphs;
    if (j.contains("subcats")) {
        if (!j["subcats"].is_object()) throw ConfigError("/subcats", "expected an object");
        for (const auto& [k, v] : j["subcats"].items()) {
            fx.subcats.push_back(parse_subcat(k, v));
            const std::string& g = fx.subcats.back().glyph;
            if (!g.empty() && !glyphs.insert(g).second) throw ConfigError("/subcats/" + k + "/glyph", "glyph used twice");
        }
    }
    for (const auto& s : fx.subcats)
        for (std::size_t i = 0; i < s.args.size(); ++i)
            if (s.kind != "twin" && !fx.find(s.args[i]))
                throw ConfigError("/subcats/" + s.name + "/" + s.kind, "unknown set '" + s.args[i] + "'");

    if (j.contains("twin")) {
        for (const char* role : {"X", "V", "U", "Y"}) {
            std::string n = as_str(need(j["twin"], role, "/twin"), std::string("/twin/") + role);
            if (!fx.find(n)) throw ConfigError(std::string("/twin/") + role, "unknown set '" + n + "'");
            fx.twin[role] = n;
        }
    }
    for (const auto& s : fx.subcats)
        if ((s.kind == "twin" || s.kind == "g_nonzero") && fx.twin.empty())
            throw ConfigError("/subcats/" + s.name, "needs a twin block");

    std::set<std::string> ids;
    if (j.contains("assertions")) {
        const json& a = j["assertions"];
        for (std::size_t i = 0; i < a.size(); ++i) {
            std::string at = "/assertions/" + std::to_string(i);
            AssertionSpec s;
            s.id = as_str(need(a[i], "id", at), at + "/id");
            s.check = as_str(need(a[i], "check", at), at + "/check");
            const auto& kc = known_checks();
            if (std::find(kc.begin(), kc.end(), s.check) == kc.end())
                throw ConfigError(at + "/check", "unknown check '" + s.check + "'");
            s.suite = a[i].contains("suite") ? as_str(a[i]["suite"], at + "/suite") : s.check;
            if (a[i].contains("args")) s.args = as_names(a[i]["args"], at + "/args");
            for (const auto& n : s.args)
                if (!fx.find(n)) throw ConfigError(at + "/args", "unknown set '" + n + "'");
            if (!ids.insert(s.id).second) throw ConfigError(at + "/id", "duplicate id '" + s.id + "'");
            fx.assertions.push_back(s);
        }
    }
    if (j.contains("figures")) {
        const json& f = j["figures"];
        for (std::size_t i = 0; i < f.size(); ++i) {
            std::string at = "/figures/" + std::to_string(i);
            fx.figures.push_back(parse_figure(f[i], at));
            for (const auto& [n, g] : fx.figures.back().overlays)
                if (!fx.find(n)) throw ConfigError(at + "/overlays", "unknown set '" + n + "'");
            for (const auto& n : fx.figures.back().iso)
                if (!fx.find(n)) throw ConfigError(at + "/iso", "unknown set '" + n + "'");
        }
    }
    if (j.contains("expected")) {
        if (!j["expected"].is_object()) throw ConfigError("/expected", "expected an object");
        fx.expected = j["expected"];
    }
    return fx;
}

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str(), path);
}

std::unique_ptr<Category> make_category(const json& b) {
    std::string kind = as_str(need(b, "kind", "/backend"), "/backend/kind");
    auto get = [&](const char* k) { return as_int(need(b, k, "/backend"), std::string("/backend/") + k); };
    try {
        if (kind == "derived_an")
            return std::make_unique<DerivedAn>(get("n"), get("x_min"), get("x_max"), get("core_margin"));
        if (kind == "interval_algebra") {
            std::string alg = as_str(need(b, "algebra", "/backend"), "/backend/algebra");
            if (alg == "type_a") {
                int n = get("n");
                if (n < 1) throw ConfigError("/backend/n", "must be positive");
                return std::make_unique<IntervalCategory>(IntervalCategory::type_a(n));
            }
            if (alg == "lambda") {
                int lo = get("lo"), hi = get("hi"), m = get("core_margin");
                if (hi - lo < 2 * m) throw ConfigError("/backend", "core margin swallows the window");
                return std::make_unique<IntervalCategory>(IntervalCategory::lambda(lo, hi, m));
            }
            throw ConfigError("/backend/algebra", "unknown algebra '" + alg + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError("/backend", e.what());
    }
    throw ConfigError("/backend/kind", "unknown backend '" + kind + "'");
}

World::World(const Fixture& fx, Overrides ov, Exec ex) : fx_(fx), backend_(fx.backend), ex_(ex) {
    std::string kind = backend_["kind"].get<std::string>();
    bool mesh = kind == "derived_an";
    bool lam = kind == "interval_algebra" && backend_.value("algebra", "") == "lambda";
    if (ov.window) {
        if (!mesh && !lam) throw ConfigError("--window", "this backend has a fixed window");
        backend_[mesh ? "x_min" : "lo"] = (*ov.window)[0];
        backend_[mesh ? "x_max" : "hi"] = (*ov.window)[1];
    }
    if (ov.core_margin) {
        if (!mesh && !lam) throw ConfigError("--core-margin", "this backend has a fixed window");
        backend_["core_margin"] = *ov.core_margin;
    }
    if (ov.budget < 1) throw ConfigError("--budget", "must be positive");
    budget_.width = ov.budget;
    cat_ = make_category(backend_);
    core_ = cat_->core_ids();
    window_ = cat_->window_ids();
}

json World::enlarged_backend() const {
    json b = backend_;
    if (b["kind"] == "derived_an") {
        b["x_min"] = b["x_min"].get<int>() - 1;
        b["x_max"] = b["x_max"].get<int>() + 1;
        b["core_margin"] = b["core_margin"].get<int>() + 1;
    } else if (b.value("algebra", "") == "lambda") {
        b["lo"] = b["lo"].get<int>() - 1;
        b["hi"] = b["hi"].get<int>() + 1;
        b["core_margin"] = b["core_margin"].get<int>() + 1;
    }
    return b;
}

std::optional<int> World::at(Cell cell) const {
    auto co = cell_coords(fx_.grid, cell);
    if (!co) return std::nullopt;
    auto id = cat_->find((*co)[0], (*co)[1]);
    if (!id || !cat_->indec(*id).window) return std::nullopt;
    return id;
}

std::optional<Cell> World::cell_of(int id) const { return coords_cell(fx_.grid, cat_->indec(id).coords); }

Subcat World::transcribed(const SubcatSpec& s) const {
    std::set<Cell> marks(s.cells.begin(), s.cells.end());
    std::vector<int> ids;
    for (int id : window_) {
        auto cell = cell_of(id);
        if (!cell) continue;
        bool in = marks.count(*cell) > 0;
        if (!in && s.cont.period) {
            for (const auto& m : marks)
                if (m.r == cell->r && (cell->c - m.c) % s.cont.period == 0) in = true;
        }
        if (!in && (s.cont.left || s.cont.right)) {
            auto cols = fx_.drawn_columns(cell->r);
            if (cols) {
                // the outermost drawn vertex of the row has the row's parity
                int first = (*cols)[0], last = (*cols)[1];
                if (at(Cell{first, cell->r}) == std::nullopt) ++first;
                if (at(Cell{last, cell->r}) == std::nullopt) --last;
                if (s.cont.left && cell->c < first && marks.count(Cell{first, cell->r})) in = true;
                if (s.cont.right && cell->c > last && marks.count(Cell{last, cell->r})) in = true;
            }
        }
        if (in) ids.push_back(id);
    }
    return make_subcat(ids, "transcribed");
}

Subcat World::resolve(const SubcatSpec& s) {
    auto arg = [&](std::size_t i) { return set(s.args.at(i)); };
    const Category& c = *cat_;
    if (s.kind == "cells") return transcribed(s);
    if (s.kind == "all") return make_subcat(window_, "all");
    if (s.kind == "union" || s.kind == "intersect") {
        Subcat out = arg(0);
        for (std::size_t i = 1; i < s.args.size(); ++i) out = s.kind == "union" ? unite(out, arg(i)) : intersect(out, arg(i));
        return out;
    }
    if (s.kind == "minus") return minus(arg(0), arg(1));
    if (s.kind == "projectives" || s.kind == "injectives") {
        std::vector<int> ids;
        if (auto* ic = dynamic_cast<const IntervalCategory*>(&c)) {
            const auto& alg = ic->algebra();
            for (int id : window_) {
                bool p = s.kind == "projectives" ? ic->end(id) == alg.proj_end(ic->start(id))
                                                 : ic->start(id) == alg.inj_start(ic->end(id));
                if (p) ids.push_back(id);
            }
        }
        return make_subcat(ids, s.kind);
    }
    if (s.kind == "perp_right") return perp_right(c, arg(0), window_, ex_);
    if (s.kind == "perp_left") return perp_left(c, arg(0), window_, ex_);
    if (s.kind == "closure") {
        Subcat start;
        for (std::size_t i = 0; i < s.args.size(); ++i) start = unite(start, arg(i));
        ClosureMode m = s.mode == "cones" ? ClosureMode::cones : s.mode == "cocones" ? ClosureMode::cocones : ClosureMode::extensions;
        return closure(c, start, m, window_, budget_, ex_).sub;
    }
    if (s.kind == "s_left" || s.kind == "s_right") {
        Subcat x = arg(0), y = arg(1);
        Membership m = s.kind == "s_left" ? s_left(c, x, y, window_, budget_, ex_) : s_right(c, x, y, window_, budget_, ex_);
        return m.members;
    }
    if (s.kind == "twin") {
        const TwinCertificate& t = twin();
        const std::string& r = s.args[0];
        return r == "Z" ? t.z : r == "W" ? t.w : r == "X" ? t.x() : r == "V" ? t.v() : r == "U" ? t.u() : t.y();
    }
    if (s.kind == "g_nonzero") {
        const GFunctor& gf = g();
        std::vector<int> ids;
        for (int id : arg(0).ids) {
            auto e = gf.essential({id});
            if (e.ok() && !e->empty()) ids.push_back(id);
        }
        return make_subcat(ids, "g_nonzero");
    }
    throw ConfigError("/subcats/" + s.name, "unknown kind");
}

const Subcat& World::set(const std::string& name) {
    auto it = sets_.find(name);
    if (it != sets_.end()) return it->second;
    const SubcatSpec* s = fx_.find(name);
    if (!s) throw ConfigError("/subcats", "unknown set '" + name + "'");
    if (std::find(resolving_.begin(), resolving_.end(), name) != resolving_.end())
        throw ConfigError("/subcats/" + name, "definition refers to itself");
    resolving_.push_back(name);
    Subcat r = resolve(*s);
    resolving_.pop_back();
    return sets_.emplace(name, std::move(r)).first->second;
}

const TwinCertificate& World::twin() {
    if (!twin_) {
        if (fx_.twin.empty()) throw ConfigError("/twin", "fixture has no twin block");
        Subcat x = set(fx_.twin.at("X")), v = set(fx_.twin.at("V")), u = set(fx_.twin.at("U")), y = set(fx_.twin.at("Y"));
        twin_ = std::make_unique<TwinCertificate>(verify_twin(*cat_, x, v, u, y, core_, budget_, ex_));
    }
    return *twin_;
}

const GFunctor& World::g() {
    if (!g_) g_ = std::make_unique<GFunctor>(*cat_, twin(), ex_);
    return *g_;
}

}  // namespace twin
