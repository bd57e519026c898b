#include "twin/render.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace twin {

namespace {

struct Picture {
    std::map<Cell, std::string> cells;   // glyph or "⋯"
    std::set<std::pair<Cell, Cell>> iso;  // left cell, right cell
    int rows = 0, width = 0;
};

Picture layout(World& w, const FigureSpec& f) {
    Picture p;
    p.rows = w.fixture().grid.rows;
    std::set<Cell> dots(f.dots.begin(), f.dots.end());
    std::vector<std::pair<const Subcat*, int>> over;
    for (const auto& [name, glyph] : f.overlays) over.emplace_back(&w.set(name), glyph_rank(glyph));
    for (const auto& [row, range] : f.columns) {
        for (int c = range[0]; c <= range[1]; ++c) {
            Cell cell{c, row};
            if (dots.count(cell)) {
                p.cells[cell] = "⋯";
                continue;
            }
            auto id = w.at(cell);
            if (!id) continue;
            int rank = 0;
            for (const auto& [s, r] : over)
                if (s->has(*id)) rank = std::max(rank, r);
            p.cells[cell] = glyph_order()[rank];
        }
        p.width = std::max(p.width, range[1] + 1);
    }
    if (f.iso.size() == 2) {
        const Subcat& from = w.set(f.iso[0]);
        const Subcat& to = w.set(f.iso[1]);
        const GFunctor& g = w.g();
        for (int a : from.ids) {
            auto ca = w.cell_of(a);
            if (!ca || !p.cells.count(*ca)) continue;
            auto e = g.essential({a});
            if (!e.ok() || e->size() != 1 || !to.has((*e)[0])) continue;
            auto cb = w.cell_of((*e)[0]);
            if (!cb || std::abs(cb->c - ca->c) != 1 || std::abs(cb->r - ca->r) != 1) continue;
            p.iso.insert(ca->c < cb->c ? std::pair{*ca, *cb} : std::pair{*cb, *ca});
        }
    }
    return p;
}

std::string rstrip(const std::vector<std::string>& chars) {
    std::size_t n = chars.size();
    while (n > 0 && chars[n - 1] == " ") --n;
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += chars[i];
    return s;
}

}  // namespace

std::string render_text(World& w, const FigureSpec& f) {
    Picture p = layout(w, f);
    std::string out;
    for (int r = 1; r <= p.rows; ++r) {
        std::vector<std::string> line(2 * p.width + 2, " ");
        for (const auto& [cell, g] : p.cells)
            if (cell.r == r) line[2 * cell.c] = g;
        out += rstrip(line) + "\n";
        if (r == p.rows) break;
        std::vector<std::string> arrows(2 * p.width + 2, " ");
        for (int c = 0; c < p.width; ++c) {
            Cell a{c, r}, b{c + 1, r + 1}, d{c, r + 1}, e{c + 1, r};
            if (p.cells.count(a) && p.cells.count(b)) arrows[2 * c + 1] = p.iso.count({a, b}) ? "≃" : "╲";
            if (p.cells.count(d) && p.cells.count(e)) arrows[2 * c + 1] = p.iso.count({d, e}) ? "≃" : "╱";
        }
        out += rstrip(arrows) + "\n";
    }
    return out;
}

std::string render_svg(World& w, const FigureSpec& f) {
    Picture p = layout(w, f);
    const int dx = 24, dy = 48, m = 24;
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * m + dx * p.width << "\" height=\""
      << 2 * m + dy * (p.rows - 1) << "\" font-family=\"sans-serif\" font-size=\"16\">\n";
    auto x = [&](const Cell& c) { return m + dx * c.c; };
    auto y = [&](const Cell& c) { return m + dy * (c.r - 1); };
    for (const auto& [a, ga] : p.cells) {
        for (Cell b : {Cell{a.c + 1, a.r + 1}, Cell{a.c + 1, a.r - 1}}) {
            if (!p.cells.count(b)) continue;
            bool iso = p.iso.count({a, b}) > 0;
            s << "  <line x1=\"" << x(a) + 6 << "\" y1=\"" << y(a) + (b.r > a.r ? 6 : -6) << "\" x2=\"" << x(b) - 6
              << "\" y2=\"" << y(b) + (b.r > a.r ? -6 : 6) << "\" stroke=\"#888\"/>\n";
            if (iso)
                s << "  <text x=\"" << (x(a) + x(b)) / 2 + 6 << "\" y=\"" << (y(a) + y(b)) / 2 + 5
                  << "\" font-size=\"12\">≃</text>\n";
        }
    }
    for (const auto& [c, g] : p.cells)
        s << "  <text x=\"" << x(c) << "\" y=\"" << y(c) + 6 << "\" text-anchor=\"middle\">" << g << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace twin
