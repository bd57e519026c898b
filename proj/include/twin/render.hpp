#pragma once

#include <string>

#include "twin/fixture.hpp"

namespace twin {

// UTF-8 text picture of a figure: vertex rows with arrow rows between them. Cell (c, r) prints
// at text column 2c; the arrow between columns c and c+1 prints at 2c+1.
std::string render_text(World& w, const FigureSpec& f);
std::string render_svg(World& w, const FigureSpec& f);

}  // namespace twin
