#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmcover/grid_map.hpp"
#include "swarmcover/sim.hpp"

// Static path diagrams: one per UAV, ASCII or SVG. Each departed cell shows
// the direction taken from it; the start cell is bracketed (ASCII) or circled
// (SVG) and the final cell marked.

namespace swarmcover {

namespace render_detail {

constexpr char arrow_char(Direction d) {
    switch (d) {
        case Direction::Up: return '^';
        case Direction::Down: return 'v';
        case Direction::Left: return '<';
        default: return '>';
    }
}

} // namespace render_detail

// Grid rendered with three characters per cell: "###" obstacle, " . "
// unvisited, " ^ v < > " the move taken from a cell, " * " the final cell,
// and brackets around the start cell.
inline std::string ascii_diagram(const GridMap& map, const std::vector<Coord>& path) {
    if (path.empty()) throw std::invalid_argument("cannot render an empty path");
    std::vector<std::string> glyph(static_cast<std::size_t>(map.rows()) * map.cols(), " . ");
    auto at = [&](Coord c) -> std::string& {
        return glyph[static_cast<std::size_t>(c.row) * map.cols() + c.col];
    };
    for (int r = 0; r < map.rows(); ++r)
        for (int c = 0; c < map.cols(); ++c)
            if (map.obstacle(Coord{r, c})) at(Coord{r, c}) = "###";

    for (std::size_t e = 1; e < path.size(); ++e) {
        const Coord from = path[e - 1];
        const Coord to = path[e];
        if (from == to) continue;
        for (const Direction d : kAllDirections)
            if (step(from, d) == to) at(from)[1] = render_detail::arrow_char(d);
    }
    if (at(path.back())[1] == '.') at(path.back())[1] = '*';
    at(path.front())[0] = '[';
    at(path.front())[2] = ']';

    std::ostringstream out;
    for (int r = 0; r < map.rows(); ++r) {
        for (int c = 0; c < map.cols(); ++c) out << at(Coord{r, c});
        out << "\n";
    }
    return out.str();
}

inline std::string ascii_diagrams(const GridMap& map, const SimResult& result) {
    if (result.paths.empty()) throw std::invalid_argument("result has no paths to render");
    std::ostringstream out;
    for (std::size_t u = 0; u < result.paths.size(); ++u) {
        const Coord start = result.paths[u].front();
        const Coord end = result.paths[u].back();
        out << "UAV " << (u + 1) << "  start (" << start.row << "," << start.col << ")  end ("
            << end.row << "," << end.col << ")\n";
        out << ascii_diagram(map, result.paths[u]) << "\n";
    }
    return out.str();
}

// One SVG drawing per UAV: the grid with obstacles filled, the path as a
// polyline through cell centres, a circle on the start and a dot on the end.
inline std::string svg_diagram(const GridMap& map, const std::vector<Coord>& path,
                               const std::string& title) {
    if (path.empty()) throw std::invalid_argument("cannot render an empty path");
    constexpr int cell = 40;
    constexpr int margin = 20;
    const int width = map.cols() * cell + 2 * margin;
    const int height = map.rows() * cell + 2 * margin + 24;

    auto cx = [&](Coord c) { return margin + c.col * cell + cell / 2; };
    auto cy = [&](Coord c) { return margin + 24 + c.row * cell + cell / 2; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "  <text x=\"" << margin << "\" y=\"" << margin << "\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << title << "</text>\n";
    for (int r = 0; r < map.rows(); ++r) {
        for (int c = 0; c < map.cols(); ++c) {
            const bool blocked = map.obstacle(Coord{r, c});
            out << "  <rect x=\"" << margin + c * cell << "\" y=\"" << margin + 24 + r * cell
                << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\""
                << (blocked ? "#333333" : "none") << "\" stroke=\"#888888\"/>\n";
        }
    }
    out << "  <polyline fill=\"none\" stroke=\"#d03030\" stroke-width=\"3\" points=\"";
    Coord previous{-1, -1};
    bool first = true;
    for (const Coord c : path) {
        if (!first && c == previous) continue;
        if (!first) out << ' ';
        out << cx(c) << ',' << cy(c);
        previous = c;
        first = false;
    }
    out << "\"/>\n";
    out << "  <circle cx=\"" << cx(path.front()) << "\" cy=\"" << cy(path.front())
        << "\" r=\"9\" fill=\"none\" stroke=\"#208020\" stroke-width=\"3\"/>\n";
    out << "  <circle cx=\"" << cx(path.back()) << "\" cy=\"" << cy(path.back())
        << "\" r=\"5\" fill=\"#d03030\"/>\n";
    out << "</svg>\n";
    return out.str();
}

} // namespace swarmcover
