#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swarmcover {

// The four discrete moves, in canonical order. The order matters: gene
// decoding partitions [0,1) over the feasible subset listed in this order.
enum class Direction : std::uint8_t { Up = 0, Down = 1, Left = 2, Right = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::Up, Direction::Down, Direction::Left, Direction::Right};

constexpr int row_delta(Direction d) {
    switch (d) {
        case Direction::Up: return -1;
        case Direction::Down: return 1;
        default: return 0;
    }
}

constexpr int col_delta(Direction d) {
    switch (d) {
        case Direction::Left: return -1;
        case Direction::Right: return 1;
        default: return 0;
    }
}

constexpr char direction_char(Direction d) {
    switch (d) {
        case Direction::Up: return 'U';
        case Direction::Down: return 'D';
        case Direction::Left: return 'L';
        default: return 'R';
    }
}

constexpr const char* direction_name(Direction d) {
    switch (d) {
        case Direction::Up: return "up";
        case Direction::Down: return "down";
        case Direction::Left: return "left";
        default: return "right";
    }
}

// 0-based cell coordinate, row 0 at the top, column 0 at the left.
struct Coord {
    int row = 0;
    int col = 0;

    friend auto operator<=>(const Coord&, const Coord&) = default;
};

inline Coord step(Coord c, Direction d) {
    return Coord{c.row + row_delta(d), c.col + col_delta(d)};
}

// Raised by map parsing/validation with a human-readable location.
class MapError : public std::runtime_error {
public:
    MapError(std::string message, int line, int column = -1)
        : std::runtime_error(format(message, line, column)),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        std::string out = "map error";
        if (line >= 0) {
            out += " at line " + std::to_string(line + 1);
            if (column >= 0) out += ", column " + std::to_string(column + 1);
        }
        out += ": " + message;
        return out;
    }

    int line_;
    int column_;
};

// A rectangular cell grid with an obstacle mask. Immutable once constructed;
// feasible moves and the canonical visitable-cell ordering are precomputed.
class GridMap {
public:
    GridMap(std::string id, int rows, int cols, std::vector<std::uint8_t> obstacles)
        : id_(std::move(id)), rows_(rows), cols_(cols), obstacles_(std::move(obstacles)) {
        validate();
        build_tables();
    }

    static GridMap parse(std::string_view text, std::string id = "");

    const std::string& id() const { return id_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool in_bounds(Coord c) const {
        return c.row >= 0 && c.row < rows_ && c.col >= 0 && c.col < cols_;
    }

    bool obstacle(Coord c) const { return obstacles_[flat(c)] != 0; }
    bool visitable(Coord c) const { return in_bounds(c) && !obstacle(c); }

    int visitable_count() const { return static_cast<int>(cells_.size()); }

    // Visitable cells in row-major order; position in this list is the
    // canonical cell index used by genotypes and movement maps.
    const std::vector<Coord>& visitable_cells() const { return cells_; }

    // Canonical index of a visitable cell, -1 for obstacles and out of bounds.
    int cell_index(Coord c) const {
        if (!in_bounds(c)) return -1;
        return index_grid_[flat(c)];
    }

    // Feasible moves from a visitable cell, in canonical (U, D, L, R) order.
    // A direction is present iff its neighbour is inside the grid and free.
    std::vector<Direction> feasible_moves(Coord c) const {
        const int idx = cell_index(c);
        if (idx < 0) throw std::invalid_argument("feasible_moves: cell is not visitable");
        std::vector<Direction> out;
        out.reserve(feasible_count(idx));
        for (int j = 0; j < feasible_count(idx); ++j) out.push_back(feasible_dir(idx, j));
        return out;
    }

    // Fast accessors keyed by canonical cell index, for the simulator.
    int feasible_count(int cell_idx) const { return moves_[cell_idx].count; }
    Direction feasible_dir(int cell_idx, int j) const {
        return static_cast<Direction>(moves_[cell_idx].dirs[j]);
    }
    int feasible_target(int cell_idx, int j) const { return moves_[cell_idx].targets[j]; }

    std::string serialize() const;

    // Structural equality; the id is a label and does not participate.
    friend bool operator==(const GridMap& a, const GridMap& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.obstacles_ == b.obstacles_;
    }

private:
    struct CellMoves {
        std::uint8_t count = 0;
        std::uint8_t dirs[4] = {};
        std::int32_t targets[4] = {};
    };

    std::size_t flat(Coord c) const {
        return static_cast<std::size_t>(c.row) * cols_ + c.col;
    }

    void validate() const;
    void build_tables();

    std::string id_;
    int rows_;
    int cols_;
    std::vector<std::uint8_t> obstacles_;
    std::vector<Coord> cells_;
    std::vector<std::int32_t> index_grid_;
    std::vector<CellMoves> moves_;
};

inline void GridMap::validate() const {
    if (rows_ < 1 || cols_ < 1) throw MapError("grid dimensions must be positive", -1);
    if (static_cast<std::size_t>(rows_) * cols_ < 2)
        throw MapError("grid must contain at least two cells", -1);
    if (obstacles_.size() != static_cast<std::size_t>(rows_) * cols_)
        throw std::invalid_argument("obstacle mask size does not match grid dimensions");
    const Coord corners[4] = {{0, 0}, {rows_ - 1, 0}, {0, cols_ - 1}, {rows_ - 1, cols_ - 1}};
    for (const Coord c : corners) {
        if (obstacles_[flat(c)])
            throw MapError("corner cell must be free (UAV start position)", c.row, c.col);
    }
}

inline void GridMap::build_tables() {
    index_grid_.assign(static_cast<std::size_t>(rows_) * cols_, -1);
    cells_.clear();
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            const Coord cell{r, c};
            if (!obstacle(cell)) {
                index_grid_[flat(cell)] = static_cast<std::int32_t>(cells_.size());
                cells_.push_back(cell);
            }
        }
    }
    moves_.assign(cells_.size(), CellMoves{});
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        CellMoves& m = moves_[i];
        for (const Direction d : kAllDirections) {
            const Coord target = step(cells_[i], d);
            if (visitable(target)) {
                m.dirs[m.count] = static_cast<std::uint8_t>(d);
                m.targets[m.count] = cell_index(target);
                ++m.count;
            }
        }
    }
}

// Map file format: first line "rows cols", then `rows` lines of '.' (free)
// and '#' (obstacle). LF or CRLF, trailing whitespace ignored.
inline GridMap GridMap::parse(std::string_view text, std::string id) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string line(text.substr(pos, nl - pos));
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        lines.push_back(std::move(line));
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) throw MapError("empty map file", 0);

    int rows = 0, cols = 0;
    {
        const std::string& header = lines[0];
        std::size_t idx = 0;
        auto read_int = [&](int& out) {
            while (idx < header.size() && header[idx] == ' ') ++idx;
            std::size_t start = idx;
            while (idx < header.size() && header[idx] >= '0' && header[idx] <= '9') ++idx;
            if (idx == start) throw MapError("header must be \"rows cols\"", 0);
            out = std::stoi(header.substr(start, idx - start));
        };
        read_int(rows);
        read_int(cols);
        while (idx < header.size() && header[idx] == ' ') ++idx;
        if (idx != header.size()) throw MapError("unexpected text after \"rows cols\"", 0, static_cast<int>(idx));
        if (rows < 1 || cols < 1) throw MapError("grid dimensions must be positive", 0);
    }

    if (static_cast<int>(lines.size()) - 1 != rows)
        throw MapError("expected " + std::to_string(rows) + " grid rows, found " +
                           std::to_string(static_cast<int>(lines.size()) - 1),
                       static_cast<int>(lines.size()) - 1);

    std::vector<std::uint8_t> obstacles(static_cast<std::size_t>(rows) * cols, 0);
    for (int r = 0; r < rows; ++r) {
        const std::string& line = lines[r + 1];
        if (static_cast<int>(line.size()) != cols)
            throw MapError("row has " + std::to_string(line.size()) + " cells, expected " +
                               std::to_string(cols),
                           r + 1);
        for (int c = 0; c < cols; ++c) {
            switch (line[c]) {
                case '.': break;
                case '#': obstacles[static_cast<std::size_t>(r) * cols + c] = 1; break;
                default:
                    throw MapError(std::string("unknown cell character '") + line[c] + "'", r + 1, c);
            }
        }
    }
    return GridMap(std::move(id), rows, cols, std::move(obstacles));
}

inline std::string GridMap::serialize() const {
    std::string out = std::to_string(rows_) + " " + std::to_string(cols_) + "\n";
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) out += obstacle(Coord{r, c}) ? '#' : '.';
        out += '\n';
    }
    return out;
}

// Start corners in corner order: top-left, bottom-left, top-right,
// bottom-right. The first n are used for an n-UAV swarm.
inline std::vector<Coord> start_positions(const GridMap& map, int uavs) {
    if (uavs < 1 || uavs > 4) throw std::invalid_argument("UAV count must be between 1 and 4");
    if (uavs > map.visitable_count())
        throw std::invalid_argument("more UAVs than visitable cells");
    const std::array<Coord, 4> corners = {Coord{0, 0}, Coord{map.rows() - 1, 0},
                                          Coord{0, map.cols() - 1},
                                          Coord{map.rows() - 1, map.cols() - 1}};
    std::vector<Coord> out;
    for (int i = 0; i < uavs; ++i) {
        for (const Coord prev : out) {
            if (prev == corners[i])
                throw std::invalid_argument(
                    "start corners coincide on a degenerate grid; fewer UAVs required");
        }
        out.push_back(corners[i]);
    }
    return out;
}

// Lower bound on epochs for full coverage: the n starts are free, the
// remaining V - n cells need at least ceil((V - n) / n) synchronized moves.
inline int theoretical_min_epochs(const GridMap& map, int uavs) {
    if (uavs < 1 || uavs > 4) throw std::invalid_argument("UAV count must be between 1 and 4");
    const int v = map.visitable_count();
    if (uavs > v) throw std::invalid_argument("more UAVs than visitable cells");
    return (v - uavs + uavs - 1) / uavs;
}

// Epoch budget for a run: twice the theoretical minimum.
inline int max_epochs(const GridMap& map, int uavs) {
    return 2 * theoretical_min_epochs(map, uavs);
}

namespace detail {

inline const char* builtin_map_text(int number) {
    switch (number) {
        case 1:
            return "7 7\n"
                   ".......\n"
                   ".......\n"
                   ".......\n"
                   ".......\n"
                   ".......\n"
                   ".......\n"
                   ".......\n";
        case 2:
            return "5 5\n"
                   ".....\n"
                   "..#..\n"
                   ".#.#.\n"
                   "...#.\n"
                   ".....\n";
        case 3:
            return "6 6\n"
                   "...#..\n"
                   "#.....\n"
                   "#.#...\n"
                   "..#.#.\n"
                   "....#.\n"
                   "..#...\n";
        case 4:
            return "7 7\n"
                   "...#...\n"
                   ".#.#...\n"
                   ".#.....\n"
                   ".#..##.\n"
                   ".....#.\n"
                   ".#...#.\n"
                   ".......\n";
        case 5:
            return "8 8\n"
                   ".#.#....\n"
                   "........\n"
                   "..#....#\n"
                   "...##...\n"
                   "...##..#\n"
                   "..#..#..\n"
                   "........\n"
                   ".#.#....\n";
        case 6:
            return "9 9\n"
                   ".........\n"
                   "...###...\n"
                   "....#....\n"
                   ".#..#..#.\n"
                   ".#######.\n"
                   ".#..#..#.\n"
                   "....#....\n"
                   "...###...\n"
                   ".........\n";
        default:
            return nullptr;
    }
}

} // namespace detail

// The six benchmark maps. Map 6's layout is exact; maps 2-5 are stand-ins
// matching the published sizes and visitable-cell counts, with single-UAV
// full coverage impossible from the top-left corner.
inline const std::vector<GridMap>& builtin_maps() {
    static const std::vector<GridMap> maps = [] {
        std::vector<GridMap> out;
        for (int i = 1; i <= 6; ++i)
            out.push_back(GridMap::parse(detail::builtin_map_text(i), "map" + std::to_string(i)));
        return out;
    }();
    return maps;
}

// Looks up a built-in map by id ("map1".."map6"); nullptr if unknown.
inline const GridMap* find_builtin_map(std::string_view id) {
    for (const GridMap& m : builtin_maps())
        if (m.id() == id) return &m;
    return nullptr;
}

} // namespace swarmcover
