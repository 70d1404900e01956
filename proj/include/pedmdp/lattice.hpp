#pragma once

#include <set>
#include <string>
#include <vector>

#include "pedmdp/common.hpp"

namespace pedmdp {

enum class Metric { Euclidean, Chebyshev, Manhattan };

const char* to_string(Metric m);
Metric metric_from_string(const std::string& name);

struct GridPos {
    int col = 0;
    int row = 0;
    auto operator<=>(const GridPos&) const = default;
};

// Rectangular cell lattice with a single exit cell, an optional set of
// blocked (wall) cells, and the metric used for distances and adjacency.
// Cells are numbered row-major starting at 1 in the top-left corner.
// Immutable after construction.
class Lattice {
public:
    Lattice(int width, int height, GridPos exit, std::set<GridPos> blocked = {},
            Metric metric = Metric::Chebyshev);

    int width() const { return width_; }
    int height() const { return height_; }
    GridPos exit() const { return exit_; }
    int exit_index() const { return cell_index(exit_); }
    Metric metric() const { return metric_; }
    int cell_count() const { return width_ * height_; }

    bool in_bounds(GridPos p) const {
        return p.col >= 0 && p.col < width_ && p.row >= 0 && p.row < height_;
    }
    bool is_blocked(GridPos p) const;
    bool is_blocked(int cell) const { return is_blocked(index_to_pos(cell)); }
    // in bounds and not blocked
    bool open(GridPos p) const { return in_bounds(p) && !is_blocked(p); }

    int cell_index(GridPos p) const;       // throws std::out_of_range
    GridPos index_to_pos(int index) const; // throws std::out_of_range

    double dist(GridPos a, GridPos b) const;
    double dist(int a, int b) const { return dist(index_to_pos(a), index_to_pos(b)); }

    // All open cells y with dist(pos, y) <= 1; pos itself included iff
    // include_self (and open).
    std::vector<GridPos> neighbors(GridPos pos, bool include_self) const;
    std::vector<int> neighbor_indices(int cell, bool include_self) const;

    std::vector<int> open_cells() const;

private:
    int width_;
    int height_;
    GridPos exit_;
    std::set<GridPos> blocked_;
    Metric metric_;
};

// Per-cell distance to the exit under the lattice metric. Blocked cells hold
// NaN and must not be read by callers.
struct StaticField {
    std::vector<double> values; // indexed by cell, entry 0 unused

    double at(int cell) const { return values[static_cast<std::size_t>(cell)]; }
};

StaticField build_static_field(const Lattice& lattice);

} // namespace pedmdp
