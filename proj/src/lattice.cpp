#include "pedmdp/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace pedmdp {

const char* to_string(Metric m) {
    switch (m) {
    case Metric::Euclidean: return "euclidean";
    case Metric::Chebyshev: return "chebyshev";
    case Metric::Manhattan: return "manhattan";
    }
    return "?";
}

Metric metric_from_string(const std::string& name) {
    if (name == "euclidean") return Metric::Euclidean;
    if (name == "chebyshev") return Metric::Chebyshev;
    if (name == "manhattan") return Metric::Manhattan;
    throw InputError("unknown metric: " + name);
}

Lattice::Lattice(int width, int height, GridPos exit, std::set<GridPos> blocked, Metric metric)
    : width_(width), height_(height), exit_(exit), blocked_(std::move(blocked)), metric_(metric) {
    if (width_ < 1 || height_ < 1)
        throw InputError("lattice dimensions must be >= 1");
    if (!in_bounds(exit_))
        throw InputError("exit cell out of bounds");
    for (const auto& b : blocked_) {
        if (!in_bounds(b))
            throw InputError("blocked cell out of bounds");
    }
    if (blocked_.contains(exit_))
        throw InputError("exit cell must not be blocked");
}

bool Lattice::is_blocked(GridPos p) const { return blocked_.contains(p); }

int Lattice::cell_index(GridPos p) const {
    if (!in_bounds(p))
        throw std::out_of_range("grid position out of bounds");
    return p.row * width_ + p.col + 1;
}

GridPos Lattice::index_to_pos(int index) const {
    if (index < 1 || index > cell_count())
        throw std::out_of_range("cell index out of range");
    return {(index - 1) % width_, (index - 1) / width_};
}

double Lattice::dist(GridPos a, GridPos b) const {
    const int dc = std::abs(a.col - b.col);
    const int dr = std::abs(a.row - b.row);
    switch (metric_) {
    case Metric::Euclidean: return std::hypot(static_cast<double>(dc), static_cast<double>(dr));
    case Metric::Chebyshev: return static_cast<double>(std::max(dc, dr));
    case Metric::Manhattan: return static_cast<double>(dc + dr);
    }
    return 0.0;
}

std::vector<GridPos> Lattice::neighbors(GridPos pos, bool include_self) const {
    if (!in_bounds(pos))
        throw std::out_of_range("grid position out of bounds");
    std::vector<GridPos> out;
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            const GridPos y{pos.col + dc, pos.row + dr};
            if (!include_self && y == pos)
                continue;
            if (!open(y))
                continue;
            if (dist(pos, y) <= 1.0)
                out.push_back(y);
        }
    }
    return out;
}

std::vector<int> Lattice::neighbor_indices(int cell, bool include_self) const {
    std::vector<int> out;
    for (const auto& p : neighbors(index_to_pos(cell), include_self))
        out.push_back(cell_index(p));
    return out;
}

std::vector<int> Lattice::open_cells() const {
    std::vector<int> out;
    for (int i = 1; i <= cell_count(); ++i)
        if (!is_blocked(index_to_pos(i)))
            out.push_back(i);
    return out;
}

StaticField build_static_field(const Lattice& lattice) {
    StaticField field;
    field.values.assign(static_cast<std::size_t>(lattice.cell_count()) + 1,
                        std::numeric_limits<double>::quiet_NaN());
    for (int cell : lattice.open_cells())
        field.values[static_cast<std::size_t>(cell)] = lattice.dist(cell, lattice.exit_index());
    return field;
}

} // namespace pedmdp
