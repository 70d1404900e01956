#include "pedmdp/environment.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pedmdp {

CrowdState CrowdState::of(std::vector<int> cells) {
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw InputError("crowd state contains duplicate cells");
    return CrowdState{std::move(cells)};
}

bool CrowdState::contains(int cell) const {
    return std::binary_search(cells.begin(), cells.end(), cell);
}

OccupancyGrid OccupancyGrid::empty(const Lattice& lattice) {
    OccupancyGrid g;
    g.occ.assign(static_cast<std::size_t>(lattice.cell_count()) + 1, 0);
    return g;
}

OccupancyGrid OccupancyGrid::from(const CrowdState& crowd, const Lattice& lattice) {
    OccupancyGrid g = empty(lattice);
    for (int cell : crowd.cells) {
        if (cell < 1 || cell > lattice.cell_count())
            throw InputError("particle cell out of range");
        if (lattice.is_blocked(cell))
            throw InputError("particle on a blocked cell");
        g.set(cell, true);
    }
    return g;
}

CrowdState OccupancyGrid::particles() const {
    CrowdState crowd;
    for (std::size_t cell = 1; cell < occ.size(); ++cell)
        if (occ[cell])
            crowd.cells.push_back(static_cast<int>(cell));
    return crowd;
}

int OccupancyGrid::count() const {
    int n = 0;
    for (std::size_t cell = 1; cell < occ.size(); ++cell)
        n += occ[cell] ? 1 : 0;
    return n;
}

std::vector<CellProb> hop_distribution(int x, const OccupancyGrid& tau, const StaticField& field,
                                       const Lattice& lattice) {
    if (!tau.occupied(x))
        throw std::logic_error("hop distribution requested for an empty cell");
    const auto candidates = lattice.neighbor_indices(x, true);
    if (candidates.empty())
        throw std::logic_error("hop distribution: particle on a blocked cell");
    double s_min = field.at(candidates.front());
    for (int y : candidates)
        s_min = std::min(s_min, field.at(y));
    std::vector<CellProb> dist;
    dist.reserve(candidates.size());
    double total = 0.0;
    for (int y : candidates) {
        const double w = std::exp(-(field.at(y) - s_min));
        dist.push_back({y, w});
        total += w;
    }
    for (auto& e : dist)
        e.p /= total;
    return dist;
}

namespace {

enum class MoveStatus : std::uint8_t { Unknown, Moves, Stays };

struct ConflictResolver {
    const std::map<int, int>& winner_target; // winner's current cell -> target
    const std::set<int>& occupied_at_t;
    std::map<int, MoveStatus> status;
    std::map<int, bool> visiting;

    MoveStatus resolve(int w) {
        if (visiting[w])
            return MoveStatus::Moves; // cycle of winners rotates as a whole
        auto& st = status[w];
        if (st != MoveStatus::Unknown)
            return st;
        const int target = winner_target.at(w);
        if (!occupied_at_t.contains(target)) {
            st = MoveStatus::Moves;
        } else if (!winner_target.contains(target)) {
            st = MoveStatus::Stays; // occupant stays put, target never frees up
        } else {
            visiting[w] = true;
            st = resolve(target);
            visiting[w] = false;
        }
        return st;
    }
};

} // namespace

std::map<int, int> resolve_conflicts(const std::map<int, int>& choices, const Lattice& lattice,
                                     std::mt19937_64& rng) {
    std::set<int> occupied_at_t;
    for (const auto& [cell, target] : choices) {
        if (cell < 1 || cell > lattice.cell_count() || lattice.is_blocked(cell))
            throw InputError("conflict resolution: particle on an invalid cell");
        if (target < 1 || target > lattice.cell_count() || lattice.is_blocked(target))
            throw InputError("conflict resolution: target on an invalid cell");
        if (lattice.dist(cell, target) > 1.0)
            throw InputError("conflict resolution: target farther than one cell");
        occupied_at_t.insert(cell);
    }

    // Pick one winner per contested cell; a particle staying on its own cell
    // wins it outright.
    std::map<int, std::vector<int>> contenders;
    for (const auto& [cell, target] : choices)
        contenders[target].push_back(cell);
    std::map<int, int> realized;
    std::map<int, int> winner_target;
    for (const auto& [target, group] : contenders) {
        int winner = -1;
        const auto self = std::find(group.begin(), group.end(), target);
        if (self != group.end()) {
            winner = *self;
        } else if (group.size() == 1) {
            winner = group.front();
        } else {
            std::uniform_int_distribution<std::size_t> pick(0, group.size() - 1);
            winner = group[pick(rng)];
        }
        for (int cell : group)
            if (cell != winner)
                realized[cell] = cell; // losers stay
        if (winner == target)
            realized[winner] = winner;
        else
            winner_target[winner] = target;
    }

    ConflictResolver resolver{winner_target, occupied_at_t, {}, {}};
    for (const auto& [winner, target] : winner_target)
        realized[winner] = resolver.resolve(winner) == MoveStatus::Moves ? target : winner;
    return realized;
}

OccupancyGrid simulate_step(const OccupancyGrid& tau, const StaticField& field,
                            const Lattice& lattice, std::mt19937_64& rng) {
    std::map<int, int> choices;
    for (int x : tau.particles().cells) {
        const auto dist = hop_distribution(x, tau, field, lattice);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double r = u(rng);
        double acc = 0.0;
        int target = dist.back().cell;
        for (const auto& e : dist) {
            acc += e.p;
            if (r < acc) {
                target = e.cell;
                break;
            }
        }
        choices[x] = target;
    }
    const auto realized = resolve_conflicts(choices, lattice, rng);
    OccupancyGrid next = OccupancyGrid::empty(lattice);
    const int exit_cell = lattice.exit_index();
    for (const auto& [cell, where] : realized)
        if (where != exit_cell)
            next.set(where, true);
    return next;
}

namespace {

void enumerate_reachable(const std::vector<std::vector<int>>& candidates, std::size_t j,
                         std::vector<int>& picked, std::set<int>& used, int exit_cell,
                         std::set<CrowdState>& out) {
    if (j == candidates.size()) {
        std::vector<int> cells;
        cells.reserve(picked.size());
        for (int c : picked)
            if (c != exit_cell)
                cells.push_back(c);
        out.insert(CrowdState::of(std::move(cells)));
        return;
    }
    for (int target : candidates[j]) {
        if (used.contains(target))
            continue;
        used.insert(target);
        picked.push_back(target);
        enumerate_reachable(candidates, j + 1, picked, used, exit_cell, out);
        picked.pop_back();
        used.erase(target);
    }
}

} // namespace

TransitionDistribution crowd_transition(int x, const CrowdState& z, const Lattice& lattice,
                                        const StaticField& field) {
    if (z.contains(x))
        throw std::logic_error("crowd transition: agent cell collides with a particle");
    if (x < 1 || x > lattice.cell_count() || lattice.is_blocked(x))
        throw std::logic_error("crowd transition: agent on an invalid cell");

    std::vector<std::vector<int>> candidates;
    candidates.reserve(z.size());
    for (int cell : z.cells) {
        if (lattice.is_blocked(cell))
            throw std::logic_error("crowd transition: particle on a blocked cell");
        std::vector<int> cand;
        for (int y : lattice.neighbor_indices(cell, true))
            if (y != x)
                cand.push_back(y);
        candidates.push_back(std::move(cand));
    }

    std::set<CrowdState> reachable;
    std::vector<int> picked;
    std::set<int> used;
    enumerate_reachable(candidates, 0, picked, used, lattice.exit_index(), reachable);

    double u_min = std::numeric_limits<double>::infinity();
    std::vector<std::pair<CrowdState, double>> weighted;
    weighted.reserve(reachable.size());
    for (const auto& znext : reachable) {
        double u = 0.0;
        for (int cell : znext.cells)
            u += field.at(cell);
        u_min = std::min(u_min, u);
        weighted.emplace_back(znext, u);
    }
    TransitionDistribution dist;
    dist.reserve(weighted.size());
    double total = 0.0;
    for (auto& [znext, u] : weighted) {
        const double w = std::exp(-(u - u_min));
        dist.push_back({std::move(znext), w});
        total += w;
    }
    for (auto& e : dist)
        e.p /= total;
    return dist;
}

} // namespace pedmdp
