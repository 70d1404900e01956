#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "pedmdp/lattice.hpp"

namespace pedmdp {

// Positions of the ordinary floor-field particles, as sorted distinct open
// cell indices.
struct CrowdState {
    std::vector<int> cells;

    static CrowdState of(std::vector<int> cells); // sorts; throws on duplicates
    bool contains(int cell) const;
    std::size_t size() const { return cells.size(); }
    auto operator<=>(const CrowdState&) const = default;
};

struct OccupancyGrid {
    std::vector<std::uint8_t> occ; // indexed by cell, entry 0 unused

    static OccupancyGrid empty(const Lattice& lattice);
    static OccupancyGrid from(const CrowdState& crowd, const Lattice& lattice);

    bool occupied(int cell) const { return occ[static_cast<std::size_t>(cell)] != 0; }
    void set(int cell, bool v) { occ[static_cast<std::size_t>(cell)] = v ? 1 : 0; }
    CrowdState particles() const;
    int count() const;
};

struct CellProb {
    int cell = 0;
    double p = 0.0;
};

// Hopping distribution of one particle: p(y) proportional to exp(-S(y)) over
// the open cells within distance 1 of x, x itself included. Occupancy of the
// targets does not enter; collisions are resolved separately.
std::vector<CellProb> hop_distribution(int x, const OccupancyGrid& tau, const StaticField& field,
                                       const Lattice& lattice);

// Parallel-update conflict resolution. `choices` maps each particle's
// current cell to its chosen target (within distance 1). A particle whose
// target is its own cell always keeps it; when several particles contend for
// one cell a uniform random winner is picked and the losers stay. A winner
// moving into a cell vacated in the same step succeeds; chains and cycles of
// winners all move. Returns current cell -> realized cell.
std::map<int, int> resolve_conflicts(const std::map<int, int>& choices, const Lattice& lattice,
                                     std::mt19937_64& rng);

// One synchronous step: sample every particle's hop, resolve conflicts, and
// absorb particles arriving at the exit cell. Deterministic given the rng.
OccupancyGrid simulate_step(const OccupancyGrid& tau, const StaticField& field,
                            const Lattice& lattice, std::mt19937_64& rng);

struct TransitionEntry {
    CrowdState z;
    double p = 0.0;
};
using TransitionDistribution = std::vector<TransitionEntry>;

// Crowd transition given the clever agent sits on cell x: the support is
// every crowd state reachable by moving each particle at most one cell
// (stay allowed) such that targets are open, differ from x, and are pairwise
// distinct; particles landing on the exit are absorbed. Each distinct
// reachable z' is weighted exp(-U(z')) with U the summed particle distances
// to the exit, then normalized.
TransitionDistribution crowd_transition(int x, const CrowdState& z, const Lattice& lattice,
                                        const StaticField& field);

} // namespace pedmdp
