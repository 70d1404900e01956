#pragma once

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "pedmdp/environment.hpp"

// Independent enumeration of per-particle move combinations: plain odometer
// over all 3x3 offsets, no reuse of the library's neighbor machinery.
inline double oracle_dist(pedmdp::Metric m, pedmdp::GridPos a, pedmdp::GridPos b) {
    const int dc = std::abs(a.col - b.col);
    const int dr = std::abs(a.row - b.row);
    if (m == pedmdp::Metric::Chebyshev)
        return std::max(dc, dr);
    if (m == pedmdp::Metric::Manhattan)
        return dc + dr;
    return std::sqrt(static_cast<double>(dc * dc + dr * dr));
}

inline std::map<pedmdp::CrowdState, double> oracle_crowd_transition(int x,
                                                                    const pedmdp::CrowdState& z,
                                                                    const pedmdp::Lattice& lat) {
    using pedmdp::CrowdState;
    using pedmdp::GridPos;

    std::vector<std::vector<int>> options;
    for (int cell : z.cells) {
        const GridPos p = lat.index_to_pos(cell);
        std::vector<int> opts;
        for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
                const GridPos q{p.col + dc, p.row + dr};
                if (!lat.in_bounds(q) || lat.is_blocked(q))
                    continue;
                if (oracle_dist(lat.metric(), p, q) > 1.0)
                    continue;
                const int target = lat.cell_index(q);
                if (target == x)
                    continue;
                opts.push_back(target);
            }
        }
        options.push_back(opts);
    }

    std::set<CrowdState> reachable;
    if (options.empty()) {
        reachable.insert(CrowdState{});
    } else {
        std::vector<std::size_t> odo(options.size(), 0);
        while (true) {
            std::vector<int> targets;
            for (std::size_t j = 0; j < options.size(); ++j)
                targets.push_back(options[j][odo[j]]);
            std::set<int> distinct(targets.begin(), targets.end());
            if (distinct.size() == targets.size()) {
                std::vector<int> kept;
                for (int t : targets)
                    if (t != lat.exit_index())
                        kept.push_back(t);
                reachable.insert(CrowdState::of(kept));
            }
            std::size_t j = 0;
            for (; j < odo.size(); ++j) {
                if (++odo[j] < options[j].size())
                    break;
                odo[j] = 0;
            }
            if (j == odo.size())
                break;
        }
    }

    std::map<CrowdState, double> out;
    double total = 0.0;
    for (const auto& znext : reachable) {
        double u = 0.0;
        for (int cell : znext.cells)
            u += oracle_dist(lat.metric(), lat.index_to_pos(cell), lat.exit());
        const double w = std::exp(-u);
        out[znext] = w;
        total += w;
    }
    for (auto& [znext, p] : out)
        p /= total;
    return out;
}
