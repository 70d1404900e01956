#include "pedmdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace pedmdp {

std::string to_string(const FullState& s) {
    std::ostringstream os;
    os << "x=" << s.x << " z=[";
    for (std::size_t i = 0; i < s.z.cells.size(); ++i)
        os << (i ? "," : "") << s.z.cells[i];
    os << "]";
    return os.str();
}

GridPos action_displacement(int a) {
    switch (a) {
    case 1: return {0, 0};
    case 2: return {-1, 0};
    case 3: return {-1, -1};
    case 4: return {0, -1};
    case 5: return {1, -1};
    case 6: return {1, 0};
    case 7: return {1, 1};
    case 8: return {0, 1};
    case 9: return {-1, 1};
    }
    throw std::out_of_range("clever action must be in 1..9");
}

const char* to_string(RewardKind k) { return k == RewardKind::Time ? "time" : "co"; }

RewardKind reward_from_string(const std::string& name) {
    if (name == "time") return RewardKind::Time;
    if (name == "co") return RewardKind::CO;
    throw InputError("unknown reward kind: " + name);
}

namespace {

// Chosen target cell of action a from x, or 0 when it leaves the lattice.
int chosen_target(int x, int a, const Lattice& lattice) {
    const GridPos d = action_displacement(a);
    const GridPos from = lattice.index_to_pos(x);
    const GridPos to{from.col + d.col, from.row + d.row};
    if (!lattice.in_bounds(to))
        return 0;
    return lattice.cell_index(to);
}

} // namespace

int clever_move(int x, int a, const CrowdState& z_next, const Lattice& lattice) {
    const int target = chosen_target(x, a, lattice);
    if (target == 0 || lattice.is_blocked(target) || z_next.contains(target))
        return x;
    return target;
}

std::vector<std::pair<FullState, double>> full_transition(const FullState& s, int a,
                                                          const Lattice& lattice,
                                                          const StaticField& field) {
    const bool at_exit = s.x == lattice.exit_index();
    std::map<FullState, double> merged;
    for (const auto& [znext, p] : crowd_transition(s.x, s.z, lattice, field)) {
        const int xnext = at_exit ? s.x : clever_move(s.x, a, znext, lattice);
        merged[FullState{xnext, znext}] += p;
    }
    return {merged.begin(), merged.end()};
}

double local_reward(const RewardModel& model, const FullState& s, int a, const FullState& s_next,
                    const Lattice& lattice) {
    if (s.x == lattice.exit_index())
        return 0.0;
    if (model.kind == RewardKind::Time)
        return -1.0;
    if (a == 1)
        return -0.5;
    const int target = chosen_target(s.x, a, lattice);
    return (target != 0 && s_next.z.contains(target)) ? -2.0 : -1.0;
}

double expected_reward(const RewardModel& model, const FullState& s, int a,
                       const std::vector<std::pair<FullState, double>>& transition,
                       const Lattice& lattice) {
    double r = 0.0;
    for (const auto& [snext, p] : transition)
        r += p * local_reward(model, s, a, snext, lattice);
    return r;
}

double terminal_reward(const FullState& s, const StaticField& field, double terminal_factor) {
    return -terminal_factor * field.at(s.x);
}

double q_value(const RewardModel& model, const FullState& s, int a, const Lattice& lattice,
               const StaticField& field, const std::map<FullState, double>& value_next) {
    double q = 0.0;
    for (const auto& [snext, p] : full_transition(s, a, lattice, field))
        q += p * (local_reward(model, s, a, snext, lattice) + value_next.at(snext));
    return q;
}

std::vector<FullState> enumerate_states(const Lattice& lattice, int max_particles,
                                        std::size_t cap) {
    if (max_particles < 0)
        throw InputError("particle count must be >= 0");
    const auto open = lattice.open_cells();
    const int exit_cell = lattice.exit_index();

    // Count before materializing.
    double count = 0.0;
    for ([[maybe_unused]] int x : open) {
        const int m = static_cast<int>(open.size()) - (x == exit_cell ? 1 : 2);
        double binom = 1.0;
        count += 1.0;
        for (int k = 1; k <= std::min(max_particles, m); ++k) {
            binom = binom * (m - k + 1) / k;
            count += binom;
        }
    }
    if (count > static_cast<double>(cap))
        throw CapacityError("state space needs " + std::to_string(static_cast<long long>(count)) +
                            " states, cap is " + std::to_string(cap));

    std::vector<FullState> states;
    for (int x : open) {
        std::vector<int> pool;
        for (int c : open)
            if (c != x && c != exit_cell)
                pool.push_back(c);
        std::vector<int> chosen;
        auto recurse = [&](auto&& self, std::size_t start) -> void {
            states.push_back(FullState{x, CrowdState::of(chosen)});
            if (static_cast<int>(chosen.size()) == max_particles)
                return;
            for (std::size_t i = start; i < pool.size(); ++i) {
                chosen.push_back(pool[i]);
                self(self, i + 1);
                chosen.pop_back();
            }
        };
        recurse(recurse, 0);
    }
    return states;
}

std::vector<FullState> reachable_states(const FullState& s0, const Lattice& lattice,
                                        const StaticField& field, std::size_t cap) {
    std::set<FullState> seen{s0};
    std::deque<FullState> frontier{s0};
    while (!frontier.empty()) {
        const FullState s = frontier.front();
        frontier.pop_front();
        for (int a = 1; a <= kNumCleverActions; ++a) {
            for (const auto& [snext, p] : full_transition(s, a, lattice, field)) {
                (void)p;
                if (seen.insert(snext).second) {
                    if (seen.size() > cap)
                        throw CapacityError("reachable state set exceeds cap of " +
                                            std::to_string(cap));
                    frontier.push_back(snext);
                }
            }
        }
    }
    return {seen.begin(), seen.end()};
}

SolveResult backward_induction(const Lattice& lattice, const StaticField& field,
                               const RewardModel& model, int horizon,
                               const std::vector<FullState>& states, std::size_t capacity) {
    if (horizon < 1)
        throw InputError("horizon must be >= 1");
    if (states.size() > capacity)
        throw CapacityError("state space of " + std::to_string(states.size()) +
                            " states exceeds cap of " + std::to_string(capacity));

    SolveResult result;
    result.horizon = horizon;
    result.value.resize(horizon + 1);
    result.decision.resize(std::max(horizon, 1));

    auto& terminal = result.value[horizon];
    for (const auto& s : states)
        terminal[s] = terminal_reward(s, field, model.terminal_factor);

    for (int t = horizon - 1; t >= 1; --t) {
        const auto& next = result.value[t + 1];
        auto& value_t = result.value[t];
        auto& decision_t = result.decision[t];
        for (const auto& s : states) {
            double best = -std::numeric_limits<double>::infinity();
            int best_action = 1;
            for (int a = 1; a <= kNumCleverActions; ++a) {
                const double q = q_value(model, s, a, lattice, field, next);
                if (q > best) {
                    best = q;
                    best_action = a;
                }
            }
            value_t[s] = best;
            decision_t[s] = best_action;
        }
    }
    return result;
}

namespace {

double expectimax(const Lattice& lattice, const StaticField& field, const RewardModel& model,
                  int horizon, int t, const FullState& s, std::size_t node_cap,
                  std::size_t& nodes) {
    if (++nodes > node_cap)
        throw CapacityError("brute-force tree exceeds " + std::to_string(node_cap) + " nodes");
    if (t == horizon)
        return terminal_reward(s, field, model.terminal_factor);
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 1; a <= kNumCleverActions; ++a) {
        double q = 0.0;
        for (const auto& [snext, p] : full_transition(s, a, lattice, field))
            q += p * (local_reward(model, s, a, snext, lattice) +
                      expectimax(lattice, field, model, horizon, t + 1, snext, node_cap, nodes));
        best = std::max(best, q);
    }
    return best;
}

} // namespace

double brute_force_value(const Lattice& lattice, const StaticField& field,
                         const RewardModel& model, int horizon, const FullState& s0,
                         std::size_t node_cap) {
    if (horizon < 1)
        throw InputError("horizon must be >= 1");
    std::size_t nodes = 0;
    return expectimax(lattice, field, model, horizon, 1, s0, node_cap, nodes);
}

PolicyEvaluation evaluate_policy(const Policy& policy, const Lattice& lattice,
                                 const StaticField& field, const RewardModel& model, int horizon,
                                 const FullState& s0) {
    if (horizon < 1)
        throw InputError("horizon must be >= 1");
    const int exit_cell = lattice.exit_index();
    PolicyEvaluation out;
    std::map<FullState, double> dist{{s0, 1.0}};
    for (int t = 1; t < horizon; ++t) {
        std::map<FullState, double> next_dist;
        for (const auto& [s, ps] : dist) {
            if (static_cast<std::size_t>(t) >= policy.size() || !policy[t].contains(s))
                throw std::invalid_argument("policy undefined at t=" + std::to_string(t) + " " +
                                            to_string(s));
            const int a = policy[t].at(s);
            const bool off_exit = s.x != exit_cell;
            if (off_exit)
                out.expected_steps_to_exit += ps;
            const int target = off_exit && a != 1 ? chosen_target(s.x, a, lattice) : 0;
            for (const auto& [snext, p] : full_transition(s, a, lattice, field)) {
                out.expected_total_reward += ps * p * local_reward(model, s, a, snext, lattice);
                if (target != 0 && snext.z.contains(target))
                    out.expected_lost_conflicts += ps * p;
                next_dist[snext] += ps * p;
            }
        }
        dist = std::move(next_dist);
    }
    for (const auto& [s, ps] : dist)
        out.expected_total_reward += ps * terminal_reward(s, field, model.terminal_factor);
    return out;
}

} // namespace pedmdp
