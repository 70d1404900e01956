#pragma once

#include <map>
#include <string>
#include <vector>

#include "pedmdp/environment.hpp"

namespace pedmdp {

// Joint state of the clever agent (cell x) and the ordinary particles (z).
struct FullState {
    int x = 0;
    CrowdState z;

    auto operator<=>(const FullState&) const = default;
};

std::string to_string(const FullState& s);

// Absolute action set of the clever agent: 1 = stay, 2..9 the Moore
// neighbors starting one column left and continuing clockwise:
//   2 (-1, 0)   3 (-1,-1)   4 (0,-1)   5 (1,-1)
//   6 ( 1, 0)   7 ( 1, 1)   8 (0, 1)   9 (-1, 1)
constexpr int kNumCleverActions = 9;

GridPos action_displacement(int a); // throws std::out_of_range outside 1..9

enum class RewardKind { Time, CO };

const char* to_string(RewardKind k);
RewardKind reward_from_string(const std::string& name);

struct RewardModel {
    RewardKind kind = RewardKind::Time;
    double terminal_factor = 2.0;
};

// Deterministic move applied after the crowd settled: the displaced target
// is taken when open and free of particles, otherwise the agent stays.
int clever_move(int x, int a, const CrowdState& z_next, const Lattice& lattice);

// Crowd step then deterministic agent move; duplicate outcomes merged. The
// exit is absorbing for the agent: once on it, every action degenerates to
// stay.
std::vector<std::pair<FullState, double>> full_transition(const FullState& s, int a,
                                                          const Lattice& lattice,
                                                          const StaticField& field);

// Reward of one realized transition. Time charges -1 per step spent off the
// exit. CO charges -1/2 for staying, -1 for a free move, and -2 when the
// chosen target cell ends up occupied by a particle (judged on the chosen
// target even when the move degenerated to stay).
double local_reward(const RewardModel& model, const FullState& s, int a, const FullState& s_next,
                    const Lattice& lattice);

double expected_reward(const RewardModel& model, const FullState& s, int a,
                       const std::vector<std::pair<FullState, double>>& transition,
                       const Lattice& lattice);

// -terminal_factor * dist(x, exit); independent of the crowd.
double terminal_reward(const FullState& s, const StaticField& field, double terminal_factor = 2.0);

// One-step lookahead value of (s, a) against the epoch-(t+1) value table.
double q_value(const RewardModel& model, const FullState& s, int a, const Lattice& lattice,
               const StaticField& field, const std::map<FullState, double>& value_next);

// decision[t] for t = 1..T-1
using Policy = std::vector<std::map<FullState, int>>;

struct SolveResult {
    int horizon = 0;
    std::vector<std::map<FullState, double>> value; // value[t] for t = 1..T
    Policy decision;

    double v(int t, const FullState& s) const { return value.at(t).at(s); }
    int action(int t, const FullState& s) const { return decision.at(t).at(s); }
};

// Every FullState with at most max_particles particles: x on any open cell,
// particles on open non-exit cells distinct from x. Throws CapacityError
// when the enumeration would exceed the cap.
std::vector<FullState> enumerate_states(const Lattice& lattice, int max_particles,
                                        std::size_t cap = 5'000'000);

// Closure of s0 under all actions and crowd moves.
std::vector<FullState> reachable_states(const FullState& s0, const Lattice& lattice,
                                        const StaticField& field, std::size_t cap = 5'000'000);

// Finite-horizon backward induction over the given state set, which must be
// closed under transitions. Ties break toward the smallest action index.
SolveResult backward_induction(const Lattice& lattice, const StaticField& field,
                               const RewardModel& model, int horizon,
                               const std::vector<FullState>& states,
                               std::size_t capacity = 5'000'000);

// Independent expectimax over the full outcome tree from s0; no value table,
// no memoization. Throws CapacityError past node_cap visited nodes.
double brute_force_value(const Lattice& lattice, const StaticField& field,
                         const RewardModel& model, int horizon, const FullState& s0,
                         std::size_t node_cap = 10'000'000);

struct PolicyEvaluation {
    double expected_total_reward = 0.0;
    double expected_steps_to_exit = 0.0;   // sum over t < T of P(x_t != exit)
    double expected_lost_conflicts = 0.0;  // chosen target occupied after the crowd moved
};

// Exact forward propagation of the state distribution under the policy.
PolicyEvaluation evaluate_policy(const Policy& policy, const Lattice& lattice,
                                 const StaticField& field, const RewardModel& model, int horizon,
                                 const FullState& s0);

} // namespace pedmdp
