#pragma once

#include <array>
#include <vector>

#include "pedmdp/neighborhood.hpp"

namespace pedmdp {

// Per-sector marginal decision table: theta[a][v] is the probability of
// action a given the sector's occupancy bit v. Each column over a sums to 1.
struct ComponentTable {
    std::array<std::array<double, 2>, kNumActions> theta{};

    double at(ActionLabel a, int v) const {
        return theta[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
    }
};

// Convex combination of the 6 per-sector tables: p(a | s) = sum_y alpha[y] *
// theta_y(a | s(y)).
struct MixtureModel {
    std::array<double, kNumSectors> alpha{};
    std::array<ComponentTable, kNumSectors> components{};

    void validate(double tol = 1e-12) const; // throws std::logic_error
};

// Dirichlet-style pseudo-count state of the recursive estimator.
struct EstimatorState {
    // counts[y][a][v]
    std::array<std::array<std::array<double, 2>, kNumActions>, kNumSectors> counts{};
    std::array<double, kNumSectors> kappa{};
    double prior_strength = 1.0;
    double lambda = 1.0; // forgetting factor; 1 = pure accumulation
};

// Uniform prior: counts[y][a][v] = prior_strength / 7, kappa[y] =
// prior_strength.
EstimatorState init_prior(double prior_strength, double lambda);

// Posterior component weights for one observation:
// w_y \propto (kappa_y / sum kappa) * theta_hat_y(a | s(y)), normalized.
std::array<double, kNumSectors> responsibilities(const EstimatorState& state, SectorState s,
                                                 ActionLabel a);

// Exponential forgetting toward the prior, then add the responsibilities to
// the matching pseudo-counts.
void apply_update(EstimatorState& state, SectorState s, ActionLabel a,
                  const std::array<double, kNumSectors>& w);

// One quasi-Bayes step: responsibilities, forgetting, increment.
void update(EstimatorState& state, SectorState s, ActionLabel a);
inline void update(EstimatorState& state, const Observation& obs) {
    update(state, obs.state, obs.action);
}

MixtureModel point_estimate(const EstimatorState& state);

// p(a | s) for all 7 actions.
std::array<double, kNumActions> predict(const MixtureModel& model, SectorState s);

// Sequential fold of update over the observations in time order (stable on
// ties), then point_estimate. Throws InputError on empty input.
MixtureModel fit(std::vector<Observation> observations, double prior_strength = 1.0,
                 double lambda = 0.99);

} // namespace pedmdp
