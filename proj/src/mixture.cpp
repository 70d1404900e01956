#include "pedmdp/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pedmdp {

void MixtureModel::validate(double tol) const {
    double alpha_sum = 0.0;
    for (double a : alpha) {
        if (a < 0.0)
            throw std::logic_error("mixture weight negative");
        alpha_sum += a;
    }
    if (std::abs(alpha_sum - 1.0) > tol)
        throw std::logic_error("mixture weights do not sum to 1");
    for (const auto& comp : components) {
        for (int v = 0; v < 2; ++v) {
            double col = 0.0;
            for (int a = 0; a < kNumActions; ++a) {
                const double p = comp.theta[a][v];
                if (p < 0.0)
                    throw std::logic_error("decision table entry negative");
                col += p;
            }
            if (std::abs(col - 1.0) > tol)
                throw std::logic_error("decision table column does not sum to 1");
        }
    }
}

EstimatorState init_prior(double prior_strength, double lambda) {
    if (prior_strength <= 0.0)
        throw InputError("prior strength must be positive");
    if (lambda <= 0.0 || lambda > 1.0)
        throw InputError("forgetting factor must be in (0, 1]");
    EstimatorState state;
    state.prior_strength = prior_strength;
    state.lambda = lambda;
    for (int y = 0; y < kNumSectors; ++y) {
        state.kappa[y] = prior_strength;
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                state.counts[y][a][v] = prior_strength / kNumActions;
    }
    return state;
}

std::array<double, kNumSectors> responsibilities(const EstimatorState& state, SectorState s,
                                                 ActionLabel a) {
    std::array<double, kNumSectors> w{};
    double kappa_sum = 0.0;
    for (double k : state.kappa)
        kappa_sum += k;
    double total = 0.0;
    for (int y = 0; y < kNumSectors; ++y) {
        const int v = s.bit(static_cast<Sector>(y));
        double col = 0.0;
        for (int b = 0; b < kNumActions; ++b)
            col += state.counts[y][b][v];
        const double theta_hat = state.counts[y][static_cast<std::size_t>(a)][v] / col;
        w[y] = state.kappa[y] / kappa_sum * theta_hat;
        total += w[y];
    }
    for (double& v : w)
        v /= total;
    return w;
}

void apply_update(EstimatorState& state, SectorState s, ActionLabel a,
                  const std::array<double, kNumSectors>& w) {
    const double lambda = state.lambda;
    const double prior_cell = state.prior_strength / kNumActions;
    for (int y = 0; y < kNumSectors; ++y) {
        for (int b = 0; b < kNumActions; ++b)
            for (int v = 0; v < 2; ++v)
                state.counts[y][b][v] = lambda * state.counts[y][b][v] + (1.0 - lambda) * prior_cell;
        state.kappa[y] = lambda * state.kappa[y] + (1.0 - lambda) * state.prior_strength;

        const int v = s.bit(static_cast<Sector>(y));
        state.counts[y][static_cast<std::size_t>(a)][v] += w[y];
        state.kappa[y] += w[y];
    }
}

void update(EstimatorState& state, SectorState s, ActionLabel a) {
    apply_update(state, s, a, responsibilities(state, s, a));
}

MixtureModel point_estimate(const EstimatorState& state) {
    MixtureModel model;
    double kappa_sum = 0.0;
    for (double k : state.kappa)
        kappa_sum += k;
    for (int y = 0; y < kNumSectors; ++y) {
        model.alpha[y] = state.kappa[y] / kappa_sum;
        for (int v = 0; v < 2; ++v) {
            double col = 0.0;
            for (int a = 0; a < kNumActions; ++a)
                col += state.counts[y][a][v];
            for (int a = 0; a < kNumActions; ++a)
                model.components[y].theta[a][v] = state.counts[y][a][v] / col;
        }
    }
    return model;
}

std::array<double, kNumActions> predict(const MixtureModel& model, SectorState s) {
    std::array<double, kNumActions> p{};
    for (int y = 0; y < kNumSectors; ++y) {
        const int v = s.bit(static_cast<Sector>(y));
        for (int a = 0; a < kNumActions; ++a)
            p[a] += model.alpha[y] * model.components[y].theta[a][v];
    }
    return p;
}

MixtureModel fit(std::vector<Observation> observations, double prior_strength, double lambda) {
    if (observations.empty())
        throw InputError("cannot fit a mixture on zero observations");
    std::stable_sort(observations.begin(), observations.end(),
                     [](const Observation& a, const Observation& b) { return a.t < b.t; });
    EstimatorState state = init_prior(prior_strength, lambda);
    for (const auto& obs : observations)
        update(state, obs);
    return point_estimate(state);
}

} // namespace pedmdp
