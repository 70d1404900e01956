#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pedmdp/io.hpp"

namespace pedmdp {

struct AnalyzeOptions {
    std::string trajectories;
    Vec2 exit;
    double dt = 1.0;
    double speed_threshold = 0.5;
    int angle_bins = 36;
    int length_bins = 30;
    double kde_bandwidth = 0.0; // <= 0 selects Silverman's rule
    int kde_points = 360;
    std::string out_prefix = "analysis";
};

// Writes <prefix>_hist.csv, <prefix>_hist_filtered.csv and <prefix>_kde.csv
// (the KDE runs on the speed-filtered steps).
void cmd_analyze(const AnalyzeOptions& opt);

struct EstimateOptions {
    std::string trajectories;
    std::string walls; // empty = no wall geometry
    Vec2 exit;
    ObservationOptions observation;
    double prior_strength = 1.0;
    double lambda = 0.99;
    std::string model_out = "model.json";
    std::string report_out = "report.csv";
    std::string observations_out; // optional dump
};

void cmd_estimate(const EstimateOptions& opt);

struct SimulateOptions {
    std::string lattice;
    std::vector<int> initial;
    int steps = 100;
    std::uint64_t seed = 1;
    std::string out = "trace.csv";
};

void cmd_simulate(const SimulateOptions& opt);

struct OptimizeOptions {
    std::string lattice;
    std::vector<int> initial_state; // agent cell, then particle cells
    int particles = -1;             // dense space size; -1 = particle count of s0
    int horizon = 10;
    RewardKind reward = RewardKind::Time;
    double terminal_factor = 2.0;
    std::size_t capacity = 5'000'000;
    bool oracle_check = false;
    std::string policy_out = "policy.json";
};

void cmd_optimize(const OptimizeOptions& opt);

} // namespace pedmdp
