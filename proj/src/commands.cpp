#include "pedmdp/commands.hpp"

#include <cmath>
#include <iostream>

namespace pedmdp {

namespace {

std::string fmt_cells(const std::vector<int>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i)
        s += (i ? "," : "") + std::to_string(cells[i]);
    return s.empty() ? "-" : s;
}

} // namespace

void cmd_analyze(const AnalyzeOptions& opt) {
    const auto records = load_trajectories(opt.trajectories);
    if (records.empty())
        throw InputError("no trajectories in " + opt.trajectories);
    for (const auto& rec : records)
        if (rec.samples.size() < 2)
            throw InputError("pedestrian '" + rec.ped_id + "': need >= 2 samples");

    std::vector<MotionStep> steps;
    for (const auto& rec : records) {
        auto s = discretize(rec, opt.dt);
        annotate_angles(s, opt.exit);
        steps.insert(steps.end(), s.begin(), s.end());
    }
    std::vector<MotionStep> moving;
    for (const auto& s : steps)
        if (s.speed >= opt.speed_threshold)
            moving.push_back(s);

    const std::string stamp = stamp_line(
        "analyze", {{"trajectories", opt.trajectories},
                    {"exit", format_double(opt.exit.x) + ";" + format_double(opt.exit.y)},
                    {"dt", format_double(opt.dt)},
                    {"speed_threshold", format_double(opt.speed_threshold)},
                    {"angle_bins", std::to_string(opt.angle_bins)},
                    {"length_bins", std::to_string(opt.length_bins)},
                    {"kde_bandwidth", format_double(opt.kde_bandwidth)},
                    {"kde_points", std::to_string(opt.kde_points)}});

    atomic_write(opt.out_prefix + "_hist.csv",
                 histogram_to_csv(motion_histogram(steps, opt.angle_bins, opt.length_bins), stamp));
    atomic_write(opt.out_prefix + "_hist_filtered.csv",
                 histogram_to_csv(motion_histogram(moving, opt.angle_bins, opt.length_bins), stamp));
    atomic_write(opt.out_prefix + "_kde.csv",
                 kde_to_csv(direction_kde(moving, opt.kde_bandwidth, opt.kde_points), stamp));
    std::cout << "analyze: " << steps.size() << " steps (" << moving.size()
              << " above the speed threshold) from " << records.size() << " pedestrians\n";
}

void cmd_estimate(const EstimateOptions& opt) {
    const auto records = load_trajectories(opt.trajectories);
    if (records.empty())
        throw InputError("no trajectories in " + opt.trajectories);
    WallGeometry walls;
    if (!opt.walls.empty())
        walls = load_walls(opt.walls);

    const auto observations = build_observations(records, opt.exit, walls, opt.observation);
    if (observations.empty())
        throw InputError("no observations could be extracted");

    const std::string stamp = stamp_line(
        "estimate", {{"trajectories", opt.trajectories},
                     {"walls", opt.walls.empty() ? "-" : opt.walls},
                     {"exit", format_double(opt.exit.x) + ";" + format_double(opt.exit.y)},
                     {"dt", format_double(opt.observation.dt)},
                     {"radius", format_double(opt.observation.radius)},
                     {"wall_frac", format_double(opt.observation.wall_frac)},
                     {"speed_threshold", format_double(opt.observation.speed_threshold)},
                     {"include_exited", opt.observation.include_exited ? "1" : "0"},
                     {"prior_strength", format_double(opt.prior_strength)},
                     {"lambda", format_double(opt.lambda)}});

    const MixtureModel model = fit(observations, opt.prior_strength, opt.lambda);
    atomic_write(opt.model_out, model_to_json(model, stamp).dump(2) + "\n");
    atomic_write(opt.report_out, model_report_csv(model, stamp));
    if (!opt.observations_out.empty())
        atomic_write(opt.observations_out, observations_to_csv(observations, stamp));
    std::cout << "estimate: " << observations.size() << " observations -> " << opt.model_out
              << "\n";
}

void cmd_simulate(const SimulateOptions& opt) {
    const Lattice lattice = load_lattice(opt.lattice);
    const StaticField field = build_static_field(lattice);
    if (opt.steps < 0)
        throw InputError("step count must be >= 0");
    const CrowdState initial = CrowdState::of(opt.initial);
    OccupancyGrid grid = OccupancyGrid::from(initial, lattice);

    std::mt19937_64 rng(opt.seed);
    std::vector<OccupancyGrid> trace{grid};
    for (int t = 0; t < opt.steps; ++t) {
        grid = simulate_step(grid, field, lattice, rng);
        trace.push_back(grid);
    }

    const std::string stamp =
        stamp_line("simulate", {{"lattice", opt.lattice},
                                {"initial", fmt_cells(opt.initial)},
                                {"steps", std::to_string(opt.steps)},
                                {"seed", std::to_string(opt.seed)}});
    atomic_write(opt.out, trace_to_csv(trace, lattice, stamp));
    std::cout << "simulate: " << opt.steps << " steps, " << trace.back().count()
              << " particles remaining\n";
}

void cmd_optimize(const OptimizeOptions& opt) {
    const Lattice lattice = load_lattice(opt.lattice);
    const StaticField field = build_static_field(lattice);
    if (opt.initial_state.empty())
        throw InputError("initial state required: agent cell followed by particle cells");
    const int x0 = opt.initial_state.front();
    if (x0 < 1 || x0 > lattice.cell_count() || lattice.is_blocked(x0))
        throw InputError("agent start cell is invalid");
    const CrowdState z0 =
        CrowdState::of({opt.initial_state.begin() + 1, opt.initial_state.end()});
    if (z0.contains(x0))
        throw InputError("agent start cell collides with a particle");
    for (int cell : z0.cells)
        if (cell == lattice.exit_index())
            throw InputError("particles cannot start on the exit cell");
    const FullState s0{x0, z0};
    OccupancyGrid::from(z0, lattice); // validates particle cells

    const int dense_n = std::max(opt.particles, static_cast<int>(z0.size()));
    const RewardModel model{opt.reward, opt.terminal_factor};
    std::vector<FullState> states;
    try {
        states = enumerate_states(lattice, dense_n, opt.capacity);
    } catch (const CapacityError&) {
        // dense space too large; expand only what s0 can reach
        states = reachable_states(s0, lattice, field, opt.capacity);
        std::cout << "dense state space exceeds the cap; solving over " << states.size()
                  << " reachable states\n";
    }
    const SolveResult result =
        backward_induction(lattice, field, model, opt.horizon, states, opt.capacity);

    const std::string stamp = stamp_line(
        "optimize", {{"lattice", opt.lattice},
                     {"initial_state", fmt_cells(opt.initial_state)},
                     {"particles", std::to_string(dense_n)},
                     {"horizon", std::to_string(opt.horizon)},
                     {"reward", to_string(opt.reward)},
                     {"terminal_factor", format_double(opt.terminal_factor)}});
    atomic_write(opt.policy_out, policy_to_json(result, model, stamp).dump(2) + "\n");

    const PolicyEvaluation eval =
        evaluate_policy(result.decision, lattice, field, model, opt.horizon, s0);
    std::cout << "value_at_start=" << format_double(result.value[1].at(s0)) << "\n"
              << "expected_total_reward=" << format_double(eval.expected_total_reward) << "\n"
              << "expected_steps_to_exit=" << format_double(eval.expected_steps_to_exit) << "\n"
              << "expected_lost_conflicts=" << format_double(eval.expected_lost_conflicts) << "\n";

    if (opt.oracle_check) {
        const double oracle = brute_force_value(lattice, field, model, opt.horizon, s0);
        const double solver = result.value[1].at(s0);
        std::cout << "oracle_value=" << format_double(oracle)
                  << " solver_value=" << format_double(solver)
                  << " diff=" << format_double(std::abs(oracle - solver)) << "\n";
        if (std::abs(oracle - solver) > 1e-9)
            throw std::logic_error("solver disagrees with the brute-force oracle");
    }
}

} // namespace pedmdp
