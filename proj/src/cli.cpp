#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "pedmdp/cli.hpp"

#include "pedmdp/commands.hpp"

namespace pedmdp {

namespace {

// `--config file.json` provides defaults; explicitly passed flags win.
void apply_config(CLI::App* cmd, const std::string& config_path) {
    if (config_path.empty())
        return;
    const auto j = nlohmann::json::parse(read_file(config_path), nullptr, true, true);
    if (!j.is_object())
        throw InputError("config file must hold a JSON object");
    for (const auto& [key, value] : j.items()) {
        CLI::Option* opt = cmd->get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw InputError("config key '" + key + "' matches no option of this command");
        if (opt->count() > 0)
            continue; // explicit flag overrides config
        if (value.is_array()) {
            std::vector<std::string> items;
            for (const auto& v : value)
                items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            opt->add_result(items);
        } else {
            opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
        }
        opt->run_callback();
    }
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Pedestrian decision-process toolkit: trajectory analysis, mixture "
                 "estimation, floor-field simulation, and finite-horizon optimization",
                 "pedmdp"};
    app.require_subcommand(1);

    AnalyzeOptions analyze;
    std::string analyze_config;
    std::vector<double> analyze_exit{0.0, 0.0};
    auto* cmd_a = app.add_subcommand("analyze", "Direction/length histograms and direction KDE");
    cmd_a->add_option("--trajectories", analyze.trajectories, "Trajectory CSV (ped_id,t,x,y)")
        ->required();
    cmd_a->add_option("--exit", analyze_exit, "Exit position in meters: x y")->expected(2);
    cmd_a->add_option("--dt", analyze.dt, "Discretization step in seconds");
    cmd_a->add_option("--speed-threshold", analyze.speed_threshold, "Standing threshold in m/s");
    cmd_a->add_option("--angle-bins", analyze.angle_bins, "Histogram angle bins");
    cmd_a->add_option("--length-bins", analyze.length_bins, "Histogram length bins");
    cmd_a->add_option("--kde-bandwidth", analyze.kde_bandwidth, "KDE bandwidth (0 = automatic)");
    cmd_a->add_option("--kde-points", analyze.kde_points, "KDE grid points");
    cmd_a->add_option("--out-prefix", analyze.out_prefix, "Output file prefix");
    cmd_a->add_option("--config", analyze_config, "JSON config with option defaults");

    EstimateOptions estimate;
    std::string estimate_config;
    std::vector<double> estimate_exit{0.0, 0.0};
    auto* cmd_e = app.add_subcommand("estimate", "Fit the mixture decision model");
    cmd_e->add_option("--trajectories", estimate.trajectories, "Trajectory CSV (ped_id,t,x,y)")
        ->required();
    cmd_e->add_option("--walls", estimate.walls, "Wall geometry JSON");
    cmd_e->add_option("--exit", estimate_exit, "Exit position in meters: x y")->expected(2);
    cmd_e->add_option("--dt", estimate.observation.dt, "Discretization step in seconds");
    cmd_e->add_option("--radius", estimate.observation.radius, "Neighborhood radius in meters");
    cmd_e->add_option("--wall-frac", estimate.observation.wall_frac,
                      "Wall coverage fraction that marks a sector occupied");
    cmd_e->add_option("--speed-threshold", estimate.observation.speed_threshold,
                      "Standing threshold in m/s");
    cmd_e->add_flag("--include-exited", estimate.observation.include_exited,
                    "Keep counting pedestrians after they passed the exit");
    cmd_e->add_option("--prior-strength", estimate.prior_strength, "Dirichlet prior strength");
    cmd_e->add_option("--lambda", estimate.lambda, "Forgetting factor in (0, 1]");
    cmd_e->add_option("--model-out", estimate.model_out, "Model JSON output path");
    cmd_e->add_option("--report-out", estimate.report_out, "Report CSV output path");
    cmd_e->add_option("--dump-observations", estimate.observations_out,
                      "Optional observation CSV dump path");
    cmd_e->add_option("--config", estimate_config, "JSON config with option defaults");

    SimulateOptions simulate;
    std::string simulate_config;
    auto* cmd_s = app.add_subcommand("simulate", "Run the floor-field particle dynamics");
    cmd_s->add_option("--lattice", simulate.lattice, "Lattice config JSON")->required();
    cmd_s->add_option("--initial", simulate.initial, "Initial particle cells")->delimiter(',');
    cmd_s->add_option("--steps", simulate.steps, "Number of update steps");
    cmd_s->add_option("--seed", simulate.seed, "RNG seed");
    cmd_s->add_option("--out", simulate.out, "Trace CSV output path");
    cmd_s->add_option("--config", simulate_config, "JSON config with option defaults");

    OptimizeOptions optimize;
    std::string optimize_config;
    std::string optimize_reward = "time";
    auto* cmd_o = app.add_subcommand("optimize", "Backward-induction strategy for one agent");
    cmd_o->add_option("--lattice", optimize.lattice, "Lattice config JSON")->required();
    cmd_o->add_option("--initial-state", optimize.initial_state,
                      "Agent cell followed by particle cells")
        ->delimiter(',');
    cmd_o->add_option("--particles", optimize.particles,
                      "Dense state-space particle count (default: from --initial-state)");
    cmd_o->add_option("--horizon", optimize.horizon, "Optimization horizon T");
    cmd_o->add_option("--reward", optimize_reward, "Reward model: time|co");
    cmd_o->add_option("--terminal-factor", optimize.terminal_factor,
                      "Terminal distance penalty factor");
    cmd_o->add_option("--capacity", optimize.capacity, "State-space size cap");
    cmd_o->add_flag("--oracle-check", optimize.oracle_check,
                    "Cross-check the start value against brute-force expectimax");
    cmd_o->add_option("--policy-out", optimize.policy_out, "Policy JSON output path");
    cmd_o->add_option("--config", optimize_config, "JSON config with option defaults");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (cmd_a->parsed()) {
            apply_config(cmd_a, analyze_config);
            analyze.exit = {analyze_exit[0], analyze_exit[1]};
            cmd_analyze(analyze);
        } else if (cmd_e->parsed()) {
            apply_config(cmd_e, estimate_config);
            estimate.exit = {estimate_exit[0], estimate_exit[1]};
            cmd_estimate(estimate);
        } else if (cmd_s->parsed()) {
            apply_config(cmd_s, simulate_config);
            cmd_simulate(simulate);
        } else if (cmd_o->parsed()) {
            apply_config(cmd_o, optimize_config);
            optimize.reward = reward_from_string(optimize_reward);
            cmd_optimize(optimize);
        }
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const InputError& e) {
        std::cerr << "pedmdp: input error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "pedmdp: capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "pedmdp: internal error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace pedmdp
