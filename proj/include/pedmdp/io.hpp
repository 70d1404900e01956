#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pedmdp/lattice.hpp"
#include "pedmdp/mdp.hpp"
#include "pedmdp/mixture.hpp"
#include "pedmdp/neighborhood.hpp"
#include "pedmdp/trajectory.hpp"

namespace pedmdp {

// Shortest round-trip decimal form.
std::string format_double(double v);

// "# pedmdp <command> k=v k=v ..." written as the first line of every
// CSV artifact; the same string goes into the "stamp" field of JSON ones.
using ParamList = std::vector<std::pair<std::string, std::string>>;
std::string stamp_line(const std::string& command, const ParamList& params);

// Write via a temp file in the same directory, then rename into place.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// {"width", "height", "exit": [col,row], "blocked": [[col,row],...],
//  "metric": "chebyshev"|"euclidean"|"manhattan"}
Lattice lattice_from_json(const nlohmann::json& j);
nlohmann::json lattice_to_json(const Lattice& lattice);
Lattice load_lattice(const std::string& path);

// {"polygons": [[[x,y],...], ...]} in meters
WallGeometry walls_from_json(const nlohmann::json& j);
WallGeometry load_walls(const std::string& path);

// Header `ped_id,t,x,y`, one row per raw sample, SI units. Lines starting
// with '#' are skipped. Rows of one pedestrian must be in time order.
std::vector<PathRecord> load_trajectories(const std::string& path);
std::string trajectories_to_csv(const std::vector<PathRecord>& records);

// {"alpha": [6], "theta": [6][7][2]}
nlohmann::json model_to_json(const MixtureModel& model, const std::string& stamp = {});
MixtureModel model_from_json(const nlohmann::json& j);

// Table-style report: 6 regressor column pairs (empty/occupied), an alpha
// row, then one row per action.
std::string model_report_csv(const MixtureModel& model, const std::string& stamp = {});

std::string observations_to_csv(const std::vector<Observation>& observations,
                                const std::string& stamp = {});

std::string histogram_to_csv(const Histogram2D& hist, const std::string& stamp = {});
std::string kde_to_csv(const KdeResult& kde, const std::string& stamp = {});

// One row per cell per step: `t,cell_index,occupied`.
std::string trace_to_csv(const std::vector<OccupancyGrid>& trace, const Lattice& lattice,
                         const std::string& stamp = {});

// {"T", "reward", "terminal_factor", "decisions": [{"t","x","z","a","v"}...]}
nlohmann::json policy_to_json(const SolveResult& result, const RewardModel& model,
                              const std::string& stamp = {});

} // namespace pedmdp
