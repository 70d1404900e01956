#include "pedmdp/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace pedmdp {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string stamp_line(const std::string& command, const ParamList& params) {
    std::ostringstream os;
    os << "# pedmdp " << command;
    for (const auto& [k, v] : params)
        os << ' ' << k << '=' << v;
    return os.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream ofs(tmp, std::ios::binary | std::ios::trunc);
        if (!ofs)
            throw InputError("cannot write to " + tmp.string());
        ofs << content;
    }
    std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs)
        throw InputError("cannot open " + path);
    std::ostringstream os;
    os << ifs.rdbuf();
    return os.str();
}

namespace {

nlohmann::json parse_json(const std::string& text, const std::string& what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(what + ": " + e.what());
    }
}

} // namespace

Lattice lattice_from_json(const nlohmann::json& j) {
    try {
        const int width = j.at("width").get<int>();
        const int height = j.at("height").get<int>();
        const auto e = j.at("exit");
        const GridPos exit{e.at(0).get<int>(), e.at(1).get<int>()};
        std::set<GridPos> blocked;
        if (j.contains("blocked"))
            for (const auto& b : j.at("blocked"))
                blocked.insert(GridPos{b.at(0).get<int>(), b.at(1).get<int>()});
        Metric metric = Metric::Chebyshev;
        if (j.contains("metric"))
            metric = metric_from_string(j.at("metric").get<std::string>());
        return Lattice(width, height, exit, std::move(blocked), metric);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad lattice config: ") + e.what());
    }
}

nlohmann::json lattice_to_json(const Lattice& lattice) {
    nlohmann::json j;
    j["width"] = lattice.width();
    j["height"] = lattice.height();
    j["exit"] = {lattice.exit().col, lattice.exit().row};
    auto blocked = nlohmann::json::array();
    for (int r = 0; r < lattice.height(); ++r)
        for (int c = 0; c < lattice.width(); ++c)
            if (lattice.is_blocked(GridPos{c, r}))
                blocked.push_back({c, r});
    j["blocked"] = blocked;
    j["metric"] = to_string(lattice.metric());
    return j;
}

Lattice load_lattice(const std::string& path) {
    return lattice_from_json(parse_json(read_file(path), "bad lattice file " + path));
}

WallGeometry walls_from_json(const nlohmann::json& j) {
    WallGeometry walls;
    try {
        if (j.contains("polygons")) {
            for (const auto& poly : j.at("polygons")) {
                std::vector<Vec2> points;
                for (const auto& p : poly)
                    points.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
                walls.polygons.push_back(std::move(points));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad wall geometry: ") + e.what());
    }
    walls.validate();
    return walls;
}

WallGeometry load_walls(const std::string& path) {
    return walls_from_json(parse_json(read_file(path), "bad wall file " + path));
}

std::vector<PathRecord> load_trajectories(const std::string& path) {
    std::ifstream ifs(path);
    if (!ifs)
        throw InputError("cannot open " + path);
    std::vector<PathRecord> records;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(ifs, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("ped_id,t,x,y", 0) != 0)
                throw InputError(path + ":" + std::to_string(line_no) +
                                 ": expected header ped_id,t,x,y");
            continue;
        }
        std::istringstream row(line);
        std::string ped_id, t_s, x_s, y_s;
        if (!std::getline(row, ped_id, ',') || !std::getline(row, t_s, ',') ||
            !std::getline(row, x_s, ',') || !std::getline(row, y_s))
            throw InputError(path + ":" + std::to_string(line_no) + ": expected ped_id,t,x,y");
        TrajectorySample sample;
        try {
            sample.t = std::stod(t_s);
            sample.pos = {std::stod(x_s), std::stod(y_s)};
        } catch (const std::exception&) {
            throw InputError(path + ":" + std::to_string(line_no) + ": malformed number");
        }
        auto [it, fresh] = index.try_emplace(ped_id, records.size());
        if (fresh)
            records.push_back(PathRecord{ped_id, {}});
        auto& rec = records[it->second];
        if (!rec.samples.empty() && sample.t <= rec.samples.back().t)
            throw InputError(path + ":" + std::to_string(line_no) +
                             ": sample times must increase within a pedestrian");
        rec.samples.push_back(sample);
    }
    return records;
}

std::string trajectories_to_csv(const std::vector<PathRecord>& records) {
    std::ostringstream os;
    os << "ped_id,t,x,y\n";
    for (const auto& rec : records)
        for (const auto& s : rec.samples)
            os << rec.ped_id << ',' << format_double(s.t) << ',' << format_double(s.pos.x) << ','
               << format_double(s.pos.y) << '\n';
    return os.str();
}

nlohmann::json model_to_json(const MixtureModel& model, const std::string& stamp) {
    nlohmann::ordered_json j;
    if (!stamp.empty())
        j["stamp"] = stamp;
    j["alpha"] = model.alpha;
    auto theta = nlohmann::json::array();
    for (int y = 0; y < kNumSectors; ++y) {
        auto table = nlohmann::json::array();
        for (int a = 0; a < kNumActions; ++a)
            table.push_back({model.components[y].theta[a][0], model.components[y].theta[a][1]});
        theta.push_back(table);
    }
    j["theta"] = theta;
    return j;
}

MixtureModel model_from_json(const nlohmann::json& j) {
    MixtureModel model;
    try {
        for (int y = 0; y < kNumSectors; ++y) {
            model.alpha[y] = j.at("alpha").at(y).get<double>();
            for (int a = 0; a < kNumActions; ++a)
                for (int v = 0; v < 2; ++v)
                    model.components[y].theta[a][v] = j.at("theta").at(y).at(a).at(v).get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad model file: ") + e.what());
    }
    return model;
}

std::string model_report_csv(const MixtureModel& model, const std::string& stamp) {
    std::ostringstream os;
    if (!stamp.empty())
        os << stamp << '\n';
    os << "regressor";
    for (int y = 0; y < kNumSectors; ++y) {
        const char* name = to_string(static_cast<Sector>(y));
        os << ',' << name << ',' << name;
    }
    os << "\noccupancy";
    for (int y = 0; y < kNumSectors; ++y)
        os << ",empty,occupied";
    os << "\nalpha";
    for (int y = 0; y < kNumSectors; ++y)
        os << ',' << format_double(model.alpha[y]) << ',';
    os << '\n';
    for (int a = 0; a < kNumActions; ++a) {
        os << to_string(static_cast<ActionLabel>(a));
        for (int y = 0; y < kNumSectors; ++y)
            os << ',' << format_double(model.components[y].theta[a][0]) << ','
               << format_double(model.components[y].theta[a][1]);
        os << '\n';
    }
    return os.str();
}

std::string observations_to_csv(const std::vector<Observation>& observations,
                                const std::string& stamp) {
    std::ostringstream os;
    if (!stamp.empty())
        os << stamp << '\n';
    os << "ped_id,t,s_fwd,s_fwdr,s_fwdl,s_right,s_left,s_back,action\n";
    for (const auto& obs : observations) {
        os << obs.ped_id << ',' << format_double(obs.t);
        for (int y = 0; y < kNumSectors; ++y)
            os << ',' << obs.state.bit(static_cast<Sector>(y));
        os << ',' << to_string(obs.action) << '\n';
    }
    return os.str();
}

std::string histogram_to_csv(const Histogram2D& hist, const std::string& stamp) {
    std::ostringstream os;
    if (!stamp.empty())
        os << stamp << '\n';
    os << "angle_lo,angle_hi,length_lo,length_hi,count\n";
    for (std::size_t a = 0; a + 1 < hist.angle_edges.size(); ++a)
        for (std::size_t l = 0; l + 1 < hist.length_edges.size(); ++l)
            os << format_double(hist.angle_edges[a]) << ',' << format_double(hist.angle_edges[a + 1])
               << ',' << format_double(hist.length_edges[l]) << ','
               << format_double(hist.length_edges[l + 1]) << ',' << hist.counts[a][l] << '\n';
    return os.str();
}

std::string kde_to_csv(const KdeResult& kde, const std::string& stamp) {
    std::ostringstream os;
    if (!stamp.empty())
        os << stamp << '\n';
    os << "angle,density\n";
    for (std::size_t i = 0; i < kde.angle.size(); ++i)
        os << format_double(kde.angle[i]) << ',' << format_double(kde.density[i]) << '\n';
    return os.str();
}

std::string trace_to_csv(const std::vector<OccupancyGrid>& trace, const Lattice& lattice,
                         const std::string& stamp) {
    std::ostringstream os;
    if (!stamp.empty())
        os << stamp << '\n';
    os << "t,cell_index,occupied\n";
    for (std::size_t t = 0; t < trace.size(); ++t)
        for (int cell = 1; cell <= lattice.cell_count(); ++cell)
            os << t << ',' << cell << ',' << (trace[t].occupied(cell) ? 1 : 0) << '\n';
    return os.str();
}

nlohmann::json policy_to_json(const SolveResult& result, const RewardModel& model,
                              const std::string& stamp) {
    nlohmann::ordered_json j;
    if (!stamp.empty())
        j["stamp"] = stamp;
    j["T"] = result.horizon;
    j["reward"] = to_string(model.kind);
    j["terminal_factor"] = model.terminal_factor;
    auto decisions = nlohmann::ordered_json::array();
    for (int t = 1; t < result.horizon; ++t) {
        for (const auto& [s, a] : result.decision[t]) {
            nlohmann::ordered_json d;
            d["t"] = t;
            d["x"] = s.x;
            d["z"] = s.z.cells;
            d["a"] = a;
            d["v"] = result.value[t].at(s);
            decisions.push_back(d);
        }
    }
    j["decisions"] = decisions;
    return j;
}

} // namespace pedmdp
