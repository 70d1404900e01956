#include "pedmdp/neighborhood.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

namespace pedmdp {

const char* to_string(Sector s) {
    switch (s) {
    case Sector::Fwd: return "fwd";
    case Sector::FwdRight: return "fwd_r";
    case Sector::FwdLeft: return "fwd_l";
    case Sector::Right: return "right";
    case Sector::Left: return "left";
    case Sector::Back: return "back";
    }
    return "?";
}

Sector sector_of_angle(double bearing) {
    switch (classify_angle(bearing)) {
    case ActionLabel::Fwd: return Sector::Fwd;
    case ActionLabel::FwdRight: return Sector::FwdRight;
    case ActionLabel::FwdLeft: return Sector::FwdLeft;
    case ActionLabel::Right: return Sector::Right;
    case ActionLabel::Left: return Sector::Left;
    default: return Sector::Back;
    }
}

ActionLabel action_of_sector(Sector s) {
    switch (s) {
    case Sector::Fwd: return ActionLabel::Fwd;
    case Sector::FwdRight: return ActionLabel::FwdRight;
    case Sector::FwdLeft: return ActionLabel::FwdLeft;
    case Sector::Right: return ActionLabel::Right;
    case Sector::Left: return ActionLabel::Left;
    case Sector::Back: return ActionLabel::Back;
    }
    return ActionLabel::Fwd;
}

int SectorState::bits() const {
    int b = 0;
    for (int i = 0; i < kNumSectors; ++i)
        if (occ[static_cast<std::size_t>(i)])
            b |= 1 << i;
    return b;
}

SectorState SectorState::from_bits(int bits) {
    SectorState s;
    for (int i = 0; i < kNumSectors; ++i)
        s.occ[static_cast<std::size_t>(i)] = (bits >> i) & 1;
    return s;
}

void WallGeometry::validate() const {
    for (const auto& poly : polygons) {
        if (poly.size() < 3)
            throw InputError("wall polygon needs at least 3 vertices");
    }
}

namespace {

bool point_in_polygon(Vec2 p, const std::vector<Vec2>& poly) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint)
                inside = !inside;
        }
    }
    return inside;
}

// Bearing sector angular spans; Back is the single contiguous arc
// (5pi/8, 11pi/8] once angles are unwrapped past pi.
struct AngularSpan {
    double lo;
    double hi;
};

AngularSpan sector_span(Sector s) {
    const double b1 = kPi / 8.0, b3 = 3.0 * kPi / 8.0, b5 = 5.0 * kPi / 8.0;
    switch (s) {
    case Sector::Fwd: return {-b1, b1};
    case Sector::FwdRight: return {-b3, -b1};
    case Sector::FwdLeft: return {b1, b3};
    case Sector::Right: return {-b5, -b3};
    case Sector::Left: return {b3, b5};
    case Sector::Back: return {b5, 2.0 * kPi - b5};
    }
    return {0.0, 0.0};
}

// Unit vector at the given bearing relative to the exit direction. Bearing 0
// points straight at the exit; the sign convention matches direction_angle.
Vec2 bearing_direction(Vec2 exit_dir, double bearing) {
    const double n = exit_dir.norm();
    const Vec2 e{exit_dir.x / n, exit_dir.y / n};
    const double c = std::cos(-bearing);
    const double s = std::sin(-bearing);
    return {c * e.x - s * e.y, s * e.x + c * e.y};
}

} // namespace

bool WallGeometry::contains(Vec2 p) const {
    for (const auto& poly : polygons)
        if (point_in_polygon(p, poly))
            return true;
    return false;
}

double sector_wall_fraction(Vec2 self, Vec2 exit, Sector sector, const WallGeometry& walls,
                            double radius, int samples) {
    if (walls.polygons.empty())
        return 0.0;
    const Vec2 exit_dir = exit - self;
    if (exit_dir.norm() == 0.0)
        throw std::domain_error("neighborhood undefined at the exit");
    const AngularSpan span = sector_span(sector);
    constexpr double kGolden = 0.6180339887498949;
    int covered = 0;
    for (int i = 0; i < samples; ++i) {
        // r ~ sqrt(u) is uniform in area; the golden-ratio angle sequence
        // keeps the point set even at any prefix length
        const double r = radius * std::sqrt((i + 0.5) / samples);
        double bearing = span.lo + (span.hi - span.lo) * std::fmod((i + 0.5) * kGolden, 1.0);
        if (bearing > kPi)
            bearing -= 2.0 * kPi;
        const Vec2 dir = bearing_direction(exit_dir, bearing);
        if (walls.contains(self + dir * r))
            ++covered;
    }
    return static_cast<double>(covered) / samples;
}

SectorState extract_state(Vec2 self_pos, const std::vector<Vec2>& others, Vec2 exit,
                          const WallGeometry& walls, double radius, double wall_frac) {
    if (radius <= 0.0)
        throw InputError("neighborhood radius must be positive");
    if (wall_frac <= 0.0 || wall_frac > 1.0)
        throw InputError("wall coverage fraction must be in (0, 1]");
    const Vec2 exit_dir = exit - self_pos;
    if (exit_dir.norm() == 0.0)
        throw std::domain_error("neighborhood undefined at the exit");

    SectorState state;
    for (const Vec2& o : others) {
        const Vec2 d = o - self_pos;
        const double r = d.norm();
        if (r > radius)
            continue;
        if (r == 0.0) {
            std::cerr << "pedmdp: warning: neighbor coincides with the observed pedestrian; "
                         "counting into the forward sector\n";
            state.set(Sector::Fwd);
            continue;
        }
        state.set(sector_of_angle(direction_angle(self_pos, d, exit)));
    }
    for (int i = 0; i < kNumSectors; ++i) {
        const auto sector = static_cast<Sector>(i);
        if (state[sector])
            continue;
        if (sector_wall_fraction(self_pos, exit, sector, walls, radius) >= wall_frac)
            state.set(sector);
    }
    return state;
}

namespace {

// Time of the record's closest recorded approach to the exit; used to drop
// pedestrians that already passed it.
double closest_approach_time(const PathRecord& record, Vec2 exit) {
    double best_t = record.t_out();
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& s : record.samples) {
        const double d = (s.pos - exit).norm();
        if (d < best_d) {
            best_d = d;
            best_t = s.t;
        }
    }
    return best_t;
}

} // namespace

std::vector<Observation> build_observations(const std::vector<PathRecord>& records, Vec2 exit,
                                            const WallGeometry& walls,
                                            const ObservationOptions& options) {
    walls.validate();
    std::vector<double> exit_times(records.size());
    for (std::size_t j = 0; j < records.size(); ++j) {
        records[j].validate();
        exit_times[j] = closest_approach_time(records[j], exit);
    }

    std::vector<Observation> observations;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto steps = discretize(records[i], options.dt);
        annotate_angles(steps, exit);
        for (const auto& step : steps) {
            if ((exit - step.position).norm() == 0.0)
                continue;
            ActionLabel action;
            if (step.speed < options.speed_threshold)
                action = ActionLabel::Stand;
            else if (step.angle)
                action = classify_angle(*step.angle);
            else
                continue; // moving step with degenerate geometry
            std::vector<Vec2> others;
            for (std::size_t j = 0; j < records.size(); ++j) {
                if (j == i)
                    continue;
                if (!options.include_exited && step.t > exit_times[j])
                    continue;
                if (auto pos = position_at(records[j], step.t))
                    others.push_back(*pos);
            }
            Observation obs;
            obs.state = extract_state(step.position, others, exit, walls, options.radius,
                                      options.wall_frac);
            obs.action = action;
            obs.ped_id = records[i].ped_id;
            obs.t = step.t;
            observations.push_back(std::move(obs));
        }
    }
    return observations;
}

} // namespace pedmdp
