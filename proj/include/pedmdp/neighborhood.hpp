#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pedmdp/common.hpp"
#include "pedmdp/trajectory.hpp"

namespace pedmdp {

// The 6 oriented neighborhood sectors, sharing the angular bins of the
// moving actions. Index order matches the observation CSV columns.
enum class Sector : std::uint8_t { Fwd = 0, FwdRight, FwdLeft, Right, Left, Back };

constexpr int kNumSectors = 6;

const char* to_string(Sector s);
Sector sector_of_angle(double bearing);
ActionLabel action_of_sector(Sector s);

// 6-bit occupancy of the oriented neighborhood.
struct SectorState {
    std::array<bool, kNumSectors> occ{};

    bool operator==(const SectorState&) const = default;
    bool operator[](Sector s) const { return occ[static_cast<std::size_t>(s)]; }
    void set(Sector s, bool v = true) { occ[static_cast<std::size_t>(s)] = v; }
    int bit(Sector s) const { return occ[static_cast<std::size_t>(s)] ? 1 : 0; }

    int bits() const; // packed, Fwd = bit 0
    static SectorState from_bits(int bits);
};

// Wall / out-of-room regions as simple polygons, in meters.
struct WallGeometry {
    std::vector<std::vector<Vec2>> polygons;

    bool contains(Vec2 p) const; // even-odd rule, union over polygons
    void validate() const;       // throws InputError on degenerate polygons
};

// Fraction of the sector's area (radius-r circle slice around self, oriented
// toward the exit) covered by wall polygons. Deterministic golden-angle
// point set, uniform in area; doubling `samples` moves the estimate by well
// under the 40 % decision threshold.
double sector_wall_fraction(Vec2 self, Vec2 exit, Sector sector, const WallGeometry& walls,
                            double radius, int samples = 1024);

// Occupancy of the 6 sectors: a sector is occupied when it contains another
// pedestrian's position within `radius`, or when walls cover at least
// `wall_frac` of its area. A pedestrian exactly at self_pos counts into Fwd
// (a warning is written to stderr).
SectorState extract_state(Vec2 self_pos, const std::vector<Vec2>& others, Vec2 exit,
                          const WallGeometry& walls, double radius = 0.75,
                          double wall_frac = 0.40);

struct Observation {
    SectorState state;
    ActionLabel action = ActionLabel::Stand;
    std::string ped_id;
    double t = 0.0;
};

struct ObservationOptions {
    double dt = 1.0;
    double radius = 0.75;
    double wall_frac = 0.40;
    double speed_threshold = 0.5;
    // When false, a pedestrian stops counting as a neighbor after the time of
    // its closest recorded approach to the exit.
    bool include_exited = false;
};

// The full ingest pipeline: discretize every record, classify each step's
// action, and pair it with the neighborhood state at the step's start time
// (neighbors interpolated from all other on-screen records).
std::vector<Observation> build_observations(const std::vector<PathRecord>& records, Vec2 exit,
                                            const WallGeometry& walls,
                                            const ObservationOptions& options = {});

} // namespace pedmdp
