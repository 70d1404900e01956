#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pedmdp/common.hpp"

namespace pedmdp {

struct TrajectorySample {
    double t = 0.0;
    Vec2 pos;
};

// One pedestrian's raw on-screen track: strictly increasing sample times,
// positions in meters.
struct PathRecord {
    std::string ped_id;
    std::vector<TrajectorySample> samples;

    double t_in() const { return samples.front().t; }
    double t_out() const { return samples.back().t; }
    void validate() const; // throws InputError
};

// Linear interpolation between the bracketing raw samples; nullopt outside
// [t_in, t_out].
std::optional<Vec2> position_at(const PathRecord& record, double t);

struct MotionStep {
    double t = 0.0;
    Vec2 position;        // at t
    Vec2 displacement;    // position(t + dt) - position(t)
    double speed = 0.0;   // |displacement| / dt, m/s
    std::optional<double> angle; // direction angle toward the exit, (-pi, pi]
};

// Resample a record on the grid t_in, t_in + dt, ... producing one step per
// grid time t with t + dt still covered by the record.
std::vector<MotionStep> discretize(const PathRecord& record, double dt);

// Angle between the exit direction (exit - position) and the displacement.
// Zero means straight toward the exit; motion veering to the geometric right
// of the exit ray gets a negative angle. Throws std::domain_error when the
// displacement is zero or the position coincides with the exit.
double direction_angle(Vec2 position, Vec2 displacement, Vec2 exit);

// Fill MotionStep::angle wherever it is defined (nonzero displacement,
// position != exit).
void annotate_angles(std::vector<MotionStep>& steps, Vec2 exit);

// The 7 relative actions. Stand is gated by speed; the 6 moving labels bin
// the direction angle:
//   Fwd      (-pi/8,  pi/8]          FwdRight (-3pi/8, -pi/8]
//   FwdLeft  ( pi/8,  3pi/8]         Right    (-5pi/8, -3pi/8]
//   Left     ( 3pi/8, 5pi/8]         Back     (-pi, -5pi/8] u (5pi/8, pi]
enum class ActionLabel : std::uint8_t { Stand = 0, Fwd, FwdRight, FwdLeft, Right, Left, Back };

constexpr int kNumActions = 7;

const char* to_string(ActionLabel a);
const char* symbol(ActionLabel a);
ActionLabel action_from_string(const std::string& name);

// Total over all finite angles; returns one of the 6 moving labels.
ActionLabel classify_angle(double angle);

// Stand when speed < speed_threshold, otherwise the angle bin.
ActionLabel classify_action(double speed, double angle, double speed_threshold = 0.5);
ActionLabel classify_action(const MotionStep& step, double speed_threshold = 0.5);

struct Histogram2D {
    std::vector<double> angle_edges;  // angle_bins + 1 edges over (-pi, pi]
    std::vector<double> length_edges; // length_bins + 1 edges over [0, max length]
    std::vector<std::vector<std::int64_t>> counts; // [angle bin][length bin]

    std::int64_t total() const;
};

// 2-D frequency table of (direction angle, step length in meters). Steps
// with no defined angle are binned at angle 0.
Histogram2D motion_histogram(const std::vector<MotionStep>& steps, int angle_bins,
                             int length_bins);

struct KdeResult {
    std::vector<double> angle;   // uniform grid over (-pi, pi]
    std::vector<double> density; // wrapped-Gaussian density, integrates to 1
    double bandwidth = 0.0;
};

// Kernel density of the direction angle over the circle, wrapped Gaussian
// kernel. bandwidth <= 0 selects Silverman's rule on the angle sample.
// Uses only steps with a defined angle; throws InputError when none exist.
KdeResult direction_kde(const std::vector<MotionStep>& steps, double bandwidth = 0.0,
                        int points = 360);

double silverman_bandwidth(const std::vector<double>& sample);

} // namespace pedmdp
