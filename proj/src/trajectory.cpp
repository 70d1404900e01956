#include "pedmdp/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace pedmdp {

void PathRecord::validate() const {
    if (samples.empty())
        throw InputError("path record '" + ped_id + "' has no samples");
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].t <= samples[i - 1].t)
            throw InputError("path record '" + ped_id + "' has non-increasing sample times");
    }
}

std::optional<Vec2> position_at(const PathRecord& record, double t) {
    if (record.samples.empty() || t < record.t_in() || t > record.t_out())
        return std::nullopt;
    const auto it = std::lower_bound(record.samples.begin(), record.samples.end(), t,
                                     [](const TrajectorySample& s, double v) { return s.t < v; });
    if (it == record.samples.begin())
        return it->pos;
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    if (hi.t == lo.t)
        return hi.pos;
    const double w = (t - lo.t) / (hi.t - lo.t);
    return Vec2{lo.pos.x + w * (hi.pos.x - lo.pos.x), lo.pos.y + w * (hi.pos.y - lo.pos.y)};
}

std::vector<MotionStep> discretize(const PathRecord& record, double dt) {
    if (dt <= 0.0)
        throw InputError("discretization step must be positive");
    record.validate();
    std::vector<MotionStep> steps;
    if (record.samples.size() < 2)
        return steps;
    const double span = record.t_out() - record.t_in();
    const auto n = static_cast<std::size_t>(std::floor(span / dt + 1e-9));
    steps.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = record.t_in() + static_cast<double>(k) * dt;
        const auto p0 = position_at(record, t);
        const auto p1 = position_at(record, t + dt);
        if (!p0 || !p1)
            break;
        MotionStep step;
        step.t = t;
        step.position = *p0;
        step.displacement = *p1 - *p0;
        step.speed = step.displacement.norm() / dt;
        steps.push_back(step);
    }
    return steps;
}

double direction_angle(Vec2 position, Vec2 displacement, Vec2 exit) {
    const Vec2 to_exit = exit - position;
    if (displacement.norm() == 0.0)
        throw std::domain_error("direction angle undefined for zero displacement");
    if (to_exit.norm() == 0.0)
        throw std::domain_error("direction angle undefined at the exit");
    double angle = -std::atan2(cross(to_exit, displacement), dot(to_exit, displacement));
    if (angle <= -kPi)
        angle = kPi;
    return angle;
}

void annotate_angles(std::vector<MotionStep>& steps, Vec2 exit) {
    for (auto& step : steps) {
        if (step.displacement.norm() > 0.0 && (exit - step.position).norm() > 0.0)
            step.angle = direction_angle(step.position, step.displacement, exit);
    }
}

const char* to_string(ActionLabel a) {
    switch (a) {
    case ActionLabel::Stand: return "stand";
    case ActionLabel::Fwd: return "fwd";
    case ActionLabel::FwdRight: return "fwd_r";
    case ActionLabel::FwdLeft: return "fwd_l";
    case ActionLabel::Right: return "right";
    case ActionLabel::Left: return "left";
    case ActionLabel::Back: return "back";
    }
    return "?";
}

const char* symbol(ActionLabel a) {
    switch (a) {
    case ActionLabel::Stand: return "(x)";
    case ActionLabel::Fwd: return "<-";
    case ActionLabel::FwdRight: return "<^";
    case ActionLabel::FwdLeft: return "<v";
    case ActionLabel::Right: return "^";
    case ActionLabel::Left: return "v";
    case ActionLabel::Back: return "->";
    }
    return "?";
}

ActionLabel action_from_string(const std::string& name) {
    for (int i = 0; i < kNumActions; ++i) {
        const auto a = static_cast<ActionLabel>(i);
        if (name == to_string(a))
            return a;
    }
    throw InputError("unknown action label: " + name);
}

ActionLabel classify_angle(double angle) {
    if (angle > kPi || angle <= -kPi)
        angle = std::remainder(angle, 2.0 * kPi); // lands in [-pi, pi]
    if (angle <= -kPi)
        angle = kPi;
    const double b1 = kPi / 8.0, b3 = 3.0 * kPi / 8.0, b5 = 5.0 * kPi / 8.0;
    if (angle > -b1 && angle <= b1) return ActionLabel::Fwd;
    if (angle > -b3 && angle <= -b1) return ActionLabel::FwdRight;
    if (angle > b1 && angle <= b3) return ActionLabel::FwdLeft;
    if (angle > -b5 && angle <= -b3) return ActionLabel::Right;
    if (angle > b3 && angle <= b5) return ActionLabel::Left;
    return ActionLabel::Back;
}

ActionLabel classify_action(double speed, double angle, double speed_threshold) {
    if (speed < speed_threshold)
        return ActionLabel::Stand;
    return classify_angle(angle);
}

ActionLabel classify_action(const MotionStep& step, double speed_threshold) {
    if (step.speed < speed_threshold)
        return ActionLabel::Stand;
    if (!step.angle)
        throw std::domain_error("moving step has no direction angle; annotate first");
    return classify_angle(*step.angle);
}

std::int64_t Histogram2D::total() const {
    std::int64_t n = 0;
    for (const auto& row : counts)
        for (auto c : row)
            n += c;
    return n;
}

Histogram2D motion_histogram(const std::vector<MotionStep>& steps, int angle_bins,
                             int length_bins) {
    if (angle_bins < 1 || length_bins < 1)
        throw InputError("histogram bin counts must be >= 1");
    Histogram2D h;
    double max_len = 0.0;
    for (const auto& s : steps)
        max_len = std::max(max_len, s.displacement.norm());
    if (max_len == 0.0)
        max_len = 1.0;
    for (int i = 0; i <= angle_bins; ++i)
        h.angle_edges.push_back(-kPi + 2.0 * kPi * i / angle_bins);
    for (int i = 0; i <= length_bins; ++i)
        h.length_edges.push_back(max_len * i / length_bins);
    h.counts.assign(angle_bins, std::vector<std::int64_t>(length_bins, 0));
    for (const auto& s : steps) {
        const double a = s.angle.value_or(0.0);
        const double len = s.displacement.norm();
        int ai = static_cast<int>(std::floor((a + kPi) / (2.0 * kPi) * angle_bins));
        int li = static_cast<int>(std::floor(len / max_len * length_bins));
        ai = std::clamp(ai, 0, angle_bins - 1);
        li = std::clamp(li, 0, length_bins - 1);
        ++h.counts[ai][li];
    }
    return h;
}

double silverman_bandwidth(const std::vector<double>& sample) {
    const auto n = sample.size();
    if (n < 2)
        return 0.5;
    double mean = 0.0;
    for (double v : sample)
        mean += v;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double v : sample)
        var += (v - mean) * (v - mean);
    var /= static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[n / 4];
    const double q3 = sorted[(3 * n) / 4];
    const double iqr = q3 - q1;
    double spread = sd;
    if (iqr > 0.0)
        spread = std::min(spread, iqr / 1.34);
    if (spread <= 0.0)
        spread = 0.1;
    return 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
}

KdeResult direction_kde(const std::vector<MotionStep>& steps, double bandwidth, int points) {
    std::vector<double> angles;
    for (const auto& s : steps)
        if (s.angle)
            angles.push_back(*s.angle);
    if (angles.empty())
        throw InputError("no steps with a defined direction angle");
    if (points < 8)
        throw InputError("kde needs at least 8 grid points");

    KdeResult kde;
    kde.bandwidth = bandwidth > 0.0 ? bandwidth : silverman_bandwidth(angles);
    const double h = kde.bandwidth;
    // Wrap enough kernel copies that the truncated tails are < 1e-12.
    const int wraps = std::max(1, static_cast<int>(std::ceil((8.0 * h + kPi) / (2.0 * kPi))));
    const double norm = 1.0 / (static_cast<double>(angles.size()) * h * std::sqrt(2.0 * kPi));
    for (int i = 0; i < points; ++i) {
        const double theta = -kPi + 2.0 * kPi * (i + 1) / points;
        double f = 0.0;
        for (double a : angles) {
            for (int k = -wraps; k <= wraps; ++k) {
                const double u = (theta - a + 2.0 * kPi * k) / h;
                f += std::exp(-0.5 * u * u);
            }
        }
        kde.angle.push_back(theta);
        kde.density.push_back(f * norm);
    }
    return kde;
}

} // namespace pedmdp
