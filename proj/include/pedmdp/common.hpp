#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pedmdp {

// Bad user input: missing files, malformed rows, parameters out of range.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured size budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

constexpr double kPi = 3.14159265358979323846;

} // namespace pedmdp
