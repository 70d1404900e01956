#include <doctest.h>

#include <cmath>
#include <random>

#include "pedmdp/trajectory.hpp"

using namespace pedmdp;

namespace {

PathRecord straight_line(double speed, double duration, double sample_dt, Vec2 dir = {1, 0}) {
    PathRecord rec{"p", {}};
    for (double t = 0.0; t <= duration + 1e-12; t += sample_dt)
        rec.samples.push_back({t, dir * (speed * t)});
    return rec;
}

} // namespace

TEST_CASE("discretize differences positions over the dt grid") {
    PathRecord rec{"p", {{0.0, {0, 0}}, {1.0, {1, 0}}}};
    const auto steps = discretize(rec, 1.0);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].displacement == Vec2{1, 0});
    CHECK(steps[0].speed == doctest::Approx(1.0));
}

TEST_CASE("discretize of a stationary record gives zero speeds") {
    PathRecord rec{"p", {{0.0, {2, 3}}, {0.7, {2, 3}}, {3.0, {2, 3}}}};
    for (const auto& s : discretize(rec, 1.0))
        CHECK(s.speed == 0.0);
    CHECK(discretize(rec, 1.0).size() == 3);
}

TEST_CASE("discretize interpolates between raw samples") {
    const auto rec = straight_line(0.6, 5.0, 0.5);
    const auto steps = discretize(rec, 1.0);
    REQUIRE(steps.size() == 5);
    for (const auto& s : steps)
        CHECK(s.speed == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("discretize yields floor(span/dt) steps on dense records") {
    const auto rec = straight_line(1.0, 7.3, 0.04);
    CHECK(discretize(rec, 1.0).size() == 7);
    CHECK(discretize(rec, 0.5).size() == 14);
    CHECK(discretize(PathRecord{"p", {{0.0, {0, 0}}, {0.4, {1, 0}}}}, 1.0).empty());
    CHECK_THROWS_AS(discretize(rec, 0.0), InputError);
}

TEST_CASE("direction angle matches the worked dot/cross cases") {
    CHECK(direction_angle({0, 0}, {1, 0}, {1, 0}) == doctest::Approx(0.0));
    CHECK(direction_angle({0, 0}, {-1, 0}, {1, 0}) == doctest::Approx(kPi));
    CHECK(direction_angle({0, 0}, {1, 1}, {1, 0}) == doctest::Approx(-kPi / 4));
    CHECK(direction_angle({0, 0}, {1, -1}, {1, 0}) == doctest::Approx(kPi / 4));
    CHECK_THROWS_AS(direction_angle({0, 0}, {0, 0}, {1, 0}), std::domain_error);
    CHECK_THROWS_AS(direction_angle({1, 0}, {1, 0}, {1, 0}), std::domain_error);
}

TEST_CASE("direction angle ignores the displacement magnitude") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> scale(0.1, 50.0);
    for (int i = 0; i < 200; ++i) {
        const Vec2 pos{u(rng), u(rng)};
        const Vec2 disp{u(rng), u(rng)};
        const Vec2 exit{u(rng) + 4.0, u(rng)};
        if (disp.norm() == 0.0 || (exit - pos).norm() == 0.0)
            continue;
        const double a = direction_angle(pos, disp, exit);
        const double b = direction_angle(pos, disp * scale(rng), exit);
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("action classification reproduces the worked angle cases") {
    const double deg = kPi / 180.0;
    CHECK(classify_action(1.0, 20.0 * deg) == ActionLabel::Fwd);
    CHECK(classify_action(1.0, 30.0 * deg) == ActionLabel::FwdLeft);
    CHECK(classify_action(0.3, 30.0 * deg) == ActionLabel::Stand);
    CHECK(classify_action(0.3, 2.9) == ActionLabel::Stand);
}

TEST_CASE("angle bins partition the circle with right-closed boundaries") {
    CHECK(classify_angle(kPi / 8) == ActionLabel::Fwd);
    CHECK(classify_angle(-kPi / 8) == ActionLabel::FwdRight);
    CHECK(classify_angle(3 * kPi / 8) == ActionLabel::FwdLeft);
    CHECK(classify_angle(-3 * kPi / 8) == ActionLabel::Right);
    CHECK(classify_angle(5 * kPi / 8) == ActionLabel::Left);
    CHECK(classify_angle(-5 * kPi / 8) == ActionLabel::Back);
    CHECK(classify_angle(kPi) == ActionLabel::Back);
    CHECK(classify_angle(-3.0) == ActionLabel::Back);
}

TEST_CASE("negating the angle mirrors right and left labels") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-kPi + 1e-9, kPi);
    auto mirrored = [](ActionLabel a) {
        switch (a) {
        case ActionLabel::FwdRight: return ActionLabel::FwdLeft;
        case ActionLabel::FwdLeft: return ActionLabel::FwdRight;
        case ActionLabel::Right: return ActionLabel::Left;
        case ActionLabel::Left: return ActionLabel::Right;
        default: return a;
        }
    };
    for (int i = 0; i < 1000; ++i) {
        const double angle = u(rng);
        CHECK(classify_angle(-angle) == mirrored(classify_angle(angle)));
    }
}

TEST_CASE("motion histogram counts every step exactly once") {
    PathRecord rec{"p", {{0.0, {0, 0}}, {1.0, {1, 0}}}};
    auto steps = discretize(rec, 1.0);
    annotate_angles(steps, Vec2{10, 0});
    const auto h = motion_histogram(steps, 8, 4);
    CHECK(h.total() == 1);
    int nonzero = 0;
    for (const auto& row : h.counts)
        for (auto c : row)
            nonzero += c != 0 ? 1 : 0;
    CHECK(nonzero == 1);

    const auto many = discretize(straight_line(0.8, 20.0, 0.1), 1.0);
    CHECK(motion_histogram(many, 12, 7).total() ==
          static_cast<std::int64_t>(many.size()));
}

TEST_CASE("kde integrates to one and peaks at a point mass") {
    std::vector<MotionStep> steps(40);
    for (auto& s : steps) {
        s.displacement = {1, 0};
        s.speed = 1.0;
        s.angle = 0.0;
    }
    const auto kde = direction_kde(steps, 0.25, 360);
    double integral = 0.0;
    std::size_t argmax = 0;
    for (std::size_t i = 0; i < kde.density.size(); ++i) {
        integral += kde.density[i] * (2.0 * kPi / kde.density.size());
        if (kde.density[i] > kde.density[argmax])
            argmax = i;
    }
    CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(kde.angle[argmax]) <= 2.0 * kPi / 360 + 1e-12);

    CHECK_THROWS_AS(direction_kde({}, 0.25), InputError);
}

TEST_CASE("kde recovers the modes of a two-cluster sample") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> c1(0.0, 0.3);
    std::normal_distribution<double> c2(2.4, 0.3);
    std::vector<MotionStep> steps;
    for (int i = 0; i < 1000; ++i) {
        MotionStep s;
        s.speed = 1.0;
        double a = std::remainder(i % 2 == 0 ? c1(rng) : c2(rng), 2.0 * kPi);
        if (a <= -kPi)
            a = kPi;
        s.angle = a;
        steps.push_back(s);
    }
    const auto kde = direction_kde(steps, 0.0, 720);
    // circular local maxima
    std::vector<double> modes;
    const std::size_t n = kde.density.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = kde.density[(i + n - 1) % n];
        const double next = kde.density[(i + 1) % n];
        if (kde.density[i] > prev && kde.density[i] >= next)
            modes.push_back(kde.angle[i]);
    }
    const double tol = 2.0 * kPi / 36; // one default histogram bin
    bool near0 = false, near24 = false;
    for (double m : modes) {
        near0 = near0 || std::abs(m - 0.0) <= tol;
        near24 = near24 || std::abs(m - 2.4) <= tol;
    }
    CHECK(near0);
    CHECK(near24);
}
