#include <doctest.h>

#include <cmath>
#include <random>

#include "pedmdp/io.hpp"
#include "pedmdp/mixture.hpp"

using namespace pedmdp;

namespace {

Observation make_obs(int state_bits, ActionLabel a, double t = 0.0) {
    Observation o;
    o.state = SectorState::from_bits(state_bits);
    o.action = a;
    o.t = t;
    return o;
}

void check_model_invariants(const MixtureModel& m) {
    double alpha_sum = 0.0;
    for (double a : m.alpha) {
        CHECK(a >= 0.0);
        alpha_sum += a;
    }
    CHECK(alpha_sum == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& comp : m.components) {
        for (int v = 0; v < 2; ++v) {
            double col = 0.0;
            for (int a = 0; a < kNumActions; ++a) {
                CHECK(comp.theta[a][v] >= 0.0);
                CHECK(comp.theta[a][v] <= 1.0);
                col += comp.theta[a][v];
            }
            CHECK(col == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

} // namespace

TEST_CASE("the prior is uniform and rejects bad parameters") {
    const auto state = init_prior(1.0, 0.99);
    const auto model = point_estimate(state);
    for (double a : model.alpha)
        CHECK(a == doctest::Approx(1.0 / 6).epsilon(1e-12));
    for (const auto& comp : model.components)
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                CHECK(comp.theta[a][v] == doctest::Approx(1.0 / 7).epsilon(1e-12));
    model.validate();

    CHECK_THROWS_AS(init_prior(0.0, 0.99), InputError);
    CHECK_THROWS_AS(init_prior(1.0, 0.0), InputError);
    CHECK_THROWS_AS(init_prior(1.0, 1.5), InputError);
}

TEST_CASE("a forced single component accumulates the dirichlet closed form") {
    auto state = init_prior(1.0, 1.0);
    const std::array<double, kNumSectors> w{1, 0, 0, 0, 0, 0};
    const int n = 25;
    for (int i = 0; i < n; ++i)
        apply_update(state, SectorState{}, ActionLabel::Fwd, w);
    const auto model = point_estimate(state);
    const double expect = (1.0 / 7 + n) / (1.0 + n);
    CHECK(model.components[0].at(ActionLabel::Fwd, 0) ==
          doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("responsibilities from a symmetric start are uniform") {
    const auto state = init_prior(1.0, 0.99);
    const auto w_ones = responsibilities(state, SectorState::from_bits(0b111111), ActionLabel::Fwd);
    const auto w_zero = responsibilities(state, SectorState{}, ActionLabel::Stand);
    for (int y = 0; y < kNumSectors; ++y) {
        CHECK(w_ones[y] == doctest::Approx(1.0 / 6).epsilon(1e-12));
        CHECK(w_zero[y] == doctest::Approx(1.0 / 6).epsilon(1e-12));
    }
}

TEST_CASE("one update moves the total kappa by the forgetting bookkeeping") {
    const double prior = 2.0;
    const double lambda = 0.9;
    auto state = init_prior(prior, lambda);
    double before = 0.0;
    for (double k : state.kappa)
        before += k;
    update(state, SectorState::from_bits(0b010101), ActionLabel::Left);
    double after = 0.0;
    for (double k : state.kappa)
        after += k;
    CHECK(after ==
          doctest::Approx(lambda * before + (1.0 - lambda) * 6.0 * prior + 1.0).epsilon(1e-12));
}

TEST_CASE("lambda of one accumulates without forgetting") {
    auto state = init_prior(1.0, 1.0);
    const int n = 37;
    std::mt19937_64 rng(41);
    for (int i = 0; i < n; ++i)
        update(state, SectorState::from_bits(static_cast<int>(rng() % 64)),
               static_cast<ActionLabel>(rng() % kNumActions));
    double kappa_sum = 0.0;
    double count_sum = 0.0;
    for (int y = 0; y < kNumSectors; ++y) {
        kappa_sum += state.kappa[y];
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                count_sum += state.counts[y][a][v];
    }
    CHECK(kappa_sum == doctest::Approx(6.0 + n).epsilon(1e-12));
    CHECK(count_sum == doctest::Approx(6.0 * 2.0 + n).epsilon(1e-12));
}

TEST_CASE("estimator invariants survive a random update stream") {
    std::mt19937_64 rng(31);
    auto state = init_prior(0.7, 0.95);
    for (int i = 0; i < 500; ++i) {
        const int bits = static_cast<int>(rng() % 64);
        const auto a = static_cast<ActionLabel>(rng() % kNumActions);
        update(state, SectorState::from_bits(bits), a);
        for (int y = 0; y < kNumSectors; ++y)
            CHECK(state.kappa[y] > 0.0);
    }
    check_model_invariants(point_estimate(state));
}

TEST_CASE("responsibilities normalize away any common scale of the statistics") {
    std::mt19937_64 rng(37);
    auto state = init_prior(1.0, 0.95);
    for (int i = 0; i < 40; ++i)
        update(state, SectorState::from_bits(static_cast<int>(rng() % 64)),
               static_cast<ActionLabel>(rng() % kNumActions));

    EstimatorState scaled = state;
    for (int y = 0; y < kNumSectors; ++y) {
        scaled.kappa[y] *= 10.0;
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                scaled.counts[y][a][v] *= 10.0;
    }
    const auto s = SectorState::from_bits(0b001101);
    const auto w = responsibilities(state, s, ActionLabel::Back);
    const auto w_scaled = responsibilities(scaled, s, ActionLabel::Back);
    double sum = 0.0;
    for (int y = 0; y < kNumSectors; ++y) {
        CHECK(w[y] == doctest::Approx(w_scaled[y]).epsilon(1e-12));
        sum += w[y];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("prediction composes the mixture") {
    SUBCASE("uniform model predicts uniformly") {
        const auto model = point_estimate(init_prior(1.0, 1.0));
        for (int bits = 0; bits < 64; ++bits) {
            const auto p = predict(model, SectorState::from_bits(bits));
            double sum = 0.0;
            for (double v : p) {
                CHECK(v == doctest::Approx(1.0 / 7).epsilon(1e-12));
                sum += v;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("a point mixture reproduces its component column") {
        MixtureModel model = point_estimate(init_prior(1.0, 1.0));
        model.alpha = {1, 0, 0, 0, 0, 0};
        for (int a = 0; a < kNumActions; ++a) {
            model.components[0].theta[a][0] = (a == 1) ? 0.4 : 0.1;
            model.components[0].theta[a][1] = (a == 0) ? 0.7 : 0.05;
        }
        const auto p_empty = predict(model, SectorState{});
        CHECK(p_empty[1] == doctest::Approx(0.4).epsilon(1e-12));
        const auto p_occ = predict(model, SectorState::from_bits(1));
        CHECK(p_occ[0] == doctest::Approx(0.7).epsilon(1e-12));
    }
}

TEST_CASE("prediction with the reference weights reproduces the dot product") {
    MixtureModel model = point_estimate(init_prior(1.0, 1.0));
    model.alpha = {0.9212, 0.0749, 0.0014, 0.0002, 0.0002, 0.0021};
    const std::array<double, kNumSectors> stand_empty{0.76, 0.03, 0.05, 0.11, 0.12, 0.07};
    for (int y = 0; y < kNumSectors; ++y)
        model.components[y].theta[0][0] = stand_empty[y];
    const auto p = predict(model, SectorState{});
    double expected = 0.0;
    for (int y = 0; y < kNumSectors; ++y)
        expected += model.alpha[y] * stand_empty[y];
    CHECK(p[0] == doctest::Approx(expected).epsilon(1e-15));
    CHECK(p[0] == doctest::Approx(0.702622).epsilon(1e-9));
}

TEST_CASE("fit is consistent on degenerate data") {
    std::vector<Observation> obs;
    for (int i = 0; i < 2000; ++i)
        obs.push_back(make_obs(0, ActionLabel::Fwd, i));
    const auto model = fit(obs, 1.0, 1.0);
    check_model_invariants(model);
    int best = 0;
    for (int y = 1; y < kNumSectors; ++y)
        if (model.alpha[y] > model.alpha[best])
            best = y;
    CHECK(model.components[best].at(ActionLabel::Fwd, 0) > 0.99);
    CHECK_THROWS_AS(fit({}, 1.0, 1.0), InputError);
}

TEST_CASE("with forgetting the estimate depends on the observation order") {
    std::vector<Observation> obs;
    for (int i = 0; i < 50; ++i)
        obs.push_back(make_obs(0, ActionLabel::Fwd, i));
    for (int i = 50; i < 100; ++i)
        obs.push_back(make_obs(0b111111, ActionLabel::Stand, i));
    std::vector<Observation> reversed(obs.rbegin(), obs.rend());
    for (std::size_t i = 0; i < reversed.size(); ++i)
        reversed[i].t = static_cast<double>(i); // keep times increasing

    const auto forward = fit(obs, 1.0, 0.9);
    const auto backward = fit(reversed, 1.0, 0.9);
    double max_diff = 0.0;
    for (int y = 0; y < kNumSectors; ++y)
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                max_diff = std::max(max_diff, std::abs(forward.components[y].theta[a][v] -
                                                       backward.components[y].theta[a][v]));
    CHECK(max_diff > 1e-6);
}

TEST_CASE("fit orders observations by time before updating") {
    std::vector<Observation> ordered;
    for (int i = 0; i < 60; ++i)
        ordered.push_back(make_obs(i % 2 == 0 ? 0 : 63, i % 2 == 0 ? ActionLabel::Fwd : ActionLabel::Stand, i));
    std::vector<Observation> shuffled = ordered;
    std::mt19937_64 rng(5);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);

    const auto a = fit(ordered, 1.0, 0.9);
    const auto b = fit(shuffled, 1.0, 0.9);
    for (int y = 0; y < kNumSectors; ++y)
        CHECK(a.alpha[y] == doctest::Approx(b.alpha[y]).epsilon(1e-12));
}

TEST_CASE("fit recovers a well-separated synthetic mixture") {
    // ground truth: forward sector dominates, forward-right secondary
    std::array<double, kNumSectors> alpha_true{0.7, 0.3, 0, 0, 0, 0};
    std::array<ComponentTable, kNumSectors> theta_true{};
    for (int y = 0; y < kNumSectors; ++y)
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                theta_true[y].theta[a][v] = 1.0 / 7;
    auto concentrate = [&](int y, int v, ActionLabel main) {
        for (int a = 0; a < kNumActions; ++a)
            theta_true[y].theta[a][v] = a == static_cast<int>(main) ? 0.95 : 0.05 / 6;
    };
    concentrate(0, 0, ActionLabel::Fwd);
    concentrate(0, 1, ActionLabel::Stand);
    concentrate(1, 0, ActionLabel::Right);
    concentrate(1, 1, ActionLabel::Left);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Observation> obs;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const int bits = static_cast<int>(rng() % 64);
        const int y = u(rng) < alpha_true[0] ? 0 : 1;
        const int v = (bits >> y) & 1;
        double r = u(rng);
        int a = kNumActions - 1;
        for (int k = 0; k < kNumActions; ++k) {
            r -= theta_true[y].theta[k][v];
            if (r < 0) {
                a = k;
                break;
            }
        }
        obs.push_back(make_obs(bits, static_cast<ActionLabel>(a), i));
    }
    const auto model = fit(obs, 1.0, 0.999);
    check_model_invariants(model);
    double l1 = 0.0;
    for (int y = 0; y < kNumSectors; ++y)
        l1 += std::abs(model.alpha[y] - alpha_true[y]);
    CHECK(l1 <= 0.15);
    for (int y = 0; y < 2; ++y)
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                CHECK(std::abs(model.components[y].theta[a][v] - theta_true[y].theta[a][v]) <=
                      0.15);
}

TEST_CASE("model json round-trips exactly") {
    std::vector<Observation> obs;
    for (int i = 0; i < 50; ++i)
        obs.push_back(make_obs(i % 64, static_cast<ActionLabel>(i % 7), i));
    const auto model = fit(obs, 1.0, 0.99);
    const auto j = model_to_json(model, "# stamp");
    const auto parsed = model_from_json(nlohmann::json::parse(j.dump()));
    for (int y = 0; y < kNumSectors; ++y) {
        CHECK(parsed.alpha[y] == model.alpha[y]);
        for (int a = 0; a < kNumActions; ++a)
            for (int v = 0; v < 2; ++v)
                CHECK(parsed.components[y].theta[a][v] == model.components[y].theta[a][v]);
    }
}

TEST_CASE("the report renders six regressor pairs and seven action rows") {
    const auto model = point_estimate(init_prior(1.0, 1.0));
    const std::string report = model_report_csv(model, "# pedmdp estimate test");
    std::size_t lines = 0;
    for (char c : report)
        lines += c == '\n' ? 1 : 0;
    CHECK(lines == 1 + 2 + 1 + 7); // stamp, two header rows, alpha, actions
    CHECK(report.find("alpha") != std::string::npos);
    CHECK(report.find("stand") != std::string::npos);
    const std::string header = report.substr(report.find("regressor"));
    std::size_t commas = 0;
    for (std::size_t i = 0; i < header.find('\n'); ++i)
        commas += header[i] == ',' ? 1 : 0;
    CHECK(commas == 12);
}
