#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "tolspace/audit.hpp"
#include "tolspace/error.hpp"
#include "tolspace/special.hpp"
#include "tolspace/weber.hpp"

using namespace tolspace;

TEST_CASE("Weber interval grid") {
    const WeberGrid g{1.0, 2.0, 1.2, 1.5};
    const auto pts = g.points();
    CHECK(pts.front() == 1.0);
    CHECK(pts.back() == 2.0);
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i] > pts[i - 1]);
    const auto ws = make_weber_interval(g);
    CHECK(transitive_closure(ws.space).count() == 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) CHECK(ws.space.related(i, i + 1));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            CHECK(ws.space.related(i, j) == (pts[j] < pts[i] * 1.5));
            if (pts[j] >= pts[i] * 2.25) CHECK_FALSE(ws.space.related(i, j));
        }
    }
    const auto one = make_weber_interval({1.0, 1.0, 1.2, 1.5});
    CHECK(one.space.size() == 1);
    CHECK(is_optimal(one.space));
}

TEST_CASE("Weber interval rejects bad grids") {
    CHECK_THROWS_AS(make_weber_interval({1.0, 2.0, 1.5, 1.5}), ValidationError);
    CHECK_THROWS_AS(make_weber_interval({1.0, 2.0, 1.0, 1.5}), ValidationError);
    CHECK_THROWS_AS(make_weber_interval({2.0, 1.0, 1.1, 1.5}), ValidationError);
    CHECK_THROWS_AS(make_weber_interval({0.0, 1.0, 1.1, 1.5}), ValidationError);
    CHECK_THROWS_AS(make_weber_interval({1.0, 2.0, 1.1, 1.0}), ValidationError);
}

TEST_CASE("half-Gaussian interval measure") {
    const auto ws = make_weber_interval({1.0, 2.0, 1.1, 1.5}, {MeasureKind::half_gaussian});
    CHECK(ws.space.total_weight() == doctest::Approx(special::erf(2.0) - special::erf(1.0)));
}

TEST_CASE("two-cell Weber space") {
    const auto ws = make_weber_two_cell(1.0, 2.0, 4.0, 1.3, 1.1);
    const auto part = transitive_closure(ws.space);
    REQUIRE(part.count() == 2);
    for (std::size_t x = 0; x < ws.space.size(); ++x) {
        CHECK(part.class_index[x] == (ws.coordinates[x] <= 2.0 ? 0u : 1u));
    }
    CHECK(enumerate_regular(ws.space, 2).size() == 1);
    CHECK_FALSE(well_posed(ws.space, 3).well_posed);
    CHECK_THROWS_AS(make_weber_two_cell(1.0, 2.0, 2.5, 1.3, 1.1), ValidationError);
    CHECK_THROWS_AS(make_weber_two_cell(2.0, 2.0, 4.0, 1.3, 1.1), ValidationError);
    CHECK_THROWS_AS(make_weber_two_cell(1.0, 2.0, 4.0, 1.3, 1.3), ValidationError);
}

TEST_CASE("analytic oracles") {
    // 50-digit reference value.
    CHECK(std::abs(ambiguity_bound(1.2, 1.0) - 0.148906807546071) < 1e-13);
    CHECK(ambiguity_bound(1.2, 1.0) ==
          doctest::Approx(special::erf(1.2) - special::erf(1.0 / 1.2)).epsilon(1e-14));
    CHECK(ambiguity_bound(1.0, 0.7) == 0.0);
    CHECK(analytic_oracle("ambiguity_bound", {{"w", 1.2}, {"epsilon", 1.0}}) == ambiguity_bound(1.2, 1.0));
    CHECK(analytic_oracle("kline_accuracy", {{"epsilon", 0.0}}) == 1.0);
    CHECK(kline_ambiguity_mass(1.5, 0.0) == 0.0);
    CHECK_THROWS_AS(analytic_oracle("nope", {}), ValidationError);
    CHECK_THROWS_AS(analytic_oracle("ambiguity_bound", {{"w", 1.2}}), ValidationError);
}

TEST_CASE("kline maximizer matches its stationary point") {
    for (double w : {1.1, 1.5, 2.0, 3.0}) {
        const auto m = kline_mass_maximizer(w);
        // d/de [erf(e) - erf(e/w)] = 0  <=>  e^2 (1 - 1/w^2) = ln w.
        const double exact = std::sqrt(std::log(w) / (1.0 - 1.0 / (w * w)));
        CHECK(m.epsilon_star == doctest::Approx(exact).epsilon(1e-7));
        CHECK(m.mass == doctest::Approx(kline_ambiguity_mass(w, exact)));
    }
}

TEST_CASE("Gaussian ray discretization") {
    const auto inst = make_weber_ray_gaussian(1.2, 1.0, {1.01, 0.0, 6.0});
    CHECK(inst.info.ratio_effective <= 1.01);
    CHECK(std::pow(inst.info.ratio_effective, inst.info.steps_per_factor) == doctest::Approx(1.2));
    CHECK(inst.info.tail_mass < 1e-15);
    CHECK(inst.space.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    const double bound = fooling_bound(inst.space, inst.classifier);
    CHECK(std::abs(bound - ambiguity_bound(1.2, 1.0)) < 1e-10);
    CHECK(transitive_closure(inst.space).count() == 1);
    for (std::size_t x = 0; x < inst.space.size(); ++x) {
        CHECK(inst.classifier.label(x) == (inst.coordinates[x] < 1.0 ? 1 : 2));
    }
    CHECK_THROWS_AS(make_weber_ray_gaussian(1.2, 1.0, {1.01, 0.0, 1.1}), ValidationError);
    CHECK_THROWS_AS(make_weber_ray_gaussian(1.2, 1.0, {1.01, 0.9, 6.0}), ValidationError);
    CHECK_THROWS_AS(make_weber_ray_gaussian(1.2, 1.0, {1.3, 0.0, 6.0}), ValidationError);
}

TEST_CASE("conceptual entropy on the ray peaks near one bit") {
    const auto inst = make_weber_ray_gaussian(1.2, 1.0, {1.01, 0.0, 6.0});
    const auto region = ambiguity_region(inst.space, inst.classifier);
    double peak = 0.0;
    for (std::size_t x = 0; x < inst.space.size(); ++x) {
        const double h = conceptual_entropy(inst.space, inst.classifier, x);
        const bool inside = std::binary_search(region.begin(), region.end(), x);
        CHECK((h > 0.0) == inside);
        peak = std::max(peak, h);
    }
    CHECK(peak <= 1.0);
    CHECK(peak > 0.99);
}

TEST_CASE("Gaussian kline discretization") {
    const auto k = make_kline_gaussian(1.5, 0.8, {1.02, 0.0, 6.0});
    const auto part = transitive_closure(k.space);
    CHECK(part.count() == 3);
    std::size_t zero = 0;
    for (std::size_t x = 0; x < k.space.size(); ++x) {
        if (k.coordinates[x] == 0.0) zero = x;
        CHECK(k.world.label(x) == (k.coordinates[x] < 0.0 ? 1 : 2));
        CHECK(k.classifier.label(x) == (k.coordinates[x] < 0.8 ? 1 : 2));
    }
    CHECK(part.class_of(zero) == PointSet{zero});
    CHECK(k.space.weights()[zero] == 0.0);
    double mis = 0.0, adv = 0.0;
    for (std::size_t x = 0; x < k.space.size(); ++x) {
        const double c = k.coordinates[x];
        const bool wrong = k.classifier.label(x) != k.world.label(x);
        CHECK(wrong == (c >= 0.0 && c < 0.8));
        bool differs = false;
        for (std::size_t y : k.space.neighborhood(x)) differs = differs || k.classifier.label(y) != k.classifier.label(x);
        if (wrong) mis += k.space.probability(x);
        if (wrong && differs) {
            CHECK(c > 0.8 / 1.5);
            adv += k.space.probability(x);
        }
    }
    CHECK(mis == doctest::Approx(1.0 - kline_accuracy(0.8)).epsilon(1e-10));
    CHECK(adv == doctest::Approx(kline_ambiguity_mass(1.5, 0.8)).epsilon(1e-10));
}
