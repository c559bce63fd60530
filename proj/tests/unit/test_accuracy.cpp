#include <doctest.h>

#include <random>

#include "tolspace/accuracy.hpp"
#include "tolspace/error.hpp"
#include "tolspace/random_instances.hpp"

using namespace tolspace;

namespace {

ToleranceSpace blocks() {
    const IndexPair e[] = {{0, 1}, {2, 3}};
    return ToleranceSpace::from_edges({"a0", "a1", "b0", "b1"}, e);
}

} // namespace

TEST_CASE("accuracy and recall") {
    const auto b = blocks();
    const WorldModel w(b, {1, 1, 2, 2}, 2);
    CHECK(accuracy(b, w, w.classes()) == 1.0);
    CHECK(recall_rates(b, w, w.classes()) == std::vector<double>{1.0, 1.0});
    const Classifier r({1, 2, 2, 2}, 2);
    CHECK(accuracy(b, w, r) == doctest::Approx(0.75));
    const auto rho = recall_rates(b, w, r);
    CHECK(rho[0] == doctest::Approx(0.5));
    CHECK(rho[1] == doctest::Approx(1.0));
    CHECK(accuracy(b, w, Classifier({2, 2, 1, 1}, 2)) == 0.0);
    CHECK_THROWS_AS(accuracy(b, w, Classifier({1, 1, 2, 3}, 3)), ValidationError);
}

TEST_CASE("k bar") {
    const auto b = blocks();
    CHECK(k_bar(b, WorldModel(b, {1, 1, 2, 2}, 2)) == doctest::Approx(1.0));
    const IndexPair e[] = {{2, 3}};
    const auto thin = ToleranceSpace::from_edges({"a0", "a1", "b0", "b1"}, e);
    CHECK(k_bar(thin, WorldModel(thin, {1, 1, 2, 2}, 2)) == doctest::Approx(2.0));
    const auto id = ToleranceSpace::from_edges(default_point_ids(3), {});
    CHECK(k_bar(id, WorldModel(id, {1, 2, 3}, 3)) == doctest::Approx(1.0));
    const auto z = ToleranceSpace::from_edges(default_point_ids(3), {}, {1.0, 1.0, 0.0});
    CHECK_THROWS_AS(k_bar(z, WorldModel(z, {1, 2, 2}, 2)), PreconditionError);
}

TEST_CASE("low recall unsafety") {
    const auto b = blocks();
    const WorldModel w(b, {1, 1, 2, 2}, 2);
    const auto c = check_low_recall_unsafety(b, w, Classifier({1, 2, 2, 1}, 2));
    CHECK(c.verdict == Verdict::holds);
    CHECK(*c.hypothesis_value == doctest::Approx(0.5));
    CHECK(c.checked == PointSet{0, 2});
    CHECK(c.witnesses == std::vector<IndexPair>{{0, 1}, {2, 3}});
    const auto inap = check_low_recall_unsafety(b, w, w.classes());
    CHECK(inap.verdict == Verdict::inapplicable);
    CHECK(std::string(to_string(Verdict::violated)) == "violated");
}

TEST_CASE("hypersensitivity") {
    const auto b = blocks();
    const WorldModel w(b, {1, 1, 2, 2}, 2);
    const Classifier r({1, 2, 2, 2}, 2);
    const auto c = check_hypersensitivity(b, w, r);
    CHECK(c.verdict == Verdict::holds);
    CHECK(*c.hypothesis_value == doctest::Approx(0.5));
    CHECK(c.checked == PointSet{1});
    CHECK(c.witnesses == std::vector<IndexPair>{{1, 0}});
    CHECK(is_hyper_sensitive(b, w, r));
    CHECK(is_hyper_sensitive(b, w, w.classes()));
    CHECK(check_hypersensitivity(b, w, w.classes()).verdict == Verdict::holds);
    CHECK_FALSE(is_hyper_sensitive(b, w, Classifier({2, 2, 2, 2}, 2)));
}

TEST_CASE("zero-measure neighbourhoods make the checks inapplicable") {
    const IndexPair e[] = {{0, 1}};
    const auto s2 = ToleranceSpace::from_edges(default_point_ids(4), e, {1.0, 1.0, 0.0, 1.0});
    const WorldModel w(s2, {1, 1, 2, 2}, 2);
    const Classifier r({1, 2, 2, 2}, 2);
    CHECK(check_hypersensitivity(s2, w, r).verdict == Verdict::inapplicable);
    CHECK(check_low_recall_unsafety(s2, w, r).verdict == Verdict::inapplicable);
}

TEST_CASE("recall bounds accuracy") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const auto s = random::random_blocks(rng, 20, 5, 0.3, random::Weights::positive);
        auto w = random::random_regular_world(rng, s, 3);
        REQUIRE(w);
        const auto r = random::perturb(rng, *w, 0.3);
        const auto rho = recall_rates(s, *w, r);
        const double a = accuracy(s, *w, r);
        CHECK(*std::min_element(rho.begin(), rho.end()) <= a + 1e-12);
        CHECK(a <= *std::max_element(rho.begin(), rho.end()) + 1e-12);
        if (a == 1.0) CHECK(is_hyper_sensitive(s, *w, r));
    }
}

TEST_CASE("tradeoff scan on the Gaussian kline") {
    const auto k = make_kline_gaussian(1.5, 1.0, {1.005, 0.0, 6.0});
    std::vector<double> eps;
    for (int i = 1; i <= 40; ++i) eps.push_back(0.05 * i);
    const auto t = tradeoff_scan(k, eps);
    CHECK(t.accuracy_strictly_decreasing);
    CHECK(t.mass_unimodal);
    CHECK(t.interior_maximum);
    const double exact = std::sqrt(std::log(1.5) / (1.0 - 1.0 / 2.25));
    CHECK(t.epsilon_star == doctest::Approx(exact).epsilon(1e-7));
    CHECK(std::abs(eps[t.grid_argmax] - exact) <= 0.05);
    for (const auto& row : t.rows) {
        CHECK(row.accuracy == doctest::Approx(kline_accuracy(row.epsilon)).epsilon(2e-3));
        CHECK(row.adv_mass == doctest::Approx(kline_ambiguity_mass(1.5, row.epsilon)).epsilon(2e-2));
    }
    CHECK_THROWS_AS(tradeoff_scan(k, std::vector<double>{}), ValidationError);
    CHECK_THROWS_AS(tradeoff_scan(k, std::vector<double>{0.5, 0.4}), ValidationError);
}
