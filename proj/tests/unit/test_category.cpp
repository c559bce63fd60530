#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "tolspace/category.hpp"
#include "tolspace/error.hpp"
#include "tolspace/random_instances.hpp"

using namespace tolspace;

namespace {

ToleranceSpace blocks() {
    const IndexPair e[] = {{0, 1}, {2, 3}};
    return ToleranceSpace::from_edges({"a0", "a1", "b0", "b1"}, e);
}

SimilarityScale constant(std::size_t n, double c) {
    return SimilarityScale(std::vector<std::vector<double>>(n, std::vector<double>(n, c)));
}

SimilarityScale delta(std::size_t n) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return SimilarityScale(m);
}

// Two elementary classes {a0, a1} and {b}, one shared feature per class.
struct Example {
    ToleranceSpace space;
    TverskyModel model;
};

Example two_plus_one(double alpha, double beta) {
    const IndexPair e[] = {{0, 1}};
    auto s = ToleranceSpace::from_edges({"a0", "a1", "b"}, e);
    FeatureRepresentation rep({"A", "B"}, {{0}, {0}, {1}});
    return {std::move(s), TverskyModel(alpha, beta, 1.0, {1.0, 1.0}, std::move(rep))};
}

const PointSet kAll3{0, 1, 2};

} // namespace

TEST_CASE("similarity scale validation") {
    CHECK_THROWS_AS(SimilarityScale({{1.0, 2.0}, {0.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(SimilarityScale({{1.0}, {0.0, 1.0}}), ValidationError);
    CHECK_NOTHROW(SimilarityScale({{1.0, 1.0}, {0.5, 1.0}}));
    const FeatureRepresentation rep({"f"}, {{0}});
    CHECK_THROWS_AS(TverskyModel(-1.0, 0, 1, {1.0}, rep), ValidationError);
    CHECK_THROWS_AS(TverskyModel(0, 0, 1, {1.0, 2.0}, rep), ValidationError);
    CHECK_THROWS_AS(TverskyModel(0, 0, 1, {-1.0}, rep), ValidationError);
}

TEST_CASE("affinity") {
    const auto b = blocks();
    const PointSet half{0, 1};
    CHECK(affinity(b, constant(4, 1.0), 3, half) == doctest::Approx(0.5));
    const PointSet all{0, 1, 2, 3};
    CHECK(affinity(b, delta(4), 2, all) == doctest::Approx(0.25));
    CHECK_THROWS_AS(affinity(b, delta(4), 2, PointSet{}), ValidationError);
}

TEST_CASE("prototypes and fringe") {
    const auto b = blocks();
    const PointSet all{0, 1, 2, 3};
    CHECK(prototypes(b, constant(4, 2.0), all) == all);
    CHECK(fringe(b, constant(4, 2.0), all) == all);
    const auto ex = two_plus_one(0.5, 0.5);
    const auto s = ex.model.scale();
    CHECK(prototypes(ex.space, s, kAll3) == PointSet{0, 1});
    CHECK(fringe(ex.space, s, kAll3) == PointSet{2});
    const auto p = affinity(ex.space, s, 0, kAll3);
    CHECK(m_core(ex.space, s, kAll3, p) == PointSet{0, 1});
    CHECK(tau_fringe(ex.space, s, kAll3, p - 1e-9) == PointSet{2});
    CHECK(m_core(ex.space, s, kAll3, 1e9).empty());
    const auto bounds = affinity_bounds(ex.space, s, kAll3);
    for (std::size_t x : kAll3) {
        const double v = affinity(ex.space, s, x, kAll3);
        CHECK(v >= bounds.lo);
        CHECK(v <= bounds.hi);
    }
}

TEST_CASE("Tversky similarity") {
    const auto ex = two_plus_one(0.5, 0.25);
    CHECK(tversky_similarity(ex.model, 0, 1) == 1.0);
    CHECK(tversky_similarity(ex.model, 0, 2) == doctest::Approx(-0.75));
    CHECK(tversky_similarity(ex.model, 2, 2) == 1.0);
}

TEST_CASE("closed form collapses when alpha = beta = 0") {
    const auto ex = two_plus_one(0.0, 0.0);
    CHECK(tversky_affinity_closed_form(ex.model, ex.space, 0, kAll3) ==
          doctest::Approx(1.0 * 1.0 * (2.0 / 3.0)));
}

TEST_CASE("closed form equals brute force on the worked instance") {
    const auto ex = two_plus_one(0.7, 0.3);
    const auto s = ex.model.scale();
    for (std::size_t x : kAll3) {
        const double brute = affinity(ex.space, s, x, kAll3);
        CHECK(tversky_affinity_closed_form(ex.model, ex.space, x, kAll3) ==
              doctest::Approx(brute).epsilon(1e-12));
        CHECK(oracle::tversky_affinity_brute(ex.model, ex.space, x, kAll3) ==
              doctest::Approx(brute).epsilon(1e-12));
    }
}

TEST_CASE("closed form for a point in a zero-mass class") {
    const IndexPair e[] = {{0, 1}};
    const auto s = ToleranceSpace::from_edges({"a0", "a1", "z"}, e, {1.0, 1.0, 0.0});
    const TverskyModel m(0.0, 0.5, 1.0, {1.0, 2.0},
                         FeatureRepresentation({"A", "Z"}, {{0}, {0}, {1}}));
    const double closed = tversky_affinity_closed_form(m, s, 2, kAll3);
    CHECK(closed == doctest::Approx(-0.5 * importance(m, s, kAll3)));
    CHECK(closed == doctest::Approx(affinity(s, m.scale(), 2, kAll3)));
}

TEST_CASE("closed form hypothesis failures are reported") {
    const auto ex = two_plus_one(0.5, 0.5);
    const PointSet split{0, 2};
    CHECK_THROWS_AS(tversky_affinity_closed_form(ex.model, ex.space, 0, split), PreconditionError);
    const PointSet lone{2};
    CHECK(tversky_hypothesis_failure(ex.model, ex.space, 0, lone)->find("not in D") != std::string::npos);
    const IndexPair e[] = {{0, 1}};
    const auto s = ToleranceSpace::from_edges({"a0", "a1", "b"}, e);
    const TverskyModel shared(0.5, 0.5, 1.0, {1.0}, FeatureRepresentation({"g"}, {{0}, {0}, {0}}));
    const auto why = tversky_hypothesis_failure(shared, s, 0, kAll3);
    REQUIRE(why);
    CHECK(why->find("non-metamorphic") != std::string::npos);
    const TverskyModel partial(0.5, 0.5, 1.0, {1.0, 1.0},
                               FeatureRepresentation({"A", "X"}, {{0, 1}, {0}, {}}));
    CHECK(tversky_hypothesis_failure(partial, s, 0, kAll3)->find("full salience") != std::string::npos);
}

TEST_CASE("structural entropy and index of coincidence") {
    const auto b = blocks();
    const PointSet a{0, 1};
    CHECK(structural_entropy(b, a) == doctest::Approx(0.0));
    CHECK(index_of_coincidence(b, a) == doctest::Approx(1.0));
    const PointSet all{0, 1, 2, 3};
    CHECK(structural_entropy(b, all) == doctest::Approx(1.0));
    CHECK(index_of_coincidence(b, all) == doctest::Approx(0.5));
    const IndexPair e[] = {{0, 1}, {1, 2}};
    const auto s = ToleranceSpace::from_edges(default_point_ids(4), e);
    CHECK(structural_entropy(s, all) == doctest::Approx(0.8112781244591328));
    CHECK(index_of_coincidence(s, all) == doctest::Approx(10.0 / 16.0));
    CHECK_THROWS_AS(structural_entropy(b, PointSet{0, 2}), PreconditionError);
    const auto z = ToleranceSpace::from_edges(default_point_ids(2), {}, {1.0, 0.0});
    CHECK_THROWS_AS(index_of_coincidence(z, PointSet{1}), PreconditionError);
}

TEST_CASE("entropy zero and coincidence one exactly on single classes") {
    std::mt19937_64 rng(51);
    for (int i = 0; i < 100; ++i) {
        const auto s = random::random_blocks(rng, 12, 4, 0.3, random::Weights::positive);
        const auto part = transitive_closure(s);
        PointSet D;
        std::size_t used = 0;
        for (const auto& cls : part.classes) {
            if (std::bernoulli_distribution(0.5)(rng)) {
                D.insert(D.end(), cls.begin(), cls.end());
                ++used;
            }
        }
        if (used == 0) {
            D = part.classes[0];
            used = 1;
        }
        std::sort(D.begin(), D.end());
        const double h = structural_entropy(s, D);
        const double ic = index_of_coincidence(s, D);
        CHECK((std::abs(h) < 1e-12) == (used == 1));
        CHECK((std::abs(ic - 1.0) < 1e-12) == (used == 1));
    }
}

TEST_CASE("importance and expected affinity") {
    const auto b = blocks();
    const TverskyModel m(0.0, 0.0, 1.0, {2.0, 2.0},
                         FeatureRepresentation({"A", "B"}, {{0}, {0}, {1}, {1}}));
    const PointSet a{0, 1, 2};
    CHECK(importance(m, b, a) == doctest::Approx(2.0 * 0.75));
    CHECK(expected_affinity(b, constant(4, 1.0), a) == doctest::Approx(0.75));
    const auto ex = two_plus_one(0.4, 0.6);
    const auto s = ex.model.scale();
    double iterated = 0.0;
    for (std::size_t x : kAll3) {
        for (std::size_t y : kAll3) iterated += ex.space.probability(x) * ex.space.probability(y) * s(x, y);
    }
    CHECK(expected_affinity(ex.space, s, kAll3) == doctest::Approx(iterated / ex.space.measure(kAll3)));
}

TEST_CASE("salience regularity") {
    const auto b = blocks();
    const TverskyModel per_class(0.1, 0.1, 1.0, {1.5, 0.5},
                                 FeatureRepresentation({"A", "B"}, {{0}, {0}, {1}, {1}}));
    CHECK(salience_regularity_check(per_class, b));
    const TverskyModel uneven(0.1, 0.1, 1.0, {1.5, 0.5},
                              FeatureRepresentation({"A", "B"}, {{0}, {0, 1}, {1}, {1}}));
    CHECK_FALSE(salience_regularity_check(uneven, b));
    const TverskyModel flat(0.1, 0.1, 1.0, {1.0},
                            FeatureRepresentation({"g"}, {{0}, {0}, {0}, {0}}));
    CHECK(salience_regularity_check(flat, b));
}

TEST_CASE("random Tversky instances satisfy the closed form") {
    std::mt19937_64 rng(52);
    for (int i = 0; i < 50; ++i) {
        const auto s = random::random_blocks(rng, 16, 5, 0.3, random::Weights::positive);
        const auto m = random::random_tversky(rng, s);
        const auto scale = m.scale();
        PointSet all(16);
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t x : all) {
            CHECK(tversky_affinity_closed_form(m, s, x, all) ==
                  doctest::Approx(affinity(s, scale, x, all)).epsilon(1e-10));
        }
        CHECK(salience_regularity_check(m, s));
    }
}
