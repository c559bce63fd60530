#include <doctest.h>

#include <random>

#include "tolspace/error.hpp"
#include "tolspace/features.hpp"
#include "tolspace/random_instances.hpp"

using namespace tolspace;

namespace {

ToleranceSpace path3() {
    const IndexPair e[] = {{0, 1}, {1, 2}};
    return ToleranceSpace::from_edges({"p0", "p1", "p2"}, e);
}

ToleranceSpace blocks() {
    const IndexPair e[] = {{0, 1}, {2, 3}};
    return ToleranceSpace::from_edges({"a0", "a1", "b0", "b1"}, e);
}

FeatureRepresentation neighbourhood_rep(const ToleranceSpace& s) {
    std::vector<std::string> ids;
    std::vector<std::vector<std::size_t>> assign(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) {
        ids.push_back("D" + std::to_string(x));
        for (std::size_t y : s.neighborhood(x)) assign[y].push_back(x);
    }
    return FeatureRepresentation(ids, assign);
}

std::vector<std::string> names(const FeatureRepresentation& r, std::size_t x) {
    std::vector<std::string> out;
    for (std::size_t f : r.features_of(x)) out.push_back(r.feature_ids()[f]);
    return out;
}

} // namespace

TEST_CASE("feature representation validation") {
    CHECK_THROWS_AS(FeatureRepresentation({"f", "f"}, {{0}}), ValidationError);
    CHECK_THROWS_AS(FeatureRepresentation({"f"}, {{1}}), ValidationError);
    const FeatureRepresentation r({"f", "g", "h"}, {{1, 0, 1}, {}});
    CHECK(names(r, 0) == std::vector<std::string>{"f", "g"});
    CHECK(r.attributed_count() == 2);
    CHECK(*r.feature_index("h") == 2u);
}

TEST_CASE("indiscernibility") {
    const FeatureRepresentation r({"f", "g"}, {{0}, {0}, {0, 1}});
    CHECK(indiscernible(r, 0, 1));
    CHECK_FALSE(indiscernible(r, 0, 2));
}

TEST_CASE("DFR checks") {
    CHECK(is_dfr(clique_dfr(path3()), path3()).holds);
    const FeatureRepresentation blockrep({"A", "B"}, {{0}, {0}, {1}, {1}});
    CHECK(is_dfr(blockrep, blocks()).holds);
    const FeatureRepresentation global({"g"}, {{0}, {0}, {0}});
    const auto c = is_dfr(global, path3());
    CHECK_FALSE(c.holds);
    CHECK(*c.witness == IndexPair{0, 2});
    const FeatureRepresentation bare({"g"}, {{0}, {}, {0}});
    CHECK(*is_dfr(bare, path3()).witness == IndexPair{0, 1});
}

TEST_CASE("clique DFR") {
    const auto r = clique_dfr(path3());
    CHECK(names(r, 1) == std::vector<std::string>{"(p0,p1)", "(p1)", "(p1,p2)"});
    const auto id = ToleranceSpace::from_edges(default_point_ids(3), {});
    const auto ri = clique_dfr(id);
    CHECK(ri.num_features() == 3);
    for (std::size_t x = 0; x < 3; ++x) CHECK(ri.features_of(x).size() == 1);
    std::vector<IndexPair> all;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = i + 1; j < 5; ++j) all.emplace_back(i, j);
    }
    const auto complete = ToleranceSpace::from_edges(default_point_ids(5), all);
    CHECK(is_dfr(clique_dfr(complete), complete).holds);
}

TEST_CASE("law of indiscriminability") {
    std::vector<IndexPair> e{{0, 1}, {2, 3}};
    const auto b = blocks();
    const auto both = satisfies_law_of_indiscriminability(neighbourhood_rep(b), b, true);
    CHECK(both.law.holds);
    CHECK(both.converse->holds);
    CHECK(both.transitivity_confirmed);

    const auto p = path3();
    const auto one = satisfies_law_of_indiscriminability(neighbourhood_rep(p), p, true);
    CHECK(one.law.holds);
    CHECK_FALSE(one.converse->holds);
    CHECK_FALSE(one.transitivity_confirmed);

    const FeatureRepresentation global({"g"}, {{0}, {0}, {0}});
    const auto bad = satisfies_law_of_indiscriminability(global, p);
    CHECK_FALSE(bad.law.holds);
    CHECK(*bad.law.witness == IndexPair{0, 2});
}

TEST_CASE("both directions force transitivity on random instances") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 200; ++i) {
        const auto s = i % 2 ? random::random_space(rng, 8, 0.3) : random::random_blocks(rng, 8, 3, 1.0);
        const auto c = satisfies_law_of_indiscriminability(neighbourhood_rep(s), s, true);
        if (c.law.holds && c.converse->holds) CHECK(is_transitive(s).transitive);
    }
}

TEST_CASE("semantic clusters") {
    const auto r = clique_dfr(path3());
    const auto c = semantic_cluster(r, std::string("(p0,p1)"));
    CHECK(c.points == PointSet{0, 1});
    CHECK_FALSE(c.hypothetical);
    const FeatureRepresentation h({"f", "ghost"}, {{0}, {0}});
    CHECK(semantic_cluster(h, 1).hypothetical);
    CHECK(semantic_cluster(h, 1).points.empty());
    CHECK_THROWS_AS(semantic_cluster(h, std::string("nope")), ValidationError);
}

TEST_CASE("DFR clusters are cliques inside every member's neighbourhood") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 50; ++i) {
        const auto s = random::random_space(rng, 12, 0.25);
        const auto r = refine(clique_dfr(s), s.ids());
        for (const auto& cl : r.clusters()) {
            for (std::size_t x : cl) {
                for (std::size_t y : cl) CHECK(s.related(x, y));
            }
        }
    }
}

TEST_CASE("refinement") {
    const auto b = blocks();
    const auto r = refine(neighbourhood_rep(b), b.ids());
    CHECK(r.num_features() == 2);
    CHECK(names(r, 0) == std::vector<std::string>{"(a0,a1)"});
    CHECK(names(r, 3) == std::vector<std::string>{"(b0,b1)"});

    const FeatureRepresentation h({"f", "ghost", "g"}, {{0, 2}, {0, 2}});
    const std::vector<std::string> ids{"u", "v"};
    const auto rh = refine(h, ids);
    CHECK(rh.num_features() == 1);
    CHECK(names(rh, 0) == std::vector<std::string>{"(u,v)"});
}

TEST_CASE("refine preserves DFR and is idempotent") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 100; ++i) {
        const auto s = random::random_space(rng, 10, 0.3);
        const auto r1 = refine(clique_dfr(s), s.ids());
        const auto r2 = refine(r1, s.ids());
        CHECK(is_dfr(r1, s).holds);
        CHECK(r1.feature_ids() == r2.feature_ids());
        CHECK(r1.assignments() == r2.assignments());
    }
}

TEST_CASE("finite DFR witness") {
    const auto b = blocks();
    const FeatureRepresentation rep({"A", "B"}, {{0}, {0}, {1}, {1}});
    const auto w = finite_dfr_witness(rep, b, Classifier({1, 2, 3, 3}, 3));
    CHECK(b.related(w.x, w.y));
    CHECK(w.x == 0);
    CHECK(w.y == 1);
    CHECK_THROWS_AS(finite_dfr_witness(rep, b, Classifier({1, 2, 1, 2}, 2)), PreconditionError);
    CHECK_THROWS_AS(finite_dfr_witness(rep, b, Classifier({1, 2, 2, 2}, 3)), PreconditionError);
    const auto id = ToleranceSpace::from_edges(default_point_ids(3), {});
    CHECK_THROWS_AS(finite_dfr_witness(clique_dfr(id), id, Classifier({1, 2, 3}, 3)),
                    PreconditionError);
    const FeatureRepresentation notdfr({"g"}, {{0}, {0}, {0}, {0}});
    CHECK_THROWS_AS(finite_dfr_witness(notdfr, b, Classifier({1, 2, 3, 3}, 3)), PreconditionError);
}

TEST_CASE("Pawlak contrast") {
    const FeatureRepresentation r({"f", "g"}, {{0}, {0}, {1}});
    const auto d = relation_from_contrast(pawlak_contrast(r, {"p0", "p1", "p2"}));
    CHECK(transitive_closure(d.space).classes == std::vector<PointSet>{{0, 1}, {2}});
}
