#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tolspace/error.hpp"
#include "tolspace/metric.hpp"
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

double max_abs(const PerceptualFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("graph and perceptual distances") {
    CHECK(graph_distance(path3(), 0, 2).hops() == 2);
    CHECK(graph_distance(path3(), 1, 1).hops() == 0);
    CHECK(graph_distance(blocks(), 0, 2).is_infinite());
    CHECK(perceptual_distance(path3(), 0, 1) == 0.5);
    CHECK(perceptual_distance(path3(), 0, 2) == doctest::Approx(2.0 / 3.0));
    CHECK(perceptual_distance(blocks(), 0, 3) == 1.0);
    CHECK_THROWS_AS(graph_distance(path3(), 0, 7), ValidationError);
}

TEST_CASE("strata") {
    const auto st = strata(blocks(), 0);
    REQUIRE(st.size() == 3);
    CHECK(st[0].points == PointSet{0});
    CHECK(st[1].radius == 0.5);
    CHECK(st[1].points == PointSet{1});
    CHECK(st[2].radius == 1.0);
    CHECK(st[2].hops.is_infinite());
    CHECK(st[2].points == PointSet{2, 3});
    const auto tc = strata(path3(), 0);
    CHECK(tc.back().radius < 1.0);
    const auto one = strata(ToleranceSpace::from_edges({"x"}, {}), 0);
    REQUIRE(one.size() == 1);
    CHECK(one[0].radius == 0.0);
}

TEST_CASE("spheres below radius 1 make up the elementary class") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
        const auto s = random::random_space(rng, 20, 0.08);
        const auto part = transitive_closure(s);
        for (std::size_t x = 0; x < s.size(); x += 3) {
            PointSet inner;
            for (const auto& st : strata(s, x)) {
                if (st.radius < 1.0) inner.insert(inner.end(), st.points.begin(), st.points.end());
            }
            std::sort(inner.begin(), inner.end());
            CHECK(inner == part.class_of(x));
        }
    }
}

TEST_CASE("perceptual distance is a metric with Doppelgangers at 1/2") {
    std::mt19937_64 rng(8);
    for (int i = 0; i < 20; ++i) {
        const auto s = random::random_space(rng, 16, 0.12);
        const auto hops = oracle::hop_matrix(s);
        const std::size_t n = s.size();
        std::vector<std::vector<double>> d(n, std::vector<double>(n));
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                d[x][y] = perceptual_distance(s, x, y);
                const double expect = hops[x][y] < 0 ? 1.0 : hops[x][y] / (1.0 + hops[x][y]);
                CHECK(d[x][y] == doctest::Approx(expect));
                CHECK((d[x][y] == 0.5) == (x != y && s.related(x, y)));
            }
        }
        for (std::size_t x = 0; x < n; ++x) {
            CHECK(d[x][x] == 0.0);
            for (std::size_t y = 0; y < n; ++y) {
                CHECK(d[x][y] == d[y][x]);
                if (x != y) CHECK(d[x][y] > 0.0);
                for (std::size_t z = 0; z < n; ++z) CHECK(d[x][z] <= d[x][y] + d[y][z] + 1e-15);
            }
        }
    }
}

TEST_CASE("chain Laplacian examples") {
    const auto b = blocks();
    CHECK(max_abs(laplacian_sigma(b, PerceptualFunction({1, 1, 5, 5}))) == 0.0);
    const auto osc = laplacian_sigma(b, PerceptualFunction({1, -1, 3, -3}));
    CHECK(osc.values() == std::vector<double>{1, -1, 3, -3});
    CHECK(max_abs(laplacian_sigma(path3(), PerceptualFunction({2, 2, 2}))) == 0.0);
    const auto z = ToleranceSpace::from_edges(default_point_ids(2), {}, {1.0, 0.0});
    CHECK_THROWS_AS(laplacian_sigma(z, PerceptualFunction({1, 1})), PreconditionError);
    CHECK_THROWS_AS(laplacian_sigma(b, PerceptualFunction({1, 1})), ValidationError);
    CHECK_THROWS_AS(PerceptualFunction({1.0, std::nan("")}), ValidationError);
}

TEST_CASE("discrimination Laplacian") {
    const auto p = path3();
    CHECK(max_abs(laplacian_ad(p, sqrt_degree(p))) < 1e-15);
    CHECK(max_abs(laplacian_ad(p, PerceptualFunction({1, 1, 1}))) > 0.1);
    const auto z = ToleranceSpace::from_edges(default_point_ids(2), {}, {1.0, 0.0});
    CHECK_THROWS_AS(laplacian_ad(z, PerceptualFunction({1, 1})), PreconditionError);
}

TEST_CASE("on transitive spaces the two Laplacians coincide") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const auto s = random::random_blocks(rng, 15, 4, 1.0, random::Weights::positive);
        const PerceptualFunction f(random::random_function(rng, 15));
        const auto a = laplacian_ad(s, f);
        const auto b = laplacian_sigma(s, f);
        for (std::size_t x = 0; x < 15; ++x) CHECK(a[x] == doctest::Approx(b[x]).epsilon(1e-12));
    }
}

TEST_CASE("regular decomposition and perceptual regularity") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const auto s = random::random_blocks(rng, 14, 3, 0.2, random::Weights::positive);
        const PerceptualFunction f(random::random_function(rng, 14));
        const auto dec = regular_decomposition(s, f);
        CHECK(is_perceptually_regular(s, dec.regular, 1e-12));
        CHECK(max_abs(laplacian_sigma(s, dec.regular)) < 1e-12);
        const auto fixed = laplacian_sigma(s, dec.oscillating);
        for (std::size_t x = 0; x < 14; ++x) {
            CHECK(dec.regular[x] + dec.oscillating[x] == doctest::Approx(f[x]));
            CHECK(std::abs(fixed[x] - dec.oscillating[x]) < 1e-12);
        }
        CHECK(is_perceptually_regular(s, f) == (max_abs(laplacian_sigma(s, f)) == 0.0));
    }
    CHECK(is_perceptually_regular(blocks(), PerceptualFunction({1, 1, 0, 0})));
    CHECK_FALSE(is_perceptually_regular(blocks(), PerceptualFunction({1, 0, 0, 0})));
}

TEST_CASE("spectra") {
    const auto b = blocks();
    const auto ev = laplacian_spectrum(b, LaplacianKind::chain);
    REQUIRE(ev.size() == 4);
    CHECK(std::abs(ev[0]) < 1e-12);
    CHECK(std::abs(ev[3] - 1.0) < 1e-12);
    const auto ad = laplacian_spectrum(path3(), LaplacianKind::discrimination);
    CHECK(std::abs(ad[0]) < 1e-12);
    CHECK_THROWS_AS(laplacian_spectrum(b, LaplacianKind::chain, 3), GuardExceeded);
    const auto m = laplacian_matrix(b, LaplacianKind::chain);
    CHECK(m.size() == 16);
    CHECK(m[0] == doctest::Approx(0.5));
    CHECK(m[1] == doctest::Approx(-0.5));
}

TEST_CASE("chain spectrum with zero-weight points") {
    const IndexPair e[] = {{0, 1}, {1, 2}};
    const auto s = ToleranceSpace::from_edges(default_point_ids(4), e, {1.0, 0.0, 2.0, 1.0});
    for (double v : laplacian_spectrum(s, LaplacianKind::chain)) {
        CHECK((std::abs(v) < 1e-9 || std::abs(v - 1.0) < 1e-9));
    }
}
