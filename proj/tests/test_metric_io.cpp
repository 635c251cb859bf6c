#include <random>

#include "doctest.h"
#include "phflow/common.hpp"
#include "phflow/metric_io.hpp"
#include "test_support.hpp"

using namespace phflow;

TEST_CASE("lower-distance and point-cloud give the square metric") {
    auto a = load_metric_input("1\n1.4142135 1\n1 1.4142135 1\n", MetricFormat::LowerDistance);
    auto b = load_metric_input("# corners\n0 0\n1,0\n1 1\n\n0, 1\n", MetricFormat::PointCloud);
    auto sq = testing::square_metric();
    REQUIRE(a.size() == 4);
    REQUIRE(b.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(a(i, j) == doctest::Approx(sq(i, j)).epsilon(1e-7));
            CHECK(b(i, j) == sq(i, j));
        }
}

TEST_CASE("sparse input") {
    auto d = load_metric_input("0 1 1.0\n1 2 2.0\n", MetricFormat::Sparse);
    CHECK(d.size() == 3);
    CHECK(d.is_sparse());
    CHECK(d(0, 1) == 1.0);
    CHECK(d(2, 1) == 2.0);
    CHECK(std::isinf(d(0, 2)));
    CHECK(d.neighbors(1).size() == 2);
    CHECK_THROWS_AS(load_metric_input("0 1 1\n1 0 2\n", MetricFormat::Sparse), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const char* text, MetricFormat f) -> std::size_t {
        try {
            load_metric_input(text, f);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("1\n-2 1\n", MetricFormat::LowerDistance) == 2);
    CHECK(line_of("1\n2 1 3\n", MetricFormat::LowerDistance) == 2);
    CHECK(line_of("# c\n1\nx 1\n", MetricFormat::LowerDistance) == 3);
    CHECK(line_of("0 0\n1\n", MetricFormat::PointCloud) == 2);
    CHECK(line_of("0 1 2\n0 1\n", MetricFormat::Sparse) == 2);
}

TEST_CASE("enclosing radius") {
    CHECK(enclosing_radius(DistanceInput::dense(2, {5})) == 5);
    CHECK(enclosing_radius(testing::square_metric()) == std::sqrt(2.0));
    CHECK(enclosing_radius(DistanceInput::dense(3, {1, 3, 2})) == 2);
    CHECK(enclosing_radius(DistanceInput::dense(1, {})) == 0);
    CHECK_THROWS_AS(enclosing_radius(sparsify_by_threshold(testing::square_metric(), 1)), InvalidArgument);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto d = testing::random_metric(rng, 2 + rng() % 10);
        CHECK(enclosing_radius(d) <= d.max_distance());
    }
}

TEST_CASE("sparsify by threshold") {
    auto sq = testing::square_metric();
    auto s1 = sparsify_by_threshold(sq, 1.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s1.neighbors(i).size() == 2);
    CHECK(s1.neighbors(0)[0].index == 1);
    CHECK(s1.neighbors(0)[1].index == 3);
    auto s0 = sparsify_by_threshold(sq, 0.0);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s0.neighbors(i).empty());
    auto sf = sparsify_by_threshold(sq, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(sf(i, j) == sq(i, j));
}

TEST_CASE("lower-distance round trip is bit exact") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        auto d = testing::random_points(rng, 1 + rng() % 30, 3);
        auto back = load_metric_input(write_lower_distance(d), MetricFormat::LowerDistance);
        REQUIRE(back.size() == d.size());
        CHECK(back.lower() == d.lower());
    }
}
