#include <cmath>
#include <random>

#include "doctest.h"
#include "phflow/common.hpp"
#include "phflow/diagram.hpp"

using namespace phflow;

TEST_CASE("diagonal projection") {
    auto a = project_to_diagonal({0, 2});
    CHECK(a.point == DiagramPoint{1, 1});
    CHECK(a.distance == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

    auto b = project_to_diagonal({3.5, 3.5});
    CHECK(b.point == DiagramPoint{3.5, 3.5});
    CHECK(b.distance == 0.0);

    auto c = project_to_diagonal({7, 12});
    CHECK(c.point == DiagramPoint{9.5, 9.5});
    CHECK(c.distance == doctest::Approx(5 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("parse finite, infinite and comment lines") {
    auto d = parse_diagram("# dim 1\n1 1.4142135\n\n0 inf\n0\tinf\n", 1);
    CHECK(d.dim == 1);
    CHECK(d.finite == std::vector<DiagramPoint>{{1, 1.4142135}});
    CHECK(d.infinite == std::vector<double>{0, 0});
}

TEST_CASE("parse errors carry the line number") {
    try {
        parse_diagram("0 1\n2 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_diagram("3 1\n"), ParseError);
    CHECK_THROWS_AS(parse_diagram("0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_diagram("0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_diagram("inf inf\n"), ParseError);
}

TEST_CASE("exact round trip keeps multiplicities") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 100), len(1e-9, 10);
    PersistenceDiagram d;
    for (int i = 0; i < 1000; ++i) {
        double b = u(rng);
        d.finite.push_back({b, b + len(rng)});
        if (i % 50 == 0) d.finite.push_back(d.finite.back());
        if (i % 97 == 0) d.infinite.push_back(b);
    }
    auto back = parse_diagram(write_diagram(d));
    d.canonicalize();
    back.canonicalize();
    CHECK(back == d);
}

TEST_CASE("fixed-precision output") {
    PersistenceDiagram d;
    d.finite.push_back({1, std::sqrt(2.0)});
    d.infinite.push_back(0);
    CHECK(write_diagram(d, 9) == "1 1.41421356\n0 inf\n");
}
