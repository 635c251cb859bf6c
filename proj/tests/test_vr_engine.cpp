#include <random>

#include "doctest.h"
#include "phflow/common.hpp"
#include "phflow/vr_engine.hpp"
#include "test_support.hpp"
#include "vr_oracle.hpp"

using namespace phflow;

namespace {

DistanceInput constant_metric(std::size_t n, double v = 1.0) {
    return DistanceInput::dense(n, std::vector<double>(n * (n - 1) / 2, v));
}

// Edge diameters decreasing along increasing cidx.
DistanceInput lex_decreasing_metric(std::size_t n) {
    std::size_t m = n * (n - 1) / 2;
    std::vector<double> lower(m);
    BinomialTable t(n, 2);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<Vertex> e{Vertex(i), Vertex(j)};
            lower[i * (i - 1) / 2 + j] = static_cast<double>(m - cidx_encode(e, t));
        }
    return DistanceInput::dense(n, std::move(lower));
}

std::set<testing::OraclePair> engine_pairs(const VrResult& r) {
    std::set<testing::OraclePair> out;
    for (auto& p : r.pairs) out.insert({p.dim, p.birth.cidx, p.death ? p.death->cidx : ~Index{0}});
    return out;
}

}  // namespace

TEST_CASE("pair store checks overflow before the apparent array") {
    PairStore s;
    s.set_apparent({{{7, 2, 1.0}, {3, 1, 1.0}}, {{2, 2, 1.0}, {1, 1, 1.0}}});
    CHECK(s.lookup(2)->cidx == 1);
    CHECK(s.lookup(7)->cidx == 3);
    CHECK(!s.lookup(5));
    s.insert({5, 2, 2.0}, {4, 1, 1.0});
    CHECK(s.lookup(5)->cidx == 4);
    CHECK(s.size() == 3);
    CHECK(s.cofacets() == std::vector<Index>{2, 5, 7});
}

TEST_CASE("working column cancels duplicates and pops the oldest entry first") {
    WorkingColumn w;
    w.push({4, 2, 2.0});
    w.push({9, 2, 1.0});
    w.push({3, 2, 1.0});
    w.push({9, 2, 1.0});
    auto p = w.pivot();
    REQUIRE(p);
    CHECK(p->cidx == 3);
    auto rest = w.drain();
    REQUIRE(rest.size() == 2);
    CHECK(rest[0].cidx == 3);
    CHECK(rest[1].cidx == 4);
}

TEST_CASE("zero-dimensional persistence") {
    BinomialTable t2(2, 3);
    auto two = zero_dim_persistence(DistanceInput::dense(2, {1.0}), 10, t2);
    CHECK(two.diagram.finite == std::vector<DiagramPoint>{{0, 1}});
    CHECK(two.diagram.infinite == std::vector<double>{0});

    auto sq = testing::square_metric();
    BinomialTable t4(4, 3);
    auto z = zero_dim_persistence(sq, std::sqrt(2.0), t4);
    CHECK(z.diagram.finite == std::vector<DiagramPoint>{{0, 1}, {0, 1}, {0, 1}});
    CHECK(z.diagram.infinite.size() == 1);
    REQUIRE(z.complementary_edges.size() == 3);
    CHECK(z.complementary_edges[0].diam == std::sqrt(2.0));
    CHECK(z.complementary_edges[1].diam == std::sqrt(2.0));
    CHECK(z.complementary_edges[2].diam == 1.0);
    // Complementary edges are exactly the columns left after clearing the spanning tree.
    std::vector<Index> tree;
    for (auto& p : z.pairs) tree.push_back(p.death->cidx);
    CHECK(build_reduction_columns(sq, 1, std::sqrt(2.0), tree, t4).entries == z.complementary_edges);

    BinomialTable t1(1, 3);
    auto one = zero_dim_persistence(DistanceInput::dense(1, {}), 0, t1);
    CHECK(one.diagram.finite.empty());
    CHECK(one.diagram.infinite == std::vector<double>{0});
}

TEST_CASE("apparent pairs: equilateral triangle and the equal-diameter bound") {
    auto tri = constant_metric(3);
    BinomialTable t3(3, 3);
    auto scan = find_apparent_pairs(build_reduction_columns(tri, 1, 1.0, {}, t3), tri, 1.0, t3);
    REQUIRE(scan.pairs.size() == 1);
    CHECK(scan.pairs[0].first.dim == 2);
    CHECK(scan.pairs[0].second.cidx == 0);
    CHECK(scan.nonapparent.size() == 2);

    auto five = constant_metric(5);
    auto lex = lex_decreasing_metric(5);
    BinomialTable t5(5, 3);
    auto a = find_apparent_pairs(build_reduction_columns(five, 1, 1.0, {}, t5), five, 1.0, t5);
    auto b = find_apparent_pairs(build_reduction_columns(lex, 1, 100, {}, t5), lex, 100, t5);
    CHECK(a.pairs.size() == 6);
    CHECK(b.pairs.size() == 6);
    std::set<Index> ca, cb;
    for (auto& p : a.pairs) ca.insert(p.second.cidx);
    for (auto& p : b.pairs) cb.insert(p.second.cidx);
    CHECK(ca == cb);
    CHECK(ca == std::set<Index>{0, 1, 2, 3, 4, 5});  // the edges avoiding vertex 4

    for (std::size_t n = 4; n <= 25; ++n) {
        auto r = vr_barcode(constant_metric(n), {.maxdim = 1, .threshold = 1.0});
        CHECK(r.stats[1].apparent == (n - 1) * (n - 2) / 2);
        auto s = vr_barcode(lex_decreasing_metric(n), {.maxdim = 1, .threshold = 1e9});
        CHECK(s.stats[1].apparent == (n - 1) * (n - 2) / 2);
    }
}

TEST_CASE("oblivious column reduction") {
    auto five = constant_metric(5);
    BinomialTable t5(5, 3);
    PairStore empty;
    auto o = reduce_column_oblivious({0, 1, 1.0}, empty, five, 1.0, t5);
    CHECK(o.kind == PairKind::Shortcut);
    CHECK(o.additions == 0);

    auto sq = testing::square_metric();
    auto r = vr_barcode(sq, {.maxdim = 1, .record_pairs = true});
    REQUIRE(r.diagrams[1].finite.size() == 1);
    CHECK(r.diagrams[1].finite[0].birth == 1.0);
    CHECK(r.diagrams[1].finite[0].death == std::sqrt(2.0));
    CHECK(r.diagrams[1].infinite.empty());
    CHECK(r.diagrams[0].finite == std::vector<DiagramPoint>{{0, 1}, {0, 1}, {0, 1}});
    CHECK(r.diagrams[0].infinite == std::vector<double>{0});
    bool found = false;
    for (auto& p : r.pairs)
        if (p.dim == 1 && p.death && p.death->diam > p.birth.diam) {
            found = true;
            CHECK(p.kind != PairKind::Apparent);
        }
    CHECK(found);
}

TEST_CASE("collinear points at the enclosing radius") {
    auto d = DistanceInput::dense(3, {1, 3, 2});
    auto r = vr_barcode(d, {.maxdim = 1});
    CHECK(r.threshold == 2);
    CHECK(r.diagrams[1].finite.empty());
    CHECK(r.diagrams[1].infinite.empty());
    auto full = vr_barcode(d, {.maxdim = 1, .threshold = 1e9});
    CHECK(r.diagrams[0].finite == full.diagrams[0].finite);
}

TEST_CASE("monotone re-map keeps pairing indices") {
    auto d = DistanceInput::dense(3, {1, 2, 3});
    auto m = DistanceInput::dense(3, {10, 20, 30});
    VrOptions o{.maxdim = 1, .threshold = 1e9, .include_zero = true, .record_pairs = true};
    auto a = vr_barcode(d, o), b = vr_barcode(m, o);
    CHECK(engine_pairs(a) == engine_pairs(b));
    for (std::size_t i = 0; i < a.diagrams[0].finite.size(); ++i)
        CHECK(b.diagrams[0].finite[i].death == 10 * a.diagrams[0].finite[i].death);
}

TEST_CASE("engine equals the explicit boundary-matrix oracle") {
    std::mt19937_64 rng(314);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + rng() % 10;
        auto d = testing::random_metric(rng, n, trial % 3 == 0);
        std::uint32_t maxdim = rng() % 3;
        bool zero = trial % 2;
        double t = trial % 4 == 0 ? 1e9 : std::uniform_real_distribution<double>(0, 10)(rng);
        auto expect = testing::oracle_barcode(d, maxdim, t, zero);
        for (auto mode : {ReductionMode::Oblivious, ReductionMode::ReductionMatrix})
            for (bool scan : {true, false})
                for (bool shortcut : {true, false}) {
                    VrOptions o{.maxdim = maxdim, .threshold = t, .mode = mode, .include_zero = zero,
                                .workers = unsigned(1 + trial % 3), .apparent_scan = scan,
                                .emergent_shortcut = shortcut, .record_pairs = true};
                    auto r = vr_barcode(d, o);
                    CHECK(r.diagrams == expect.diagrams);
                    CHECK(engine_pairs(r) == expect.pairs);
                }
        auto sp = vr_barcode(sparsify_by_threshold(d, t), {.maxdim = maxdim, .threshold = t, .include_zero = zero});
        CHECK(sp.diagrams == expect.diagrams);
    }
}

TEST_CASE("apparent pairs are shortcut pairs, shortcut pairs are pairs") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 60; ++trial) {
        auto d = testing::random_points(rng, 4 + rng() % 12, 2);
        VrOptions o{.maxdim = 2, .threshold = 1e9, .include_zero = true, .record_pairs = true};
        auto with = vr_barcode(d, o);
        o.apparent_scan = false;
        auto without = vr_barcode(d, o);
        std::set<std::pair<Index, Index>> apparent, shortcut, all;
        for (auto& p : with.pairs)
            if (p.kind == PairKind::Apparent) apparent.insert({p.birth.cidx + 1000000 * p.dim, p.death->cidx});
        for (auto& p : without.pairs) {
            if (!p.death) continue;
            std::pair<Index, Index> key{p.birth.cidx + 1000000 * p.dim, p.death->cidx};
            all.insert(key);
            if (p.kind == PairKind::Shortcut) shortcut.insert(key);
        }
        CHECK(std::includes(shortcut.begin(), shortcut.end(), apparent.begin(), apparent.end()));
        CHECK(std::includes(all.begin(), all.end(), shortcut.begin(), shortcut.end()));
        CHECK(engine_pairs(with) == engine_pairs(without));
    }
}

TEST_CASE("identical output across worker counts") {
    std::mt19937_64 rng(1);
    auto d = testing::random_points(rng, 60, 3);
    auto r1 = vr_barcode(d, {.maxdim = 2, .workers = 1});
    for (unsigned w : {2u, 8u}) {
        auto rw = vr_barcode(d, {.maxdim = 2, .workers = w});
        for (std::uint32_t p = 0; p <= 2; ++p) CHECK(write_diagram(rw.diagrams[p]) == write_diagram(r1.diagrams[p]));
    }
}

TEST_CASE("errors") {
    auto sp = DistanceInput::sparse(100000, std::vector<std::vector<Neighbor>>(100000));
    CHECK_THROWS_AS(vr_barcode(sp, {.maxdim = 12, .threshold = 1.0}), CapacityError);
    CHECK_THROWS_AS(vr_barcode(sp, {.maxdim = 1}), InvalidArgument);
    auto r = vr_barcode(DistanceInput::dense(0, {}), {});
    CHECK(r.diagrams.size() == 2);
}
