#include <random>

#include "doctest.h"
#include "phflow/common.hpp"
#include "phflow/simplex_codec.hpp"
#include "test_support.hpp"

using namespace phflow;

namespace {

// Plain recursive enumeration of k-subsets in colexicographic order, largest vertex first.
void subsets(std::size_t n, std::size_t k, std::vector<std::vector<Vertex>>& out) {
    std::vector<Vertex> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t below) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = 0; v < below; ++v) {
            cur.push_back(static_cast<Vertex>(v));
            rec(v);
            cur.pop_back();
        }
    };
    rec(n);
}

Index binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    Index r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("binomial table values and overflow") {
    BinomialTable t(60, 10);
    for (std::size_t n = 0; n <= 60; ++n)
        for (std::size_t k = 0; k <= 10; ++k) CHECK(t(n, k) == binom(n, k));
    CHECK_THROWS_AS(BinomialTable(70, 35), CapacityError);
    CHECK_NOTHROW(BinomialTable(66, 33));
}

TEST_CASE("cidx_encode examples") {
    BinomialTable t(10, 5);
    std::vector<Vertex> a{2, 1, 0}, b{3, 1, 0}, c{4, 2, 1};
    CHECK(cidx_encode(a, t) == 0);
    CHECK(cidx_encode(b, t) == 1);
    CHECK(cidx_encode(c, t) == 6);
    std::vector<Vertex> bad{1, 2, 0};
    CHECK_THROWS_AS(cidx_encode(bad, t), InvalidArgument);
}

TEST_CASE("cidx_decode examples") {
    BinomialTable t(10, 5);
    CHECK(cidx_decode(0, 2, t) == std::vector<Vertex>{2, 1, 0});
    CHECK(cidx_decode(6, 2, t) == std::vector<Vertex>{4, 2, 1});
    CHECK(cidx_decode(1, 1, t) == std::vector<Vertex>{2, 0});
    CHECK_THROWS_AS(cidx_decode(binom(10, 3), 2, t), InvalidArgument);
}

TEST_CASE("bijection over all indices, n <= 12, dim <= 4") {
    for (std::size_t n = 1; n <= 12; ++n) {
        BinomialTable t(n, 6);
        for (std::uint32_t dim = 0; dim <= 4 && dim < n; ++dim) {
            std::vector<std::vector<Vertex>> all;
            subsets(n, dim + 1, all);
            REQUIRE(all.size() == binom(n, dim + 1));
            std::set<Index> seen;
            for (auto& s : all) {
                Index i = cidx_encode(s, t);
                CHECK(i < t(n, dim + 1));
                CHECK(cidx_decode(i, dim, t) == s);
                seen.insert(i);
            }
            CHECK(seen.size() == all.size());
        }
    }
}

TEST_CASE("dense cofacet examples") {
    auto d3 = DistanceInput::dense(3, {1, 1, 1});
    BinomialTable t3(3, 4);
    CHECK(enumerate_cofacets_dense({0, 2, 1.0}, d3, t3).empty());

    auto d4 = DistanceInput::dense(4, {1, 2, 3, 4, 5, 6});
    BinomialTable t4(4, 4);
    auto c = enumerate_cofacets_dense({0, 1, 1.0}, d4, t4);  // edge (1,0)
    REQUIRE(c.size() == 2);
    CHECK(c[0].cidx == 1);
    CHECK(c[1].cidx == 0);
    CHECK(cidx_decode(c[0].cidx, 2, t4) == std::vector<Vertex>{3, 1, 0});
    CHECK(c[0].diam == 5);  // max(d(1,0), d(3,0), d(3,1)) = max(1, 4, 5)
    CHECK(c[1].diam == 3);

    auto d5 = DistanceInput::dense(5, std::vector<double>(10, 1.0));
    BinomialTable t5(5, 4);
    auto e = enumerate_cofacets_dense({0, 0, 0.0}, d5, t5);
    REQUIRE(e.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(cidx_decode(e[i].cidx, 1, t5) == std::vector<Vertex>{Vertex(4 - i), 0});
}

TEST_CASE("sparse cofacet examples") {
    BinomialTable t(4, 4);
    auto d = DistanceInput::sparse(2, {{{1, 1.0}}, {{0, 1.0}}});
    BinomialTable t2(2, 4);
    CHECK(enumerate_cofacets_sparse({0, 1, 1.0}, d, t2).empty());

    auto ds = DistanceInput::sparse(4, {{{1, 1}, {2, 1}, {3, 1}}, {{0, 1}, {2, 1}, {3, 1}}, {{0, 1}, {1, 1}}, {{0, 1}, {1, 1}}});
    auto c = enumerate_cofacets_sparse({0, 1, 1.0}, ds, t);
    REQUIRE(c.size() == 2);
    CHECK(cidx_decode(c[0].cidx, 2, t) == std::vector<Vertex>{3, 1, 0});
    CHECK(cidx_decode(c[1].cidx, 2, t) == std::vector<Vertex>{2, 1, 0});
}

TEST_CASE("sparse enumeration equals dense on complete neighbor lists, and filters missing pairs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + rng() % 7;
        auto d = testing::random_metric(rng, n);
        BinomialTable t(n, 5);
        double cut = std::uniform_real_distribution<double>(0, 10)(rng);
        auto full = sparsify_by_threshold(d, 1e300);
        auto part = sparsify_by_threshold(d, cut);
        for (std::uint32_t dim = 0; dim + 1 < n && dim <= 3; ++dim) {
            for (Index i = 0; i < t(n, dim + 1); ++i) {
                auto verts = cidx_decode(i, dim, t);
                SimplexEntry s{i, dim, simplex_diameter(verts, d)};
                auto dense = enumerate_cofacets_dense(s, d, t);
                CHECK(enumerate_cofacets_sparse(s, full, t) == dense);
                if (s.diam > cut) continue;
                std::vector<SimplexEntry> expect;
                for (auto& c : dense)
                    if (c.diam <= cut) expect.push_back(c);
                CHECK(enumerate_cofacets_sparse(s, part, t) == expect);
            }
        }
    }
}

TEST_CASE("facet examples") {
    auto d = DistanceInput::dense(3, {1, 2, 3});
    BinomialTable t(3, 4);
    auto f = enumerate_facets({0, 2, 3.0}, d, t);
    REQUIRE(f.size() == 3);
    CHECK(f[0].cidx == 0);
    CHECK(f[1].cidx == 1);
    CHECK(f[2].cidx == 2);
    CHECK(f[0].diam == 1);  // (1,0)
    CHECK(f[1].diam == 2);  // (2,0)
    CHECK(f[2].diam == 3);  // (2,1)
    auto v = enumerate_facets({0, 1, 1.0}, d, t);
    REQUIRE(v.size() == 2);
    CHECK(v[0].cidx == 0);
    CHECK(v[1].cidx == 1);
    CHECK(enumerate_facets({2, 0, 0.0}, d, t).empty());
}

TEST_CASE("ordering, monotonicity and facet/cofacet round trip, n <= 8") {
    std::mt19937_64 rng(5);
    for (std::size_t n = 2; n <= 8; ++n) {
        auto d = testing::random_metric(rng, n);
        BinomialTable t(n, 6);
        for (std::uint32_t dim = 0; dim <= 3 && dim < n; ++dim)
            for (Index i = 0; i < t(n, dim + 1); ++i) {
                auto verts = cidx_decode(i, dim, t);
                SimplexEntry s{i, dim, simplex_diameter(verts, d)};
                auto cof = enumerate_cofacets_dense(s, d, t);
                CHECK(cof.size() == n - dim - 1);
                for (std::size_t k = 0; k < cof.size(); ++k) {
                    CHECK(cof[k].diam >= s.diam);
                    CHECK(cof[k].diam == simplex_diameter(cidx_decode(cof[k].cidx, dim + 1, t), d));
                    if (k) CHECK(cof[k].cidx < cof[k - 1].cidx);
                }
                if (dim == 0) continue;
                auto fac = enumerate_facets(s, d, t);
                CHECK(fac.size() == dim + 1);
                for (std::size_t k = 0; k < fac.size(); ++k) {
                    if (k) CHECK(fac[k].cidx > fac[k - 1].cidx);
                    CHECK(fac[k].diam == simplex_diameter(cidx_decode(fac[k].cidx, dim - 1, t), d));
                    auto back = enumerate_cofacets_dense(fac[k], d, t);
                    CHECK(std::any_of(back.begin(), back.end(), [&](auto& c) { return c.cidx == s.cidx; }));
                }
            }
    }
}

TEST_CASE("simplex diameter") {
    auto sq = testing::square_metric();
    std::vector<Vertex> v{3}, tri{2, 1, 0};
    CHECK(simplex_diameter(v, sq) == 0);
    CHECK(simplex_diameter(tri, sq) == doctest::Approx(std::sqrt(2.0)));
    auto sp = DistanceInput::sparse(3, {{{1, 1.0}}, {{0, 1.0}, {2, 2.0}}, {{1, 2.0}}});
    std::vector<Vertex> e{2, 0};
    CHECK(std::isinf(simplex_diameter(e, sp)));
}
