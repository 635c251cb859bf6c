#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phflow/metric_io.hpp"

namespace phflow {

using Index = std::uint64_t;

// C(n, k) for 0 <= n <= n_max, 0 <= k <= k_max. Throws CapacityError if any entry
// exceeds 64 bits.
class BinomialTable {
public:
    BinomialTable(std::size_t n_max, std::size_t k_max);

    Index operator()(std::size_t n, std::size_t k) const {
        return k > n ? 0 : table_[k * (n_max_ + 1) + n];
    }
    std::size_t n_max() const { return n_max_; }
    std::size_t k_max() const { return k_max_; }

private:
    std::size_t n_max_, k_max_;
    std::vector<Index> table_;
};

struct SimplexEntry {
    Index cidx = 0;
    std::uint32_t dim = 0;
    double diam = 0.0;

    friend bool operator==(const SimplexEntry& a, const SimplexEntry& b) {
        return a.cidx == b.cidx && a.dim == b.dim && a.diam == b.diam;
    }
};

// vertices strictly decreasing.
Index cidx_encode(std::span<const Vertex> vertices, const BinomialTable& tbl);
// Ambient point count is tbl.n_max(). Returns vertices strictly decreasing.
std::vector<Vertex> cidx_decode(Index index, std::uint32_t dim, const BinomialTable& tbl);
void cidx_decode_into(Index index, std::uint32_t dim, const BinomialTable& tbl, std::vector<Vertex>& out);

double simplex_diameter(std::span<const Vertex> vertices, const DistanceInput& d);

SimplexEntry make_simplex(std::span<const Vertex> vertices, const DistanceInput& d, const BinomialTable& tbl);

// Cofacets in decreasing cidx order, dense metric.
class CofacetEnumerator {
public:
    CofacetEnumerator(const SimplexEntry& s, const DistanceInput& d, const BinomialTable& tbl);
    bool next(SimplexEntry& out);
    Vertex last_vertex() const { return last_; }

private:
    const DistanceInput& d_;
    const BinomialTable& tbl_;
    SimplexEntry s_;
    std::vector<Vertex> verts_;
    Index idx_below_, idx_above_ = 0;
    std::int64_t v_, k_;
    Vertex last_ = 0;
};

// Cofacets in decreasing cidx order via neighbor-list intersection.
class SparseCofacetEnumerator {
public:
    SparseCofacetEnumerator(const SimplexEntry& s, const DistanceInput& d, const BinomialTable& tbl);
    bool next(SimplexEntry& out);
    Vertex last_vertex() const { return last_; }

private:
    const DistanceInput& d_;
    const BinomialTable& tbl_;
    SimplexEntry s_;
    std::vector<Vertex> verts_;
    // Reverse cursors into each vertex's neighbor list (index of next unread entry + 1).
    std::vector<std::size_t> cursor_;
    std::size_t above_ = 0;  // vertices of s greater than the current candidate
    Index idx_below_, idx_above_ = 0;
    std::int64_t k_;
    bool done_ = false;
    Vertex last_ = 0;
};

// Facets in increasing cidx order.
class FacetEnumerator {
public:
    FacetEnumerator(const SimplexEntry& t, const DistanceInput& d, const BinomialTable& tbl);
    bool next(SimplexEntry& out);

private:
    const DistanceInput& d_;
    const BinomialTable& tbl_;
    SimplexEntry t_;
    std::vector<Vertex> verts_;
    std::size_t i_ = 0;
    Index prev_ = 0;
};

std::vector<SimplexEntry> enumerate_cofacets_dense(const SimplexEntry& s, const DistanceInput& d,
                                                   const BinomialTable& tbl);
std::vector<SimplexEntry> enumerate_cofacets_sparse(const SimplexEntry& s, const DistanceInput& d,
                                                    const BinomialTable& tbl);
std::vector<SimplexEntry> enumerate_facets(const SimplexEntry& t, const DistanceInput& d,
                                           const BinomialTable& tbl);

}  // namespace phflow
