#include "phflow/filtration.hpp"

#include <algorithm>

#include "phflow/common.hpp"

namespace phflow {

int filtration_compare(const SimplexEntry& a, const SimplexEntry& b) {
    if (a.diam != b.diam) return a.diam < b.diam ? -1 : 1;
    if (a.dim != b.dim) return a.dim < b.dim ? -1 : 1;
    if (a.cidx != b.cidx) return a.cidx > b.cidx ? -1 : 1;
    return 0;
}

namespace {

bool is_cleared(const std::vector<Index>& cleared, Index idx) {
    return std::binary_search(cleared.begin(), cleared.end(), idx);
}

template <class Fn>
std::vector<SimplexEntry> gather(std::size_t n, unsigned workers, Fn&& produce) {
    unsigned w = std::max(1u, workers);
    std::vector<std::vector<SimplexEntry>> parts(w);
    parallel_for(n, w, [&](std::size_t b, std::size_t e, unsigned id) { produce(b, e, parts[id]); });
    std::vector<SimplexEntry> out;
    std::size_t total = 0;
    for (auto& p : parts) total += p.size();
    out.reserve(total);
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<SimplexEntry> dense_simplices(const DistanceInput& d, std::uint32_t dim, double threshold,
                                          const std::vector<Index>& cleared, const BinomialTable& tbl,
                                          unsigned workers) {
    Index total = tbl(d.size(), dim + 1);
    return gather(total, workers, [&](std::size_t b, std::size_t e, std::vector<SimplexEntry>& out) {
        std::vector<Vertex> verts;
        for (Index idx = b; idx < e; ++idx) {
            if (is_cleared(cleared, idx)) continue;
            cidx_decode_into(idx, dim, tbl, verts);
            double diam = simplex_diameter(verts, d);
            if (diam <= threshold) out.push_back({idx, dim, diam});
        }
    });
}

std::vector<SimplexEntry> sparse_simplices(const DistanceInput& d, std::uint32_t dim, double threshold,
                                           const std::vector<Index>& cleared, const BinomialTable& tbl,
                                           unsigned workers) {
    std::vector<SimplexEntry> level;
    for (Vertex v = 0; v < d.size(); ++v) level.push_back({v, 0, 0.0});
    for (std::uint32_t p = 0; p < dim; ++p) {
        level = gather(level.size(), workers, [&](std::size_t b, std::size_t e, std::vector<SimplexEntry>& out) {
            std::vector<Vertex> verts;
            for (std::size_t i = b; i < e; ++i) {
                const SimplexEntry& s = level[i];
                cidx_decode_into(s.cidx, s.dim, tbl, verts);
                Vertex top = verts[0];
                SparseCofacetEnumerator en(s, d, tbl);
                for (SimplexEntry c; en.next(c);) {
                    if (en.last_vertex() < top) break;
                    if (c.diam <= threshold) out.push_back(c);
                }
            }
        });
    }
    std::vector<SimplexEntry> out;
    out.reserve(level.size());
    for (auto& s : level)
        if (s.diam <= threshold && !is_cleared(cleared, s.cidx)) out.push_back(s);
    return out;
}

}  // namespace

ColumnList build_reduction_columns(const DistanceInput& d, std::uint32_t dim, double threshold,
                                   std::vector<Index> cleared, const BinomialTable& tbl, unsigned workers) {
    std::sort(cleared.begin(), cleared.end());
    ColumnList cols{dim, {}};
    if (d.size() < dim + 1) return cols;
    cols.entries = d.is_sparse() ? sparse_simplices(d, dim, threshold, cleared, tbl, workers)
                                 : dense_simplices(d, dim, threshold, cleared, tbl, workers);
    std::sort(cols.entries.begin(), cols.entries.end(), coboundary_less);
    return cols;
}

}  // namespace phflow
