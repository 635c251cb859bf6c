#pragma once

#include <cstdint>
#include <vector>

#include "phflow/metric_io.hpp"
#include "phflow/simplex_codec.hpp"

namespace phflow {

// Simplex-wise filtration order: diam ascending, dim ascending, cidx descending.
// Returns <0 if a enters before b, >0 if after, 0 if equal.
int filtration_compare(const SimplexEntry& a, const SimplexEntry& b);

inline bool filtration_less(const SimplexEntry& a, const SimplexEntry& b) { return filtration_compare(a, b) < 0; }

// Coboundary column order within one dimension: diam descending, cidx ascending.
inline bool coboundary_less(const SimplexEntry& a, const SimplexEntry& b) {
    return a.diam > b.diam || (a.diam == b.diam && a.cidx < b.cidx);
}

struct ColumnList {
    std::uint32_t dim = 0;
    std::vector<SimplexEntry> entries;
};

// All dim-simplices with diam <= threshold whose cidx is not in `cleared`, in coboundary order.
// Sparse input grows simplices from neighbor lists; dense input enumerates every index.
ColumnList build_reduction_columns(const DistanceInput& d, std::uint32_t dim, double threshold,
                                   std::vector<Index> cleared, const BinomialTable& tbl, unsigned workers = 1);

}  // namespace phflow
