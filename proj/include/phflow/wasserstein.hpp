#pragma once

#include <cstdint>
#include <vector>

#include "phflow/diagram.hpp"
#include "phflow/network_simplex.hpp"
#include "phflow/spatial.hpp"

namespace phflow {

inline constexpr std::uint64_t kDefaultSeed = 1;

// Distance from a point to the diagonal, |death - birth| / sqrt(2).
double diagonal_distance(const Point2& p);

// One node per distinct position; a and b count the points of each diagram there.
struct CondensedNode {
    Point2 pos;
    std::int64_t a = 0, b = 0;
};

struct CondensedPair {
    std::vector<CondensedNode> nodes;  // sorted by position (lattice key when snapped)
    double delta = 0.0;                // 0 when nothing was snapped
    double epsilon = 0.0;
    double lower_bound = 0.0;          // RWMD value used for delta
    bool snapped = false;
};

// Merges duplicate points only (0-condensation). Finite parts are used.
CondensedPair zero_condense(const PersistenceDiagram& a, const PersistenceDiagram& b);

double rwmd_lower_bound(const PersistenceDiagram& a, const PersistenceDiagram& b, unsigned workers = 1);
double wcd_lower_bound(const PersistenceDiagram& a, const PersistenceDiagram& b);

// 8/(s-4) for s >= 12, otherwise 1. Throws InvalidArgument for s <= 2.
double condensation_epsilon(double s);
double spanner_stretch(double s);
// (1 + 4/s + 4/(s-2)) (1 + condensation_epsilon(s)) - 1.
double theoretical_error_bound(double s);

CondensedPair delta_condense(const PersistenceDiagram& a, const PersistenceDiagram& b, double s,
                             std::uint64_t seed = kDefaultSeed, unsigned workers = 1);

// Without a spanner every A node gets an arc to every B node. With one, the biarcs
// (indices into c.nodes) join the nodes at those positions and co-located A/B nodes
// are joined by a zero-cost biarc. Diagonal arcs are always added; the two diagonal
// nodes come last, b-bar then a-bar.
TransshipmentNetwork build_transshipment_network(const CondensedPair& c, const std::vector<Biarc>* spanner = nullptr);

double exact_w1(const CondensedPair& c);
double exact_w1(const PersistenceDiagram& a, const PersistenceDiagram& b);

struct ApproxReport {
    double value = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double lower_bound = 0.0;
    std::size_t nodes = 0, arcs = 0, pivots = 0;
    bool optimal = true;
};

ApproxReport approx_w1_report(const PersistenceDiagram& a, const PersistenceDiagram& b, double s,
                              std::uint64_t seed = kDefaultSeed, unsigned workers = 1, const McfLimits& limits = {});
double approx_w1(const PersistenceDiagram& a, const PersistenceDiagram& b, double s, std::uint64_t seed = kDefaultSeed,
                 unsigned workers = 1);

}  // namespace phflow
