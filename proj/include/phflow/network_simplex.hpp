#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "phflow/spatial.hpp"

namespace phflow {

enum class NodeKind : std::uint8_t { A, B, DiagonalA, DiagonalB };

struct NetworkNode {
    Point2 pos;
    std::int64_t supply = 0;
    NodeKind kind = NodeKind::A;
};

struct NetworkArc {
    std::uint32_t tail, head;
    double cost;
};

// Uncapacitated transshipment network. After finalize() arcs are sorted by
// (tail, head) and offsets[v]..offsets[v+1] index the arcs leaving v.
struct TransshipmentNetwork {
    std::vector<NetworkNode> nodes;
    std::vector<NetworkArc> arcs;
    std::vector<std::size_t> offsets;

    std::uint32_t add_node(Point2 pos, std::int64_t supply, NodeKind kind);
    void add_arc(std::uint32_t tail, std::uint32_t head, double cost);
    // Sorts, merges parallel arcs (keeping the cheapest) and builds offsets.
    void finalize();
    // Throws InvalidArgument when supplies do not sum to zero or an arc is malformed.
    void validate() const;
};

struct McfLimits {
    // Pivot cap C*sqrt(m*n) + b; unset runs to optimality.
    std::optional<double> cap_c;
    double cap_b = 0.0;
};

struct McfResult {
    double cost = 0.0;
    bool optimal = true;
    std::size_t pivots = 0;
    std::vector<std::int64_t> flow;  // per arc of the finalized network
    std::vector<double> potential;   // per node; reduced cost c + pi[tail] - pi[head]
};

// Primal network simplex with an artificial root and block search pricing.
// Throws InvalidArgument on unbalanced or infeasible supplies.
McfResult network_simplex_mcf(const TransshipmentNetwork& net, const McfLimits& limits = {});

}  // namespace phflow
