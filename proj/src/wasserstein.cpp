#include "phflow/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "phflow/common.hpp"

namespace phflow {

namespace {

Point2 as_point(const DiagramPoint& p) { return {p.birth, p.death}; }

Point2 projection(const Point2& p) {
    double m = 0.5 * (p.x + p.y);
    return {m, m};
}

struct Multiset {
    std::vector<Point2> pts;
    std::vector<std::int64_t> mult;
    std::int64_t total = 0;
};

Multiset merge_duplicates(const PersistenceDiagram& d) {
    std::vector<Point2> all;
    all.reserve(d.finite.size());
    for (auto& p : d.finite) all.push_back(as_point(p));
    std::sort(all.begin(), all.end());
    Multiset m;
    for (auto& p : all) {
        if (m.pts.empty() || !(m.pts.back() == p)) {
            m.pts.push_back(p);
            m.mult.push_back(0);
        }
        ++m.mult.back();
        ++m.total;
    }
    return m;
}

// Sum over u of mult(u) * min(nearest other-side point, distance to the diagonal).
double one_sided(const Multiset& from, const Multiset& to, unsigned workers) {
    KdTree tree(to.pts);
    std::vector<double> term(from.pts.size());
    parallel_for(from.pts.size(), workers, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i) {
            double c = diagonal_distance(from.pts[i]);
            if (tree.size()) c = std::min(c, tree.nearest(from.pts[i]).second);
            term[i] = c * static_cast<double>(from.mult[i]);
        }
    });
    double sum = 0;
    for (double t : term) sum += t;
    return sum;
}

// Draws in [0, 1) from the top 53 bits; identical on every platform for a given seed.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

double diagonal_distance(const Point2& p) { return std::abs(p.y - p.x) / std::sqrt(2.0); }

CondensedPair zero_condense(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    std::map<Point2, CondensedNode> at;
    for (auto& p : a.finite) {
        auto& n = at[as_point(p)];
        n.pos = as_point(p);
        ++n.a;
    }
    for (auto& p : b.finite) {
        auto& n = at[as_point(p)];
        n.pos = as_point(p);
        ++n.b;
    }
    CondensedPair c;
    for (auto& [_, n] : at) c.nodes.push_back(n);
    return c;
}

double rwmd_lower_bound(const PersistenceDiagram& a, const PersistenceDiagram& b, unsigned workers) {
    Multiset ma = merge_duplicates(a), mb = merge_duplicates(b);
    return std::max(one_sided(ma, mb, workers), one_sided(mb, ma, workers));
}

double wcd_lower_bound(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    std::size_t n = a.finite.size() + b.finite.size();
    if (n == 0) return 0.0;
    Point2 ca{}, cb{};
    for (auto& p : a.finite) {
        Point2 q = as_point(p), r = projection(q);
        ca.x += q.x, ca.y += q.y;
        cb.x += r.x, cb.y += r.y;
    }
    for (auto& p : b.finite) {
        Point2 q = as_point(p), r = projection(q);
        cb.x += q.x, cb.y += q.y;
        ca.x += r.x, ca.y += r.y;
    }
    double inv = 1.0 / static_cast<double>(n);
    return 0.5 * distance({ca.x * inv, ca.y * inv}, {cb.x * inv, cb.y * inv});
}

double condensation_epsilon(double s) {
    if (!(s > 2)) throw InvalidArgument("sparsity s must exceed 2");
    return s >= 12 ? 8.0 / (s - 4) : 1.0;
}

double spanner_stretch(double s) {
    if (!(s > 2)) throw InvalidArgument("sparsity s must exceed 2");
    return 1 + 4 / s + 4 / (s - 2);
}

double theoretical_error_bound(double s) { return spanner_stretch(s) * (1 + condensation_epsilon(s)) - 1; }

CondensedPair delta_condense(const PersistenceDiagram& a, const PersistenceDiagram& b, double s, std::uint64_t seed,
                             unsigned workers) {
    double eps = condensation_epsilon(s);
    double lb = rwmd_lower_bound(a, b, workers);
    if (lb == 0) {
        CondensedPair c = zero_condense(a, b);
        c.epsilon = eps;
        return c;
    }
    double total = static_cast<double>(a.finite.size() + b.finite.size());
    double delta = 2 * eps * lb / (std::sqrt(2.0) * total);
    double pitch = 0.99 * delta;
    double jitter = 0.01 * delta / 2;

    using Key = std::pair<std::int64_t, std::int64_t>;
    auto key = [&](const DiagramPoint& p) -> Key {
        return {std::llround(p.birth / pitch), std::llround(p.death / pitch)};
    };
    std::map<Key, CondensedNode> at;
    for (auto& p : a.finite) ++at[key(p)].a;
    for (auto& p : b.finite) ++at[key(p)].b;

    std::mt19937_64 rng(seed);
    CondensedPair c;
    c.delta = delta;
    c.epsilon = eps;
    c.lower_bound = lb;
    c.snapped = true;
    for (auto& [k, n] : at) {
        double dx = (2 * unit_draw(rng) - 1) * jitter;
        double dy = (2 * unit_draw(rng) - 1) * jitter;
        n.pos = {static_cast<double>(k.first) * pitch + dx, static_cast<double>(k.second) * pitch + dy};
        c.nodes.push_back(n);
    }
    return c;
}

TransshipmentNetwork build_transshipment_network(const CondensedPair& c, const std::vector<Biarc>* spanner) {
    TransshipmentNetwork net;
    constexpr std::uint32_t none = ~0u;
    std::vector<std::uint32_t> a_node(c.nodes.size(), none), b_node(c.nodes.size(), none);
    std::int64_t total_a = 0, total_b = 0;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        auto& n = c.nodes[i];
        if (n.a < 0 || n.b < 0) throw InvalidArgument("negative multiplicity in condensed node");
        if (n.a > 0) a_node[i] = net.add_node(n.pos, n.a, NodeKind::A);
        if (n.b > 0) b_node[i] = net.add_node(n.pos, -n.b, NodeKind::B);
        total_a += n.a;
        total_b += n.b;
    }
    std::uint32_t bbar = net.add_node({}, total_b, NodeKind::DiagonalB);
    std::uint32_t abar = net.add_node({}, -total_a, NodeKind::DiagonalA);

    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
        double dd = diagonal_distance(c.nodes[i].pos);
        if (a_node[i] != none) net.add_arc(a_node[i], abar, dd);
        if (b_node[i] != none) net.add_arc(bbar, b_node[i], dd);
    }
    net.add_arc(bbar, abar, 0.0);

    if (!spanner) {
        for (std::size_t i = 0; i < c.nodes.size(); ++i) {
            if (a_node[i] == none) continue;
            for (std::size_t j = 0; j < c.nodes.size(); ++j)
                if (b_node[j] != none) net.add_arc(a_node[i], b_node[j], distance(c.nodes[i].pos, c.nodes[j].pos));
        }
    } else {
        auto hub = [&](std::uint32_t i) {
            if (i >= c.nodes.size()) throw InvalidArgument("spanner biarc out of range");
            return a_node[i] != none ? a_node[i] : b_node[i];
        };
        for (std::size_t i = 0; i < c.nodes.size(); ++i)
            if (a_node[i] != none && b_node[i] != none) {
                net.add_arc(a_node[i], b_node[i], 0.0);
                net.add_arc(b_node[i], a_node[i], 0.0);
            }
        for (auto& e : *spanner) {
            std::uint32_t u = hub(e.a), v = hub(e.b);
            if (u == none || v == none || u == v) continue;
            double d = distance(c.nodes[e.a].pos, c.nodes[e.b].pos);
            net.add_arc(u, v, d);
            net.add_arc(v, u, d);
        }
    }
    net.finalize();
    net.validate();
    return net;
}

double exact_w1(const CondensedPair& c) { return network_simplex_mcf(build_transshipment_network(c)).cost; }

double exact_w1(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    // Solve with the arguments in a canonical order so that symmetry holds bit for bit.
    auto fa = a.finite, fb = b.finite;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fb < fa) return exact_w1(zero_condense(b, a));
    return exact_w1(zero_condense(a, b));
}

ApproxReport approx_w1_report(const PersistenceDiagram& a, const PersistenceDiagram& b, double s, std::uint64_t seed,
                              unsigned workers, const McfLimits& limits) {
    CondensedPair c = delta_condense(a, b, s, seed, workers);
    std::vector<Point2> pos;
    pos.reserve(c.nodes.size());
    for (auto& n : c.nodes) pos.push_back(n.pos);
    std::vector<Biarc> spanner;
    if (pos.size() > 1) spanner = build_wspd_spanner(pos, s, workers);
    TransshipmentNetwork net = build_transshipment_network(c, &spanner);
    McfResult r = network_simplex_mcf(net, limits);
    ApproxReport rep;
    rep.value = r.cost;
    rep.delta = c.delta;
    rep.epsilon = c.epsilon;
    rep.lower_bound = c.lower_bound;
    rep.nodes = net.nodes.size();
    rep.arcs = net.arcs.size();
    rep.pivots = r.pivots;
    rep.optimal = r.optimal;
    return rep;
}

double approx_w1(const PersistenceDiagram& a, const PersistenceDiagram& b, double s, std::uint64_t seed,
                 unsigned workers) {
    return approx_w1_report(a, b, s, seed, workers).value;
}

}  // namespace phflow
