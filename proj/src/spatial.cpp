#include "phflow/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phflow/common.hpp"

namespace phflow {

double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

KdTree::KdTree(std::vector<Point2> pts) : pts_(std::move(pts)) {
    std::vector<std::uint32_t> idx(pts_.size());
    std::iota(idx.begin(), idx.end(), 0u);
    nodes_.reserve(pts_.size());
    root_ = build(idx, 0, idx.size(), 0);
}

std::int32_t KdTree::build(std::vector<std::uint32_t>& idx, std::size_t b, std::size_t e, int depth) {
    if (b >= e) return -1;
    std::uint8_t axis = depth % 2;
    std::size_t mid = b + (e - b) / 2;
    std::nth_element(idx.begin() + b, idx.begin() + mid, idx.begin() + e, [&](std::uint32_t i, std::uint32_t j) {
        return axis ? pts_[i].y < pts_[j].y : pts_[i].x < pts_[j].x;
    });
    std::int32_t id = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back({idx[mid], -1, -1, axis});
    std::int32_t l = build(idx, b, mid, depth + 1);
    std::int32_t r = build(idx, mid + 1, e, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

std::pair<std::int64_t, double> KdTree::nearest(const Point2& q) const {
    std::int64_t best = -1;
    double best_d2 = std::numeric_limits<double>::infinity();
    std::vector<std::int32_t> stack;
    if (root_ >= 0) stack.push_back(root_);
    while (!stack.empty()) {
        std::int32_t id = stack.back();
        stack.pop_back();
        const Node& n = nodes_[id];
        const Point2& p = pts_[n.point];
        double dx = p.x - q.x, dy = p.y - q.y, d2 = dx * dx + dy * dy;
        if (d2 < best_d2 || (d2 == best_d2 && n.point < best)) {
            best_d2 = d2;
            best = n.point;
        }
        double diff = n.axis ? q.y - p.y : q.x - p.x;
        std::int32_t near = diff < 0 ? n.left : n.right, far = diff < 0 ? n.right : n.left;
        if (far >= 0 && diff * diff <= best_d2) stack.push_back(far);
        if (near >= 0) stack.push_back(near);
    }
    return {best, best < 0 ? best_d2 : distance(pts_[best], q)};
}

double Box::max_len() const { return std::max(hi[0] - lo[0], hi[1] - lo[1]); }
double Box::radius() const { return 0.5 * std::hypot(hi[0] - lo[0], hi[1] - lo[1]); }
Point2 Box::center() const { return {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])}; }

SplitTree::SplitTree(const std::vector<Point2>& pts) {
    std::size_t n = pts.size();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    if (n == 0) return;
    auto coord = [&](std::uint32_t i, int a) { return a ? pts[i].y : pts[i].x; };
    nodes_.push_back({{}, 0, static_cast<std::uint32_t>(n)});
    // Nodes are appended in breadth order; children always follow their parent.
    for (std::size_t id = 0; id < nodes_.size(); ++id) {
        std::uint32_t b = nodes_[id].begin, e = nodes_[id].end;
        Box box{{INFINITY, INFINITY}, {-INFINITY, -INFINITY}};
        for (std::uint32_t k = b; k < e; ++k)
            for (int a = 0; a < 2; ++a) {
                box.lo[a] = std::min(box.lo[a], coord(order_[k], a));
                box.hi[a] = std::max(box.hi[a], coord(order_[k], a));
            }
        nodes_[id].box = box;
        if (e - b == 1) {
            nodes_[id].rep = order_[b];
            continue;
        }
        if (box.max_len() == 0) throw InvalidArgument("split tree points must be distinct");
        int axis = (box.hi[1] - box.lo[1]) > (box.hi[0] - box.lo[0]) ? 1 : 0;
        double mid = 0.5 * (box.lo[axis] + box.hi[axis]);
        auto it = std::stable_partition(order_.begin() + b, order_.begin() + e,
                                        [&](std::uint32_t i) { return coord(i, axis) < mid; });
        std::uint32_t m = static_cast<std::uint32_t>(it - order_.begin());
        nodes_[id].left = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({{}, b, m});
        nodes_[id].right = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({{}, m, e});
    }
    for (std::size_t id = nodes_.size(); id-- > 0;) {
        Node& nd = nodes_[id];
        if (nd.leaf()) continue;
        std::uint32_t a = nodes_[nd.left].rep, c = nodes_[nd.right].rep;
        nd.rep = pts[c] < pts[a] ? c : a;
    }
}

bool well_separated(const Box& a, const Box& b, double s) {
    double r = std::max(a.radius(), b.radius());
    return distance(a.center(), b.center()) - 2 * r >= s * r;
}

namespace {

template <class Emit>
void find_pairs(const SplitTree& t, std::uint32_t u0, std::uint32_t v0, double s, Emit&& emit) {
    const auto& nd = t.nodes();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> stack{{u0, v0}};
    while (!stack.empty()) {
        auto [u, v] = stack.back();
        stack.pop_back();
        if (well_separated(nd[u].box, nd[v].box, s)) {
            emit(WspdPair{u, v});
        } else if (nd[u].box.max_len() > nd[v].box.max_len()) {
            stack.push_back({static_cast<std::uint32_t>(nd[u].right), v});
            stack.push_back({static_cast<std::uint32_t>(nd[u].left), v});
        } else {
            stack.push_back({u, static_cast<std::uint32_t>(nd[v].right)});
            stack.push_back({u, static_cast<std::uint32_t>(nd[v].left)});
        }
    }
}

}  // namespace

std::vector<WspdPair> build_wspd(const SplitTree& tree, double s, unsigned workers) {
    if (!(s > 0)) throw InvalidArgument("separation must be positive");
    const auto& nd = tree.nodes();
    std::size_t n = nd.size();
    unsigned w = std::max(1u, workers);
    // Pass 1: count pairs per internal node. Pass 2: write at prefix-sum offsets.
    std::vector<std::size_t> count(n + 1, 0);
    parallel_for(n, w, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i)
            if (!nd[i].leaf())
                find_pairs(tree, nd[i].left, nd[i].right, s, [&](WspdPair) { ++count[i + 1]; });
    });
    std::partial_sum(count.begin(), count.end(), count.begin());
    std::vector<WspdPair> out(count[n]);
    parallel_for(n, w, [&](std::size_t b, std::size_t e, unsigned) {
        for (std::size_t i = b; i < e; ++i) {
            if (nd[i].leaf()) continue;
            std::size_t k = count[i];
            find_pairs(tree, nd[i].left, nd[i].right, s, [&](WspdPair p) { out[k++] = p; });
        }
    });
    return out;
}

std::vector<Biarc> build_wspd_spanner(const std::vector<Point2>& pts, double s, unsigned workers) {
    if (!(s > 2)) throw InvalidArgument("spanner separation must exceed 2");
    SplitTree tree(pts);
    auto pairs = build_wspd(tree, s, workers);
    std::vector<Biarc> out;
    out.reserve(pairs.size());
    for (auto& p : pairs) out.push_back({tree.nodes()[p.u].rep, tree.nodes()[p.v].rep});
    return out;
}

}  // namespace phflow
