#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace phflow {

struct Point2 {
    double x = 0.0, y = 0.0;
    friend bool operator==(const Point2&, const Point2&) = default;
    friend auto operator<=>(const Point2&, const Point2&) = default;
};

double distance(const Point2& a, const Point2& b);

// Static 2-d tree for exact nearest-neighbor queries.
class KdTree {
public:
    explicit KdTree(std::vector<Point2> pts);
    // (index into the constructor's points, distance); index -1 when empty.
    std::pair<std::int64_t, double> nearest(const Point2& q) const;
    std::size_t size() const { return pts_.size(); }

private:
    struct Node {
        std::uint32_t point;
        std::int32_t left = -1, right = -1;
        std::uint8_t axis = 0;
    };
    std::int32_t build(std::vector<std::uint32_t>& idx, std::size_t b, std::size_t e, int depth);

    std::vector<Point2> pts_;
    std::vector<Node> nodes_;
    std::int32_t root_ = -1;
};

struct Box {
    double lo[2], hi[2];
    double max_len() const;
    double radius() const;  // half the diagonal
    Point2 center() const;
};

// Binary space partition: every internal node splits its tight bounding box at the
// middle of the longest side. Leaves hold one point.
class SplitTree {
public:
    struct Node {
        Box box;
        std::uint32_t begin, end;  // range into order()
        std::int32_t left = -1, right = -1;
        std::uint32_t rep = 0;     // lexicographically smallest point of the node
        bool leaf() const { return left < 0; }
    };

    // Points must be pairwise distinct (InvalidArgument otherwise).
    explicit SplitTree(const std::vector<Point2>& pts);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<std::uint32_t>& order() const { return order_; }
    std::size_t root() const { return 0; }

private:
    std::vector<Node> nodes_;
    std::vector<std::uint32_t> order_;
};

struct WspdPair {
    std::uint32_t u, v;  // split tree node ids
};

bool well_separated(const Box& a, const Box& b, double s);

// s-well-separated pair decomposition; pairs grouped by the internal node whose
// children started the search, in node order.
std::vector<WspdPair> build_wspd(const SplitTree& tree, double s, unsigned workers = 1);

struct Biarc {
    std::uint32_t a, b;  // point indices, a != b
};

// One biarc per WSPD pair, joining the pair's representatives.
std::vector<Biarc> build_wspd_spanner(const std::vector<Point2>& pts, double s, unsigned workers = 1);

}  // namespace phflow
