#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace phflow {

using Vertex = std::uint32_t;

struct Neighbor {
    Vertex index;
    double dist;
};

// Metric on n points: dense lower triangle or symmetric sparse neighbor lists.
// Absent sparse pairs are at distance +infinity.
class DistanceInput {
public:
    DistanceInput() = default;
    static DistanceInput dense(std::size_t n, std::vector<double> lower);
    static DistanceInput sparse(std::size_t n, std::vector<std::vector<Neighbor>> nbrs);

    std::size_t size() const { return n_; }
    bool is_sparse() const { return sparse_; }

    double operator()(std::size_t i, std::size_t j) const {
        if (i == j) return 0.0;
        if (sparse_) return sparse_lookup(i, j);
        if (i < j) std::swap(i, j);
        return lower_[i * (i - 1) / 2 + j];
    }

    // Dense storage, row-major lower triangle: d(1,0), d(2,0), d(2,1), ...
    const std::vector<double>& lower() const { return lower_; }
    // Sorted by neighbor index.
    const std::vector<Neighbor>& neighbors(std::size_t i) const { return nbrs_[i]; }

    double max_distance() const;

private:
    double sparse_lookup(std::size_t i, std::size_t j) const;

    std::size_t n_ = 0;
    bool sparse_ = false;
    std::vector<double> lower_;
    std::vector<std::vector<Neighbor>> nbrs_;
};

enum class MetricFormat { LowerDistance, PointCloud, Sparse };

MetricFormat parse_metric_format(std::string_view name);

DistanceInput load_metric_input(std::string_view text, MetricFormat format);
DistanceInput load_metric_file(const std::string& path, MetricFormat format);

// Lower-distance text that re-parses to identical doubles.
std::string write_lower_distance(const DistanceInput& d);

// min over x of max over y of d(x, y); 0 when n < 2.
double enclosing_radius(const DistanceInput& d);

DistanceInput sparsify_by_threshold(const DistanceInput& d, double t);

}  // namespace phflow
