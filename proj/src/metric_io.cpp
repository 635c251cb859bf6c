#include "phflow/metric_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "phflow/common.hpp"

namespace phflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(std::string_view tok, std::size_t line) {
    double v = 0;
    const char* b = tok.data();
    if (!tok.empty() && tok.front() == '+') ++b;
    auto r = std::from_chars(b, tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || std::isnan(v))
        throw ParseError("not a number: '" + std::string(tok) + "'", line);
    return v;
}

std::uint64_t to_index(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
        throw ParseError("not a vertex index: '" + std::string(tok) + "'", line);
    if (v >= std::numeric_limits<Vertex>::max()) throw ParseError("vertex index too large", line);
    return v;
}

double checked_distance(std::string_view tok, std::size_t line) {
    double v = to_double(tok, line);
    if (v < 0) throw ParseError("negative distance", line);
    return v;
}

DistanceInput parse_lower(const std::vector<TextLine>& lines) {
    std::size_t n = lines.size() + 1;
    std::vector<double> lower;
    lower.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const TextLine& l = lines[i];
        if (l.tokens.size() != i + 1)
            throw ParseError("expected " + std::to_string(i + 1) + " entries, found " +
                                 std::to_string(l.tokens.size()),
                             l.number);
        for (auto tok : l.tokens) lower.push_back(checked_distance(tok, l.number));
    }
    return DistanceInput::dense(n, std::move(lower));
}

DistanceInput parse_points(const std::vector<TextLine>& lines) {
    std::size_t n = lines.size();
    std::size_t dim = n ? lines[0].tokens.size() : 0;
    std::vector<double> coords;
    coords.reserve(n * dim);
    for (const TextLine& l : lines) {
        if (l.tokens.size() != dim)
            throw ParseError("expected " + std::to_string(dim) + " coordinates, found " +
                                 std::to_string(l.tokens.size()),
                             l.number);
        for (auto tok : l.tokens) {
            double v = to_double(tok, l.number);
            if (std::isinf(v)) throw ParseError("infinite coordinate", l.number);
            coords.push_back(v);
        }
    }
    std::vector<double> lower;
    lower.reserve(n ? n * (n - 1) / 2 : 0);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < dim; ++k) {
                double t = coords[i * dim + k] - coords[j * dim + k];
                s += t * t;
            }
            lower.push_back(std::sqrt(s));
        }
    return DistanceInput::dense(n, std::move(lower));
}

DistanceInput parse_sparse(const std::vector<TextLine>& lines) {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<double, std::size_t>> entries;
    std::uint64_t n = 0;
    for (const TextLine& l : lines) {
        if (l.tokens.size() != 3)
            throw ParseError("expected 'i j d', found " + std::to_string(l.tokens.size()) + " tokens",
                             l.number);
        std::uint64_t i = to_index(l.tokens[0], l.number), j = to_index(l.tokens[1], l.number);
        double d = checked_distance(l.tokens[2], l.number);
        n = std::max({n, i + 1, j + 1});
        if (i == j) {
            if (d != 0) throw ParseError("nonzero self distance", l.number);
            continue;
        }
        if (std::isinf(d)) continue;
        auto key = std::minmax(i, j);
        auto [it, inserted] = entries.emplace(key, std::make_pair(d, l.number));
        if (!inserted && it->second.first != d)
            throw ParseError("conflicting distance for pair (" + std::to_string(key.first) + "," +
                                 std::to_string(key.second) + "), first given on line " +
                                 std::to_string(it->second.second),
                             l.number);
    }
    std::vector<std::vector<Neighbor>> nbrs(n);
    for (auto& [key, val] : entries) {
        nbrs[key.first].push_back({static_cast<Vertex>(key.second), val.first});
        nbrs[key.second].push_back({static_cast<Vertex>(key.first), val.first});
    }
    return DistanceInput::sparse(n, std::move(nbrs));
}

}  // namespace

DistanceInput DistanceInput::dense(std::size_t n, std::vector<double> lower) {
    if (lower.size() != (n ? n * (n - 1) / 2 : 0))
        throw InvalidArgument("lower triangle size does not match point count");
    if (n >= std::numeric_limits<Vertex>::max()) throw CapacityError("too many points");
    DistanceInput d;
    d.n_ = n;
    d.lower_ = std::move(lower);
    return d;
}

DistanceInput DistanceInput::sparse(std::size_t n, std::vector<std::vector<Neighbor>> nbrs) {
    if (nbrs.size() != n) throw InvalidArgument("neighbor list count does not match point count");
    if (n >= std::numeric_limits<Vertex>::max()) throw CapacityError("too many points");
    for (auto& l : nbrs)
        std::sort(l.begin(), l.end(), [](const Neighbor& a, const Neighbor& b) { return a.index < b.index; });
    DistanceInput d;
    d.n_ = n;
    d.sparse_ = true;
    d.nbrs_ = std::move(nbrs);
    return d;
}

double DistanceInput::sparse_lookup(std::size_t i, std::size_t j) const {
    const auto& l = nbrs_[i];
    auto it = std::lower_bound(l.begin(), l.end(), j,
                               [](const Neighbor& a, std::size_t v) { return a.index < v; });
    return (it != l.end() && it->index == j) ? it->dist : kInf;
}

double DistanceInput::max_distance() const {
    double m = 0;
    if (sparse_) {
        for (auto& l : nbrs_)
            for (auto& e : l) m = std::max(m, e.dist);
    } else {
        for (double x : lower_) m = std::max(m, x);
    }
    return m;
}

MetricFormat parse_metric_format(std::string_view name) {
    if (name == "lower-distance") return MetricFormat::LowerDistance;
    if (name == "point-cloud") return MetricFormat::PointCloud;
    if (name == "sparse") return MetricFormat::Sparse;
    throw InvalidArgument("unknown format '" + std::string(name) + "'");
}

DistanceInput load_metric_input(std::string_view text, MetricFormat format) {
    auto lines = tokenize_lines(text);
    switch (format) {
        case MetricFormat::LowerDistance: return parse_lower(lines);
        case MetricFormat::PointCloud: return parse_points(lines);
        case MetricFormat::Sparse: return parse_sparse(lines);
    }
    throw InvalidArgument("bad format");
}

DistanceInput load_metric_file(const std::string& path, MetricFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_metric_input(ss.str(), format);
}

std::string write_lower_distance(const DistanceInput& d) {
    std::string out;
    for (std::size_t i = 1; i < d.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (j) out += ' ';
            out += format_exact(d(i, j));
        }
        out += '\n';
    }
    return out;
}

double enclosing_radius(const DistanceInput& d) {
    if (d.is_sparse()) throw InvalidArgument("enclosing radius needs dense input; give an explicit threshold");
    std::size_t n = d.size();
    if (n < 2) return 0.0;
    double best = kInf;
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0;
        for (std::size_t j = 0; j < n; ++j) m = std::max(m, d(i, j));
        best = std::min(best, m);
    }
    return best;
}

DistanceInput sparsify_by_threshold(const DistanceInput& d, double t) {
    std::size_t n = d.size();
    std::vector<std::vector<Neighbor>> nbrs(n);
    if (d.is_sparse()) {
        for (std::size_t i = 0; i < n; ++i)
            for (auto& e : d.neighbors(i))
                if (e.dist <= t) nbrs[i].push_back(e);
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (j != i && d(i, j) <= t) nbrs[i].push_back({static_cast<Vertex>(j), d(i, j)});
    }
    return DistanceInput::sparse(n, std::move(nbrs));
}

}  // namespace phflow
