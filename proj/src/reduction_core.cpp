#include "phflow/reduction_core.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>

#include "phflow/common.hpp"

namespace phflow {

void BoundaryMatrix::validate() const {
    if (dims.size() != columns.size()) throw InvalidArgument("dims and columns differ in length");
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const Column& c = columns[j];
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k] >= j) throw InvalidArgument("column " + std::to_string(j) + " has row index >= its own index");
            if (k && c[k] <= c[k - 1])
                throw InvalidArgument("column " + std::to_string(j) + " rows are not strictly increasing");
        }
    }
}

void PivotTable::set(std::size_t row, std::size_t col) {
    if (row >= col_of_row_.size()) col_of_row_.resize(row + 1, kNone);
    col_of_row_[row] = col;
}

std::size_t PivotTable::count() const {
    return static_cast<std::size_t>(std::count_if(col_of_row_.begin(), col_of_row_.end(),
                                                  [](std::size_t c) { return c != kNone; }));
}

std::vector<std::pair<std::size_t, std::size_t>> PivotTable::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t r = 0; r < col_of_row_.size(); ++r)
        if (col_of_row_[r] != kNone) out.emplace_back(r, col_of_row_[r]);
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.second < b.second; });
    return out;
}

std::optional<std::size_t> low_of(const Column& c) {
    if (c.empty()) return std::nullopt;
    return c.back();
}

void add_column(Column& target, const Column& src) {
    Column out;
    out.reserve(target.size() + src.size());
    std::set_symmetric_difference(target.begin(), target.end(), src.begin(), src.end(), std::back_inserter(out));
    target.swap(out);
}

namespace {

// Reduces column j against the current pivots; returns the number of additions.
std::size_t reduce_one(std::vector<Column>& cols, PivotTable& piv, std::size_t j) {
    std::size_t adds = 0;
    while (auto low = low_of(cols[j])) {
        auto owner = piv.column_of(*low);
        if (!owner) {
            piv.set(*low, j);
            break;
        }
        add_column(cols[j], cols[*owner]);
        ++adds;
    }
    return adds;
}

}  // namespace

Reduction standard_reduce(const BoundaryMatrix& m) {
    Reduction r{m, PivotTable(m.size()), 0};
    for (std::size_t j = 0; j < m.size(); ++j) r.additions += reduce_one(r.reduced.columns, r.pivots, j);
    return r;
}

Reduction twist_reduce(const BoundaryMatrix& m) {
    Reduction r{m, PivotTable(m.size()), 0};
    auto& cols = r.reduced.columns;
    std::uint32_t top = m.dims.empty() ? 0 : *std::max_element(m.dims.begin(), m.dims.end());
    for (std::int64_t d = top; d >= 0; --d) {
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m.dims[j] != static_cast<std::uint32_t>(d)) continue;
            r.additions += reduce_one(cols, r.pivots, j);
            if (auto low = low_of(cols[j])) cols[*low].clear();
        }
    }
    return r;
}

ScanMetadata scan_metadata(const BoundaryMatrix& m, unsigned workers) {
    std::size_t n = m.size();
    ScanMetadata meta;
    meta.leftmost.assign(n, std::nullopt);
    meta.stable.assign(n, false);
    meta.cleared.assign(n, false);
    meta.pivots = PivotTable(n);

    // Per-worker leftmost arrays merged by min; chunks are in column order so the
    // first worker that saw a row holds its leftmost column.
    unsigned w = std::max(1u, workers);
    std::vector<std::vector<std::size_t>> part(w);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    parallel_for(n, w, [&](std::size_t b, std::size_t e, unsigned id) {
        auto& left = part[id];
        left.assign(n, kNone);
        for (std::size_t j = b; j < e; ++j)
            for (std::size_t r : m.columns[j]) left[r] = std::min(left[r], j);
    });
    for (auto& left : part)
        for (std::size_t r = 0; r < left.size(); ++r)
            if (left[r] != kNone && (!meta.leftmost[r] || left[r] < *meta.leftmost[r])) meta.leftmost[r] = left[r];

    for (std::size_t j = 0; j < n; ++j) {
        auto low = low_of(m.columns[j]);
        if (!low) {
            meta.stable[j] = true;
        } else if (meta.leftmost[*low] == j) {
            meta.pivots.set(*low, j);
            meta.stable[j] = true;
            meta.stable[*low] = true;
            meta.cleared[*low] = true;
        }
    }
    for (std::size_t j = 0; j < n; ++j)
        if (!meta.stable[j]) meta.unstable.push_back(j);
    return meta;
}

BoundaryMatrix compress(const BoundaryMatrix& m, const ScanMetadata& meta) {
    std::size_t n = m.size();
    std::vector<bool> holds_leftmost(n, false);
    for (auto& l : meta.leftmost)
        if (l) holds_leftmost[*l] = true;

    enum : std::uint8_t { Unknown, Compressible, Incompressible };
    std::vector<std::uint8_t> state(n, Unknown);
    std::function<bool(std::size_t)> search = [&](std::size_t rid) -> bool {
        if (state[rid] != Unknown) return state[rid] == Compressible;
        if (holds_leftmost[rid]) {
            state[rid] = Compressible;
            return true;
        }
        if (auto pc = meta.pivots.column_of(rid)) {
            for (std::size_t k : m.columns[*pc]) {
                if (k == rid) continue;
                if (!search(k)) {
                    state[rid] = Incompressible;
                    return false;
                }
            }
            state[rid] = Compressible;
            return true;
        }
        state[rid] = Incompressible;
        return false;
    };

    BoundaryMatrix out = m;
    for (std::size_t cid = 0; cid < n; ++cid) {
        Column& col = out.columns[cid];
        if (meta.cleared[cid]) {
            col.clear();
            continue;
        }
        if (col.empty()) continue;
        std::optional<std::size_t> own;
        if (meta.stable[cid]) own = col.back();
        // Walk rows from the bottom up; additions only change rows below the current one.
        std::size_t bound = n;
        while (true) {
            auto it = std::lower_bound(col.begin(), col.end(), bound);
            if (it == col.begin()) break;
            std::size_t rid = *std::prev(it);
            bound = rid;
            if (own && rid == *own) continue;
            auto pivotcol = meta.pivots.column_of(rid);
            if (!pivotcol) {
                if (search(rid)) col.erase(std::prev(it));
            } else if (*pivotcol < cid) {
                if (search(rid)) col.erase(std::prev(it));
                else add_column(col, m.columns[*pivotcol]);
            }
        }
    }
    return out;
}

BoundaryMatrix anti_transpose(const BoundaryMatrix& m) {
    std::size_t n = m.size();
    BoundaryMatrix a;
    a.columns.assign(n, {});
    a.dims.assign(n, 0);
    std::uint32_t top = m.dims.empty() ? 0 : *std::max_element(m.dims.begin(), m.dims.end());
    for (std::size_t c = 0; c < n; ++c) {
        a.dims[n - 1 - c] = top - m.dims[c];
        for (std::size_t r : m.columns[c]) a.columns[n - 1 - r].push_back(n - 1 - c);
    }
    for (auto& col : a.columns) std::sort(col.begin(), col.end());
    return a;
}

PivotTable anti_transpose_reduce(const BoundaryMatrix& m) {
    std::size_t n = m.size();
    Reduction r = twist_reduce(anti_transpose(m));
    PivotTable out(n);
    for (auto [row, col] : r.pivots.pairs()) out.set(n - 1 - col, n - 1 - row);
    return out;
}

ReduceAlgorithm parse_reduce_algorithm(std::string_view name) {
    if (name == "standard") return ReduceAlgorithm::Standard;
    if (name == "twist") return ReduceAlgorithm::Twist;
    if (name == "compress") return ReduceAlgorithm::Compress;
    throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

PivotTable reduce_pivots(const BoundaryMatrix& m, ReduceAlgorithm alg, bool anti) {
    std::size_t n = m.size();
    const BoundaryMatrix input = anti ? anti_transpose(m) : m;
    PivotTable piv;
    switch (alg) {
        case ReduceAlgorithm::Standard: piv = standard_reduce(input).pivots; break;
        case ReduceAlgorithm::Twist: piv = twist_reduce(input).pivots; break;
        case ReduceAlgorithm::Compress: piv = standard_reduce(compress(input, scan_metadata(input))).pivots; break;
    }
    if (!anti) return piv;
    PivotTable out(n);
    for (auto [row, col] : piv.pairs()) out.set(n - 1 - col, n - 1 - row);
    return out;
}

namespace {

std::size_t parse_count(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
        throw ParseError("expected a non-negative integer, found '" + std::string(tok) + "'", line);
    return v;
}

}  // namespace

BoundaryMatrix parse_boundary_matrix(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (lines.empty()) throw ParseError("missing column count");
    if (lines[0].tokens.size() != 1) throw ParseError("first line must hold the column count", lines[0].number);
    std::size_t n = parse_count(lines[0].tokens[0], lines[0].number);
    if (lines.size() - 1 != n)
        throw ParseError("expected " + std::to_string(n) + " column lines, found " + std::to_string(lines.size() - 1));
    BoundaryMatrix m;
    m.columns.resize(n);
    m.dims.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const TextLine& l = lines[j + 1];
        if (l.tokens.empty()) throw ParseError("missing dimension", l.number);
        std::size_t dim = parse_count(l.tokens[0], l.number);
        m.dims[j] = static_cast<std::uint32_t>(dim);
        for (std::size_t k = 1; k < l.tokens.size(); ++k) {
            std::size_t r = parse_count(l.tokens[k], l.number);
            if (r >= j) throw ParseError("row index " + std::to_string(r) + " not above column " + std::to_string(j), l.number);
            if (!m.columns[j].empty() && r <= m.columns[j].back())
                throw ParseError("row indices must be strictly increasing", l.number);
            m.columns[j].push_back(r);
        }
    }
    return m;
}

BoundaryMatrix load_boundary_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_boundary_matrix(ss.str());
}

std::string write_boundary_matrix(const BoundaryMatrix& m) {
    std::string out = std::to_string(m.size()) + "\n";
    for (std::size_t j = 0; j < m.size(); ++j) {
        out += std::to_string(m.dims[j]);
        for (std::size_t r : m.columns[j]) out += " " + std::to_string(r);
        out += "\n";
    }
    return out;
}

}  // namespace phflow
