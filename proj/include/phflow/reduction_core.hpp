#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace phflow {

// Z2 column: strictly increasing row indices.
using Column = std::vector<std::size_t>;

struct BoundaryMatrix {
    std::vector<Column> columns;
    std::vector<std::uint32_t> dims;

    std::size_t size() const { return columns.size(); }
    // Throws InvalidArgument unless columns are canonical and strictly upper triangular.
    void validate() const;
};

// row -> column of its pivot.
class PivotTable {
public:
    explicit PivotTable(std::size_t n = 0) : col_of_row_(n, kNone) {}

    std::optional<std::size_t> column_of(std::size_t row) const {
        if (row >= col_of_row_.size() || col_of_row_[row] == kNone) return std::nullopt;
        return col_of_row_[row];
    }
    void set(std::size_t row, std::size_t col);
    std::size_t count() const;
    // (row, column) sorted by column.
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    friend bool operator==(const PivotTable& a, const PivotTable& b) { return a.pairs() == b.pairs(); }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> col_of_row_;
};

std::optional<std::size_t> low_of(const Column& c);

// target += src over Z2.
void add_column(Column& target, const Column& src);

struct Reduction {
    BoundaryMatrix reduced;
    PivotTable pivots;
    std::size_t additions = 0;
};

Reduction standard_reduce(const BoundaryMatrix& m);
// Highest dimension first; pivot (i, j) clears column i.
Reduction twist_reduce(const BoundaryMatrix& m);

struct ScanMetadata {
    std::vector<std::optional<std::size_t>> leftmost;  // per row
    std::vector<bool> stable;                          // per column
    std::vector<bool> cleared;                         // per column: low of a stable column
    std::vector<std::size_t> unstable;
    PivotTable pivots;
};

ScanMetadata scan_metadata(const BoundaryMatrix& m, unsigned workers = 1);

// Zeroes cleared columns and compressible rows; the pivot set of the result equals that of m.
BoundaryMatrix compress(const BoundaryMatrix& m, const ScanMetadata& meta);

// Entry (r, c) moves to (n-1-c, n-1-r); column dimension becomes max_dim - dim.
BoundaryMatrix anti_transpose(const BoundaryMatrix& m);
// Twist reduction of the anti-transpose, pivots mapped back to the original indexing.
PivotTable anti_transpose_reduce(const BoundaryMatrix& m);

enum class ReduceAlgorithm { Standard, Twist, Compress };
ReduceAlgorithm parse_reduce_algorithm(std::string_view name);
PivotTable reduce_pivots(const BoundaryMatrix& m, ReduceAlgorithm alg, bool anti);

BoundaryMatrix parse_boundary_matrix(std::string_view text);
BoundaryMatrix load_boundary_matrix(const std::string& path);
std::string write_boundary_matrix(const BoundaryMatrix& m);

}  // namespace phflow
