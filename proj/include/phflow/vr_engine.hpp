#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "phflow/diagram.hpp"
#include "phflow/filtration.hpp"
#include "phflow/metric_io.hpp"
#include "phflow/simplex_codec.hpp"

namespace phflow {

// Persistence pairs keyed by their death (cofacet) simplex: a sorted array of apparent
// pairs plus a hash map for pairs found during reduction. Lookups try the map first.
class PairStore {
public:
    // (cofacet, facet) pairs in any order.
    void set_apparent(std::vector<std::pair<SimplexEntry, SimplexEntry>> pairs);
    void insert(const SimplexEntry& cofacet, const SimplexEntry& facet);
    std::optional<SimplexEntry> lookup(Index cofacet) const;
    bool contains(Index cofacet) const { return lookup(cofacet).has_value(); }
    std::size_t size() const { return apparent_.size() + overflow_.size(); }
    std::size_t apparent_count() const { return apparent_.size(); }
    std::vector<Index> cofacets() const;
    void clear();

private:
    std::vector<std::pair<SimplexEntry, SimplexEntry>> apparent_;
    std::unordered_map<Index, SimplexEntry> overflow_;
};

// Max-heap of coboundary entries whose top is the pivot: smallest diameter, then
// largest cidx. Equal entries cancel in pairs when they reach the top.
class WorkingColumn {
public:
    void push(const SimplexEntry& e);
    std::optional<SimplexEntry> pop_pivot();
    std::optional<SimplexEntry> pivot();
    bool empty() const { return heap_.empty(); }
    void clear() { heap_.clear(); }
    // Remaining canonical entries, pivot first.
    std::vector<SimplexEntry> drain();

private:
    std::vector<SimplexEntry> heap_;
};

enum class ReductionMode { Oblivious, ReductionMatrix };

// How a pair was found.
enum class PairKind : std::uint8_t {
    UnionFind,  // dimension 0
    Apparent,   // local facet/cofacet test before reduction
    Shortcut,   // first same-diameter cofacet unpaired, found during enumeration
    Emergent,   // pivot of the unreduced coboundary, no additions
    Reduced,    // needed column additions
};

struct PersistencePair {
    std::uint32_t dim = 0;
    SimplexEntry birth;
    std::optional<SimplexEntry> death;
    PairKind kind = PairKind::Reduced;
};

struct DimensionStats {
    std::uint32_t dim = 0;
    std::size_t columns = 0;
    std::size_t apparent = 0;
    std::size_t shortcut = 0;
    std::size_t emergent = 0;
    std::size_t reduced = 0;
    std::size_t infinite = 0;
    std::size_t zero_persistence = 0;
    std::size_t additions = 0;
};

struct VrOptions {
    std::uint32_t maxdim = 1;
    std::optional<double> threshold;  // default: enclosing radius (dense input only)
    ReductionMode mode = ReductionMode::Oblivious;
    bool include_zero = false;
    unsigned workers = 1;
    bool apparent_scan = true;
    bool emergent_shortcut = true;
    bool record_pairs = false;
};

struct VrResult {
    double threshold = 0.0;
    std::vector<PersistenceDiagram> diagrams;  // index = dimension, canonicalized
    std::vector<DimensionStats> stats;
    std::vector<PersistencePair> pairs;        // filled when record_pairs
};

struct ZeroDimResult {
    PersistenceDiagram diagram;
    std::vector<SimplexEntry> complementary_edges;  // coboundary order
    std::vector<PersistencePair> pairs;             // finite pairs including zero persistence
};

ZeroDimResult zero_dim_persistence(const DistanceInput& d, double threshold, const BinomialTable& tbl,
                                   bool include_zero = false, unsigned workers = 1);

struct ApparentScan {
    std::vector<std::pair<SimplexEntry, SimplexEntry>> pairs;  // (cofacet, facet) sorted by cofacet cidx
    std::vector<SimplexEntry> nonapparent;                     // coboundary order
};

ApparentScan find_apparent_pairs(const ColumnList& cols, const DistanceInput& d, double threshold,
                                 const BinomialTable& tbl, unsigned workers = 1);

struct ColumnOutcome {
    std::optional<SimplexEntry> pivot;
    PairKind kind = PairKind::Reduced;
    std::size_t additions = 0;
};

// Reduces one coboundary column against the pairs already in the store.
ColumnOutcome reduce_column_oblivious(const SimplexEntry& s, const PairStore& store, const DistanceInput& d,
                                      double threshold, const BinomialTable& tbl, bool emergent_shortcut = true);

VrResult vr_barcode(const DistanceInput& d, const VrOptions& opt = {});

}  // namespace phflow
