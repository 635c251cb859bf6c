#include "phflow/vr_engine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "phflow/common.hpp"

namespace phflow {

namespace {

bool by_cofacet(const std::pair<SimplexEntry, SimplexEntry>& a, const std::pair<SimplexEntry, SimplexEntry>& b) {
    return a.first.cidx < b.first.cidx;
}

// Calls fn(cofacet) in decreasing cidx order until fn returns false.
template <class Fn>
void for_each_cofacet(const SimplexEntry& s, const DistanceInput& d, const BinomialTable& tbl, Fn&& fn) {
    SimplexEntry c;
    if (d.is_sparse()) {
        SparseCofacetEnumerator e(s, d, tbl);
        while (e.next(c))
            if (!fn(c)) return;
    } else {
        CofacetEnumerator e(s, d, tbl);
        while (e.next(c))
            if (!fn(c)) return;
    }
}

}  // namespace

void PairStore::set_apparent(std::vector<std::pair<SimplexEntry, SimplexEntry>> pairs) {
    std::sort(pairs.begin(), pairs.end(), by_cofacet);
    apparent_ = std::move(pairs);
}

void PairStore::insert(const SimplexEntry& cofacet, const SimplexEntry& facet) { overflow_[cofacet.cidx] = facet; }

std::optional<SimplexEntry> PairStore::lookup(Index cofacet) const {
    if (auto it = overflow_.find(cofacet); it != overflow_.end()) return it->second;
    auto it = std::lower_bound(apparent_.begin(), apparent_.end(), cofacet,
                               [](const auto& p, Index c) { return p.first.cidx < c; });
    if (it != apparent_.end() && it->first.cidx == cofacet) return it->second;
    return std::nullopt;
}

std::vector<Index> PairStore::cofacets() const {
    std::vector<Index> out;
    out.reserve(size());
    for (auto& p : apparent_) out.push_back(p.first.cidx);
    for (auto& [c, f] : overflow_) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

void PairStore::clear() {
    apparent_.clear();
    overflow_.clear();
}

void WorkingColumn::push(const SimplexEntry& e) {
    heap_.push_back(e);
    std::push_heap(heap_.begin(), heap_.end(), coboundary_less);
}

std::optional<SimplexEntry> WorkingColumn::pop_pivot() {
    while (!heap_.empty()) {
        SimplexEntry top = heap_.front();
        std::pop_heap(heap_.begin(), heap_.end(), coboundary_less);
        heap_.pop_back();
        if (!heap_.empty() && heap_.front().cidx == top.cidx) {
            std::pop_heap(heap_.begin(), heap_.end(), coboundary_less);
            heap_.pop_back();
            continue;
        }
        return top;
    }
    return std::nullopt;
}

std::optional<SimplexEntry> WorkingColumn::pivot() {
    auto p = pop_pivot();
    if (p) push(*p);
    return p;
}

std::vector<SimplexEntry> WorkingColumn::drain() {
    std::vector<SimplexEntry> out;
    while (auto p = pop_pivot()) out.push_back(*p);
    return out;
}

ZeroDimResult zero_dim_persistence(const DistanceInput& d, double threshold, const BinomialTable& tbl,
                                   bool include_zero, unsigned workers) {
    std::size_t n = d.size();
    ZeroDimResult out;
    out.diagram.dim = 0;
    auto edges = build_reduction_columns(d, 1, threshold, {}, tbl, workers).entries;
    std::vector<Vertex> parent(n);
    std::iota(parent.begin(), parent.end(), Vertex{0});
    auto find = [&](Vertex x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::vector<Vertex> verts;
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
        cidx_decode_into(it->cidx, 1, tbl, verts);
        Vertex ru = find(verts[0]), rv = find(verts[1]);
        if (ru == rv) {
            out.complementary_edges.push_back(*it);
            continue;
        }
        // Elder rule: larger vertex index is older, so the smaller root dies.
        Vertex young = std::min(ru, rv), old = std::max(ru, rv);
        parent[young] = old;
        out.pairs.push_back({0, SimplexEntry{young, 0, 0.0}, *it, PairKind::UnionFind});
        if (it->diam > 0 || include_zero) out.diagram.finite.push_back({0.0, it->diam});
    }
    std::reverse(out.complementary_edges.begin(), out.complementary_edges.end());
    for (Vertex v = 0; v < n; ++v)
        if (find(v) == v) out.diagram.infinite.push_back(0.0);
    out.diagram.canonicalize();
    return out;
}

ApparentScan find_apparent_pairs(const ColumnList& cols, const DistanceInput& d, double threshold,
                                 const BinomialTable& tbl, unsigned workers) {
    (void)threshold;  // same-diameter cofacets never exceed the threshold
    const auto& e = cols.entries;
    std::vector<std::optional<SimplexEntry>> hit(e.size());
    parallel_for(e.size(), std::max(1u, workers), [&](std::size_t b, std::size_t end, unsigned) {
        for (std::size_t i = b; i < end; ++i) {
            const SimplexEntry& s = e[i];
            std::optional<SimplexEntry> t;
            for_each_cofacet(s, d, tbl, [&](const SimplexEntry& c) {
                if (c.diam == s.diam) {
                    t = c;
                    return false;
                }
                return true;
            });
            if (!t) continue;
            FacetEnumerator fe(*t, d, tbl);
            for (SimplexEntry f; fe.next(f);) {
                if (f.diam == s.diam) {
                    if (f.cidx == s.cidx) hit[i] = t;
                    break;
                }
            }
        }
    });
    ApparentScan out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (hit[i]) out.pairs.emplace_back(*hit[i], e[i]);
        else out.nonapparent.push_back(e[i]);
    }
    std::sort(out.pairs.begin(), out.pairs.end(), by_cofacet);
    return out;
}

namespace {

class Reducer {
public:
    Reducer(const DistanceInput& d, double t, const BinomialTable& tbl, bool shortcut, ReductionMode mode)
        : d_(d), t_(t), tbl_(tbl), shortcut_(shortcut), mode_(mode) {}

    ColumnOutcome reduce(const SimplexEntry& s, const PairStore& store) {
        wc_.clear();
        vwork_.clear();
        bool check = shortcut_;
        std::optional<SimplexEntry> hit;
        for_each_cofacet(s, d_, tbl_, [&](const SimplexEntry& c) {
            if (c.diam > t_) return true;
            if (check && c.diam == s.diam) {
                if (!store.contains(c.cidx)) {
                    hit = c;
                    return false;
                }
                check = false;
            }
            wc_.push(c);
            return true;
        });
        if (hit) return {hit, PairKind::Shortcut, 0};

        ColumnOutcome out;
        out.pivot = wc_.pivot();
        while (out.pivot) {
            auto other = store.lookup(out.pivot->cidx);
            if (!other) break;
            add(*other);
            ++out.additions;
            out.pivot = wc_.pivot();
        }
        out.kind = out.additions ? PairKind::Reduced : PairKind::Emergent;
        if (mode_ == ReductionMode::ReductionMatrix && out.additions && out.pivot) {
            vwork_.push_back(s);
            std::sort(vwork_.begin(), vwork_.end(), [](auto& a, auto& b) { return a.cidx < b.cidx; });
            std::vector<SimplexEntry> v;
            for (std::size_t i = 0; i < vwork_.size();) {
                std::size_t j = i;
                while (j < vwork_.size() && vwork_[j].cidx == vwork_[i].cidx) ++j;
                if ((j - i) % 2) v.push_back(vwork_[i]);
                i = j;
            }
            v_[s.cidx] = std::move(v);
        }
        return out;
    }

    void reset() { v_.clear(); }

private:
    void push_coboundary(const SimplexEntry& s) {
        for_each_cofacet(s, d_, tbl_, [&](const SimplexEntry& c) {
            if (c.diam <= t_) wc_.push(c);
            return true;
        });
    }

    void add(const SimplexEntry& col) {
        if (mode_ == ReductionMode::Oblivious) {
            push_coboundary(col);
            return;
        }
        auto it = v_.find(col.cidx);
        if (it == v_.end()) {
            push_coboundary(col);
            vwork_.push_back(col);
            return;
        }
        for (const SimplexEntry& x : it->second) {
            push_coboundary(x);
            vwork_.push_back(x);
        }
    }

    const DistanceInput& d_;
    double t_;
    const BinomialTable& tbl_;
    bool shortcut_;
    ReductionMode mode_;
    WorkingColumn wc_;
    std::vector<SimplexEntry> vwork_;
    std::unordered_map<Index, std::vector<SimplexEntry>> v_;
};

}  // namespace

ColumnOutcome reduce_column_oblivious(const SimplexEntry& s, const PairStore& store, const DistanceInput& d,
                                      double threshold, const BinomialTable& tbl, bool emergent_shortcut) {
    Reducer r(d, threshold, tbl, emergent_shortcut, ReductionMode::Oblivious);
    return r.reduce(s, store);
}

VrResult vr_barcode(const DistanceInput& d, const VrOptions& opt) {
    std::size_t n = d.size();
    VrResult res;
    const BinomialTable tbl(std::max<std::size_t>(n, 1), opt.maxdim + 2);
    if (opt.threshold) {
        if (*opt.threshold < 0) throw InvalidArgument("threshold must be non-negative");
        res.threshold = *opt.threshold;
    } else {
        if (d.is_sparse()) throw InvalidArgument("sparse input requires an explicit threshold");
        res.threshold = n < 2 ? 0.0 : enclosing_radius(d);
    }
    const double t = res.threshold;
    unsigned workers = std::max(1u, opt.workers);

    res.diagrams.resize(opt.maxdim + 1);
    res.stats.resize(opt.maxdim + 1);
    for (std::uint32_t p = 0; p <= opt.maxdim; ++p) res.diagrams[p].dim = res.stats[p].dim = p;
    if (n == 0) return res;

    auto zero = zero_dim_persistence(d, t, tbl, opt.include_zero, workers);
    res.diagrams[0] = zero.diagram;
    res.stats[0].columns = n;
    res.stats[0].infinite = zero.diagram.infinite.size();
    for (auto& pr : zero.pairs)
        if (pr.death->diam == 0) ++res.stats[0].zero_persistence;
    if (opt.record_pairs) {
        res.pairs = zero.pairs;
        std::vector<bool> died(n, false);
        for (auto& pr : zero.pairs) died[pr.birth.cidx] = true;
        for (Vertex v = 0; v < n; ++v)
            if (!died[v]) res.pairs.push_back({0, SimplexEntry{v, 0, 0.0}, std::nullopt, PairKind::UnionFind});
    }

    PairStore store;
    Reducer reducer(d, t, tbl, opt.emergent_shortcut, opt.mode);
    std::vector<Index> cleared;
    for (std::uint32_t p = 1; p <= opt.maxdim; ++p) {
        ColumnList cols;
        if (p == 1) cols = {1, std::move(zero.complementary_edges)};
        else cols = build_reduction_columns(d, p, t, std::move(cleared), tbl, workers);

        DimensionStats& st = res.stats[p];
        PersistenceDiagram& dg = res.diagrams[p];
        st.columns = cols.entries.size();
        store.clear();
        reducer.reset();

        auto emit = [&](const SimplexEntry& s, const std::optional<SimplexEntry>& death, PairKind kind) {
            if (!death) {
                dg.infinite.push_back(s.diam);
                ++st.infinite;
            } else if (death->diam > s.diam || opt.include_zero) {
                dg.finite.push_back({s.diam, death->diam});
            }
            if (death && death->diam == s.diam) ++st.zero_persistence;
            if (opt.record_pairs) res.pairs.push_back({p, s, death, kind});
        };

        std::vector<SimplexEntry> work;
        if (opt.apparent_scan) {
            auto scan = find_apparent_pairs(cols, d, t, tbl, workers);
            st.apparent = scan.pairs.size();
            for (auto& [cof, fac] : scan.pairs) emit(fac, cof, PairKind::Apparent);
            store.set_apparent(std::move(scan.pairs));
            work = std::move(scan.nonapparent);
        } else {
            work = std::move(cols.entries);
        }

        for (const SimplexEntry& s : work) {
            ColumnOutcome o = reducer.reduce(s, store);
            st.additions += o.additions;
            if (o.pivot) {
                store.insert(*o.pivot, s);
                if (o.kind == PairKind::Shortcut) ++st.shortcut;
                else if (o.kind == PairKind::Emergent) ++st.emergent;
                else ++st.reduced;
            }
            emit(s, o.pivot, o.kind);
        }
        dg.canonicalize();
        if (p < opt.maxdim) cleared = store.cofacets();
    }
    return res;
}

}  // namespace phflow
