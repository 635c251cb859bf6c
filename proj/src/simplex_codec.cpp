#include "phflow/simplex_codec.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "phflow/common.hpp"

namespace phflow {

BinomialTable::BinomialTable(std::size_t n_max, std::size_t k_max)
    : n_max_(n_max), k_max_(k_max), table_((k_max + 1) * (n_max + 1), 0) {
    auto at = [&](std::size_t n, std::size_t k) -> Index& { return table_[k * (n_max_ + 1) + n]; };
    for (std::size_t n = 0; n <= n_max; ++n) {
        at(n, 0) = 1;
        for (std::size_t k = 1; k <= std::min(n, k_max); ++k) {
            Index a = at(n - 1, k - 1), b = k <= n - 1 ? at(n - 1, k) : 0, c;
            if (__builtin_add_overflow(a, b, &c))
                throw CapacityError("binomial coefficient C(" + std::to_string(n) + "," + std::to_string(k) +
                                    ") exceeds 64 bits");
            at(n, k) = c;
        }
    }
}

Index cidx_encode(std::span<const Vertex> vertices, const BinomialTable& tbl) {
    Index idx = 0;
    std::size_t k = vertices.size();
    for (std::size_t p = 0; p < vertices.size(); ++p, --k) {
        if (p && vertices[p] >= vertices[p - 1])
            throw InvalidArgument("simplex vertices must be strictly decreasing");
        if (vertices[p] >= tbl.n_max() || k > tbl.k_max())
            throw InvalidArgument("simplex exceeds binomial table range");
        idx += tbl(vertices[p], k);
    }
    return idx;
}

void cidx_decode_into(Index index, std::uint32_t dim, const BinomialTable& tbl, std::vector<Vertex>& out) {
    std::size_t n = tbl.n_max();
    std::size_t k = dim + 1;
    if (k > tbl.k_max() || index >= tbl(n, k))
        throw InvalidArgument("combinatorial index " + std::to_string(index) + " out of range for dimension " +
                              std::to_string(dim));
    out.resize(k);
    std::size_t hi = n - 1;
    for (std::size_t p = 0; p < out.size(); ++p, --k) {
        // Largest v in [k-1, hi] with C(v, k) <= index.
        std::size_t lo = k - 1, h = hi;
        while (lo < h) {
            std::size_t mid = lo + (h - lo + 1) / 2;
            if (tbl(mid, k) <= index) lo = mid;
            else h = mid - 1;
        }
        out[p] = static_cast<Vertex>(lo);
        index -= tbl(lo, k);
        hi = lo ? lo - 1 : 0;
    }
}

std::vector<Vertex> cidx_decode(Index index, std::uint32_t dim, const BinomialTable& tbl) {
    std::vector<Vertex> v;
    cidx_decode_into(index, dim, tbl, v);
    return v;
}

double simplex_diameter(std::span<const Vertex> vertices, const DistanceInput& d) {
    double m = 0;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) m = std::max(m, d(vertices[i], vertices[j]));
    return m;
}

SimplexEntry make_simplex(std::span<const Vertex> vertices, const DistanceInput& d, const BinomialTable& tbl) {
    return {cidx_encode(vertices, tbl), static_cast<std::uint32_t>(vertices.size() - 1),
            simplex_diameter(vertices, d)};
}

CofacetEnumerator::CofacetEnumerator(const SimplexEntry& s, const DistanceInput& d, const BinomialTable& tbl)
    : d_(d), tbl_(tbl), s_(s), idx_below_(s.cidx),
      v_(static_cast<std::int64_t>(d.size()) - 1), k_(s.dim + 1) {
    cidx_decode_into(s.cidx, s.dim, tbl, verts_);
}

bool CofacetEnumerator::next(SimplexEntry& out) {
    if (v_ < k_) return false;
    while (k_ > 0 && tbl_(v_, k_) <= idx_below_) {
        idx_below_ -= tbl_(v_, k_);
        idx_above_ += tbl_(v_, k_ + 1);
        --v_;
        --k_;
    }
    double diam = s_.diam;
    for (Vertex w : verts_) diam = std::max(diam, d_(w, v_));
    out = {idx_above_ + tbl_(v_, k_ + 1) + idx_below_, s_.dim + 1, diam};
    last_ = static_cast<Vertex>(v_);
    --v_;
    return true;
}

SparseCofacetEnumerator::SparseCofacetEnumerator(const SimplexEntry& s, const DistanceInput& d,
                                                 const BinomialTable& tbl)
    : d_(d), tbl_(tbl), s_(s), idx_below_(s.cidx), k_(s.dim + 1) {
    cidx_decode_into(s.cidx, s.dim, tbl, verts_);
    cursor_.resize(verts_.size());
    for (std::size_t i = 0; i < verts_.size(); ++i) cursor_[i] = d.neighbors(verts_[i]).size();
}

bool SparseCofacetEnumerator::next(SimplexEntry& out) {
    if (done_) return false;
    const auto& base = d_.neighbors(verts_[0]);
    while (cursor_[0] > 0) {
        const Neighbor& cand = base[--cursor_[0]];
        Vertex x = cand.index;
        double diam = std::max(s_.diam, cand.dist);
        bool common = true;
        for (std::size_t i = 1; i < verts_.size(); ++i) {
            const auto& l = d_.neighbors(verts_[i]);
            std::size_t& c = cursor_[i];
            while (c > 0 && l[c - 1].index > x) --c;
            if (c == 0) {
                done_ = true;
                return false;
            }
            if (l[c - 1].index != x) {
                common = false;
                break;
            }
            diam = std::max(diam, l[c - 1].dist);
        }
        if (!common) continue;
        while (above_ < verts_.size() && verts_[above_] > x) {
            idx_below_ -= tbl_(verts_[above_], k_);
            idx_above_ += tbl_(verts_[above_], k_ + 1);
            --k_;
            ++above_;
        }
        out = {idx_above_ + tbl_(x, k_ + 1) + idx_below_, s_.dim + 1, diam};
        last_ = x;
        return true;
    }
    done_ = true;
    return false;
}

FacetEnumerator::FacetEnumerator(const SimplexEntry& t, const DistanceInput& d, const BinomialTable& tbl)
    : d_(d), tbl_(tbl), t_(t) {
    cidx_decode_into(t.cidx, t.dim, tbl, verts_);
}

bool FacetEnumerator::next(SimplexEntry& out) {
    if (t_.dim == 0 || i_ >= verts_.size()) return false;
    std::size_t k = verts_.size() - i_;
    Index idx = i_ == 0 ? t_.cidx - tbl_(verts_[0], k)
                        : prev_ + tbl_(verts_[i_ - 1], k) - tbl_(verts_[i_], k);
    double diam = 0;
    for (std::size_t a = 0; a < verts_.size(); ++a) {
        if (a == i_) continue;
        for (std::size_t b = 0; b < a; ++b)
            if (b != i_) diam = std::max(diam, d_(verts_[a], verts_[b]));
    }
    out = {idx, t_.dim - 1, diam};
    prev_ = idx;
    ++i_;
    return true;
}

std::vector<SimplexEntry> enumerate_cofacets_dense(const SimplexEntry& s, const DistanceInput& d,
                                                   const BinomialTable& tbl) {
    std::vector<SimplexEntry> out;
    CofacetEnumerator e(s, d, tbl);
    for (SimplexEntry c; e.next(c);) out.push_back(c);
    return out;
}

std::vector<SimplexEntry> enumerate_cofacets_sparse(const SimplexEntry& s, const DistanceInput& d,
                                                    const BinomialTable& tbl) {
    std::vector<SimplexEntry> out;
    SparseCofacetEnumerator e(s, d, tbl);
    for (SimplexEntry c; e.next(c);) out.push_back(c);
    return out;
}

std::vector<SimplexEntry> enumerate_facets(const SimplexEntry& t, const DistanceInput& d,
                                           const BinomialTable& tbl) {
    std::vector<SimplexEntry> out;
    FacetEnumerator e(t, d, tbl);
    for (SimplexEntry f; e.next(f);) out.push_back(f);
    return out;
}

}  // namespace phflow
