#include "phflow/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phflow/common.hpp"

namespace phflow {

std::uint32_t TransshipmentNetwork::add_node(Point2 pos, std::int64_t supply, NodeKind kind) {
    nodes.push_back({pos, supply, kind});
    return static_cast<std::uint32_t>(nodes.size() - 1);
}

void TransshipmentNetwork::add_arc(std::uint32_t tail, std::uint32_t head, double cost) {
    arcs.push_back({tail, head, cost});
}

void TransshipmentNetwork::finalize() {
    std::sort(arcs.begin(), arcs.end(), [](const NetworkArc& a, const NetworkArc& b) {
        if (a.tail != b.tail) return a.tail < b.tail;
        if (a.head != b.head) return a.head < b.head;
        return a.cost < b.cost;
    });
    arcs.erase(std::unique(arcs.begin(), arcs.end(),
                           [](const NetworkArc& a, const NetworkArc& b) { return a.tail == b.tail && a.head == b.head; }),
               arcs.end());
    offsets.assign(nodes.size() + 1, 0);
    for (auto& a : arcs) ++offsets[a.tail + 1];
    for (std::size_t v = 0; v < nodes.size(); ++v) offsets[v + 1] += offsets[v];
}

void TransshipmentNetwork::validate() const {
    std::int64_t total = 0;
    for (auto& n : nodes) total += n.supply;
    if (total != 0) throw InvalidArgument("network supplies sum to " + std::to_string(total));
    for (auto& a : arcs) {
        if (a.tail >= nodes.size() || a.head >= nodes.size() || a.tail == a.head)
            throw InvalidArgument("malformed network arc");
        if (!(a.cost >= 0) || !std::isfinite(a.cost)) throw InvalidArgument("arc cost must be finite and non-negative");
    }
}

namespace {

class Simplex {
public:
    Simplex(const TransshipmentNetwork& net, const McfLimits& limits) : net_(net), limits_(limits) {}

    McfResult run() {
        init();
        McfResult res;
        std::size_t cap = std::numeric_limits<std::size_t>::max();
        if (limits_.cap_c)
            cap = static_cast<std::size_t>(
                std::max(0.0, *limits_.cap_c * std::sqrt(double(m_) * double(n_)) + limits_.cap_b));
        while (true) {
            std::size_t e = find_entering();
            if (e == npos) break;
            if (res.pivots >= cap) {
                res.optimal = false;
                break;
            }
            pivot(e);
            ++res.pivots;
        }
        for (std::uint32_t v = 0; v < n_; ++v)
            if (flow_[m_ + v] > 0) {
                if (res.optimal) throw InvalidArgument("infeasible supplies");
                break;
            }
        res.flow.assign(flow_.begin(), flow_.begin() + m_);
        res.potential.assign(pi_.begin(), pi_.begin() + n_);
        for (std::size_t j = 0; j < m_; ++j) res.cost += cost_[j] * static_cast<double>(flow_[j]);
        return res;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    void init() {
        n_ = static_cast<std::uint32_t>(net_.nodes.size());
        m_ = net_.arcs.size();
        root_ = n_;
        std::size_t total = m_ + n_;
        tail_.resize(total);
        head_.resize(total);
        cost_.resize(total);
        flow_.assign(total, 0);
        in_tree_.assign(total, false);
        double max_cost = 0;
        for (std::size_t j = 0; j < m_; ++j) {
            tail_[j] = net_.arcs[j].tail;
            head_[j] = net_.arcs[j].head;
            cost_[j] = net_.arcs[j].cost;
            max_cost = std::max(max_cost, cost_[j]);
        }
        double art = (max_cost + 1) * (n_ + 1);
        eps_ = 1e-12 * (1 + max_cost) * (n_ + 1);
        std::size_t nn = n_ + 1;
        parent_.assign(nn, root_);
        pred_.assign(nn, npos);
        up_.assign(nn, false);
        pi_.assign(nn, 0.0);
        first_child_.assign(nn, kNone);
        next_.assign(nn, kNone);
        prev_.assign(nn, kNone);
        parent_[root_] = kNone;
        for (std::uint32_t v = 0; v < n_; ++v) {
            std::size_t a = m_ + v;
            std::int64_t b = net_.nodes[v].supply;
            cost_[a] = art;
            in_tree_[a] = true;
            pred_[v] = a;
            if (b > 0) {
                tail_[a] = v, head_[a] = root_, up_[v] = true;
                flow_[a] = b;
                pi_[v] = -art;
            } else {
                tail_[a] = root_, head_[a] = v, up_[v] = false;
                flow_[a] = -b;
                pi_[v] = art;
            }
            attach(v, root_);
        }
        block_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::sqrt(double(m_)))));
        next_arc_ = 0;
    }

    double reduced(std::size_t j) const { return cost_[j] + pi_[tail_[j]] - pi_[head_[j]]; }

    // Most negative reduced cost within the first block that has one, scanning cyclically.
    std::size_t find_entering() {
        if (m_ == 0) return npos;
        double best_rc = -eps_;
        std::size_t best = npos, cnt = 0;
        for (std::size_t k = 0; k < m_; ++k) {
            std::size_t j = next_arc_ + k;
            if (j >= m_) j -= m_;
            if (!in_tree_[j]) {
                double rc = reduced(j);
                if (rc < best_rc) {
                    best_rc = rc;
                    best = j;
                }
            }
            if (++cnt == block_ || k + 1 == m_) {
                if (best != npos) {
                    next_arc_ = j + 1 == m_ ? 0 : j + 1;
                    return best;
                }
                cnt = 0;
            }
        }
        return npos;
    }

    void attach(std::uint32_t v, std::uint32_t p) {
        parent_[v] = p;
        prev_[v] = kNone;
        next_[v] = first_child_[p];
        if (first_child_[p] != kNone) prev_[first_child_[p]] = v;
        first_child_[p] = v;
    }

    void detach(std::uint32_t v) {
        std::uint32_t p = parent_[v];
        if (prev_[v] != kNone) next_[prev_[v]] = next_[v];
        else first_child_[p] = next_[v];
        if (next_[v] != kNone) prev_[next_[v]] = prev_[v];
        prev_[v] = next_[v] = kNone;
    }

    void pivot(std::size_t e) {
        std::uint32_t u = tail_[e], v = head_[e];
        // Apex of the tree cycle closed by e.
        std::uint32_t join = find_join(u, v);

        // Strongly feasible leaving rule: along the cycle oriented with e and starting at
        // the join, the last blocking arc wins.
        std::int64_t delta = std::numeric_limits<std::int64_t>::max();
        std::uint32_t leave = kNone;
        bool leave_on_u = false;
        for (std::uint32_t x = u; x != join; x = parent_[x])
            if (up_[x] && flow_[pred_[x]] < delta) {
                delta = flow_[pred_[x]];
                leave = x;
                leave_on_u = true;
            }
        for (std::uint32_t x = v; x != join; x = parent_[x])
            if (!up_[x] && flow_[pred_[x]] <= delta) {
                delta = flow_[pred_[x]];
                leave = x;
                leave_on_u = false;
            }
        if (leave == kNone) throw InvalidArgument("unbounded flow problem");

        if (delta > 0) {
            flow_[e] += delta;
            for (std::uint32_t x = u; x != join; x = parent_[x]) flow_[pred_[x]] += up_[x] ? -delta : delta;
            for (std::uint32_t x = v; x != join; x = parent_[x]) flow_[pred_[x]] += up_[x] ? delta : -delta;
        }

        in_tree_[pred_[leave]] = false;
        in_tree_[e] = true;
        // Reverse the path from the entering endpoint up to the leaving node.
        std::uint32_t x = leave_on_u ? u : v;
        std::uint32_t new_parent = leave_on_u ? v : u;
        std::size_t new_arc = e;
        bool new_up = leave_on_u;
        std::uint32_t sub_root = x;
        while (true) {
            std::uint32_t old_parent = parent_[x];
            std::size_t old_arc = pred_[x];
            bool old_up = up_[x];
            detach(x);
            attach(x, new_parent);
            pred_[x] = new_arc;
            up_[x] = new_up;
            if (x == leave) break;
            new_parent = x;
            new_arc = old_arc;
            new_up = !old_up;
            x = old_parent;
        }
        refresh_potentials(sub_root);
    }

    std::uint32_t find_join(std::uint32_t u, std::uint32_t v) {
        // Mark ancestors of u, then climb from v. Stamps avoid clearing.
        if (mark_.size() != n_ + 1) mark_.assign(n_ + 1, 0);
        ++stamp_;
        for (std::uint32_t x = u; x != kNone; x = parent_[x]) mark_[x] = stamp_;
        std::uint32_t y = v;
        while (mark_[y] != stamp_) y = parent_[y];
        return y;
    }

    // Potentials recomputed from the parent along each tree arc, so no drift accumulates.
    void refresh_potentials(std::uint32_t r) {
        stack_.clear();
        stack_.push_back(r);
        while (!stack_.empty()) {
            std::uint32_t x = stack_.back();
            stack_.pop_back();
            std::size_t a = pred_[x];
            pi_[x] = up_[x] ? pi_[parent_[x]] - cost_[a] : pi_[parent_[x]] + cost_[a];
            for (std::uint32_t c = first_child_[x]; c != kNone; c = next_[c]) stack_.push_back(c);
        }
    }

    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    const TransshipmentNetwork& net_;
    McfLimits limits_;
    std::uint32_t n_ = 0, root_ = 0;
    std::size_t m_ = 0, block_ = 1, next_arc_ = 0;
    double eps_ = 0;
    std::vector<std::uint32_t> tail_, head_;
    std::vector<double> cost_;
    std::vector<std::int64_t> flow_;
    std::vector<bool> in_tree_;
    std::vector<std::uint32_t> parent_, first_child_, next_, prev_;
    std::vector<std::size_t> pred_;
    std::vector<bool> up_;
    std::vector<double> pi_;
    std::vector<std::uint64_t> mark_;
    std::uint64_t stamp_ = 0;
    std::vector<std::uint32_t> stack_;
};

}  // namespace

McfResult network_simplex_mcf(const TransshipmentNetwork& net, const McfLimits& limits) {
    net.validate();
    return Simplex(net, limits).run();
}

}  // namespace phflow
