#ifndef RDP_HELD_KARP_HPP
#define RDP_HELD_KARP_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "rdp/graph.hpp"

namespace rdp {

using Mask = std::uint32_t;

inline constexpr std::size_t kHeldKarpCap = 20;

/**
 * Held-Karp table over a target set. length(U, i) is the shortest walk that
 * starts at the root, visits every target in U and ends at target i.
 * Targets are indexed by their position in the sorted target list, so the
 * smallest local index is also the smallest node id.
 */
class HeldKarpTable {
public:
    HeldKarpTable(const MetricClosure& c, std::vector<NodeId> targets, NodeId root = kDepot,
                  std::size_t cap = kHeldKarpCap)
        : root_(root), targets_(std::move(targets)) {
        std::sort(targets_.begin(), targets_.end());
        targets_.erase(std::unique(targets_.begin(), targets_.end()), targets_.end());
        const std::size_t k = targets_.size();
        if (k > cap)
            throw SizeError("Held-Karp target set too large: " + std::to_string(k) + " > cap " +
                            std::to_string(cap));
        for (NodeId t : targets_)
            if (t == root_ || t >= c.node_count())
                throw GraphError("invalid Held-Karp target " + std::to_string(t));
        const std::size_t subsets = std::size_t{1} << k;
        length_.assign(subsets * k, kInf);
        parent_.assign(subsets * k, kNone);
        for (std::size_t i = 0; i < k; ++i)
            length_[(Mask{1} << i) * k + i] = c(root_, targets_[i]);
        for (Mask u = 1; u < subsets; ++u) {
            if (std::has_single_bit(u))
                continue;
            for (std::size_t i = 0; i < k; ++i) {
                if (!(u >> i & 1u))
                    continue;
                const Mask prev = u ^ (Mask{1} << i);
                double best = kInf;
                std::uint8_t arg = kNone;
                for (std::size_t j = 0; j < k; ++j) {
                    if (!(prev >> j & 1u))
                        continue;
                    const double cand = length_[prev * k + j] + c(targets_[j], targets_[i]);
                    // exact minimum, but near-ties keep the smallest predecessor
                    if (cand < best) {
                        if (cand < best - kTimeEps)
                            arg = static_cast<std::uint8_t>(j);
                        best = cand;
                    }
                }
                length_[u * k + i] = best;
                parent_[u * k + i] = arg;
            }
        }
    }

    NodeId root() const { return root_; }
    const std::vector<NodeId>& targets() const { return targets_; }
    std::size_t size() const { return targets_.size(); }
    Mask full_mask() const { return size() == 0 ? 0 : static_cast<Mask>((std::uint64_t{1} << size()) - 1); }

    /// Walk length for subset u ending at local index i (infinite if i not in u).
    double length(Mask u, std::size_t i) const { return length_[u * size() + i]; }

    /// Local index of node v, or -1.
    int index_of(NodeId v) const {
        auto it = std::lower_bound(targets_.begin(), targets_.end(), v);
        if (it == targets_.end() || *it != v)
            return -1;
        return static_cast<int>(it - targets_.begin());
    }

    Mask mask_of(const std::vector<NodeId>& nodes) const {
        Mask m = 0;
        for (NodeId v : nodes) {
            const int i = index_of(v);
            if (i < 0)
                throw GraphError("node " + std::to_string(v) + " not covered by Held-Karp table");
            m |= Mask{1} << i;
        }
        return m;
    }

    std::vector<NodeId> nodes_of(Mask m) const {
        std::vector<NodeId> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (m >> i & 1u)
                out.push_back(targets_[i]);
        return out;
    }

    /// Target sequence (root excluded) of the walk recorded for (u, end).
    std::vector<NodeId> path(Mask u, std::size_t end) const {
        std::vector<NodeId> seq;
        std::size_t i = end;
        while (u) {
            seq.push_back(targets_[i]);
            const std::uint8_t p = parent_[u * size() + i];
            u ^= Mask{1} << i;
            i = p;
        }
        std::reverse(seq.begin(), seq.end());
        return seq;
    }

    struct Closing {
        double length = 0.0;
        int end = -1;
    };

    /// Best way to finish subset u at node `to`; ties go to the smallest end node.
    Closing close(Mask u, const MetricClosure& c, NodeId to = kDepot) const {
        if (u == 0)
            return {c(root_, to), -1};
        Closing best{kInf, -1};
        for (std::size_t i = 0; i < size(); ++i) {
            if (!(u >> i & 1u))
                continue;
            const double cand = length_[u * size() + i] + c(targets_[i], to);
            if (cand < best.length)
                best = {cand, cand < best.length - kTimeEps ? static_cast<int>(i) : best.end};
        }
        return best;
    }

private:
    static constexpr std::uint8_t kNone = 0xFF;
    NodeId root_;
    std::vector<NodeId> targets_;
    std::vector<double> length_;
    std::vector<std::uint8_t> parent_;
};

inline HeldKarpTable held_karp(const MetricClosure& c, const std::vector<NodeId>& targets,
                               std::size_t cap = kHeldKarpCap) {
    return HeldKarpTable(c, targets, kDepot, cap);
}

struct OpenPath {
    std::vector<NodeId> nodes; ///< start, targets..., depot
    double length = 0.0;
};

/// Shortest walk from `start` through all targets that ends at the depot.
inline OpenPath open_path_tsp(const MetricClosure& c, NodeId start, std::vector<NodeId> targets,
                              std::size_t cap = kHeldKarpCap) {
    std::erase_if(targets, [&](NodeId v) { return v == start || v == kDepot; });
    OpenPath out;
    out.nodes.push_back(start);
    if (targets.empty()) {
        out.nodes.push_back(kDepot);
        out.length = c(start, kDepot);
        return out;
    }
    HeldKarpTable table(c, std::move(targets), start, cap);
    const auto closing = table.close(table.full_mask(), c);
    for (NodeId v : table.path(table.full_mask(), static_cast<std::size_t>(closing.end)))
        out.nodes.push_back(v);
    out.nodes.push_back(kDepot);
    out.length = closing.length;
    return out;
}

} // namespace rdp

#endif
