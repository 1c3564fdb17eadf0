#ifndef RDP_GRAPH_HPP
#define RDP_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdp/error.hpp"

namespace rdp {

using NodeId = std::uint32_t;

inline constexpr NodeId kDepot = 0;

/// Absolute tolerance for every time and length comparison.
inline constexpr double kTimeEps = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double euclid(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

struct Edge {
    NodeId u;
    NodeId v;
    double length;
};

/**
 * Undirected, connected graph with positive edge lengths. Node 0 is the
 * depot. Coordinates are optional and only used by generators and plots.
 */
class WeightedGraph {
public:
    WeightedGraph() = default;

    explicit WeightedGraph(std::size_t node_count) : adjacency_(node_count) {}

    std::size_t node_count() const { return adjacency_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<std::pair<NodeId, double>>& neighbours(NodeId v) const {
        return adjacency_.at(v);
    }

    /// Adds edge {u,v}. Rejects self loops, parallel edges and lengths <= 0.
    void add_edge(NodeId u, NodeId v, double length) {
        if (u >= node_count() || v >= node_count())
            throw GraphError("edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
        if (u == v)
            throw GraphError("self loop at node " + std::to_string(u));
        if (!(length > 0.0) || !std::isfinite(length))
            throw GraphError("non-positive edge length on " + std::to_string(u) + "-" + std::to_string(v));
        if (has_edge(u, v))
            throw GraphError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
        edges_.push_back({u, v, length});
        adjacency_[u].emplace_back(v, length);
        adjacency_[v].emplace_back(u, length);
    }

    bool has_edge(NodeId u, NodeId v) const {
        for (const auto& [w, len] : adjacency_.at(u))
            if (w == v)
                return true;
        return false;
    }

    std::optional<double> edge_length(NodeId u, NodeId v) const {
        for (const auto& [w, len] : adjacency_.at(u))
            if (w == v)
                return len;
        return std::nullopt;
    }

    bool has_coords() const { return !coords_.empty(); }
    const std::vector<Point>& coords() const { return coords_; }

    void set_coords(std::vector<Point> coords) {
        if (!coords.empty() && coords.size() != node_count())
            throw GraphError("coordinate count does not match node count");
        coords_ = std::move(coords);
    }

    /// Non-depot nodes 1..N-1.
    std::vector<NodeId> customers() const {
        std::vector<NodeId> out;
        for (NodeId v = 1; v < node_count(); ++v)
            out.push_back(v);
        return out;
    }

private:
    std::vector<std::vector<std::pair<NodeId, double>>> adjacency_;
    std::vector<Edge> edges_;
    std::vector<Point> coords_;
};

/// All-pairs shortest path lengths (metric closure) of a connected graph.
class MetricClosure {
public:
    MetricClosure() = default;

    explicit MetricClosure(const WeightedGraph& g) : n_(g.node_count()), dist_(n_ * n_, kInf) {
        if (n_ == 0)
            throw GraphError("graph has no nodes");
        for (std::size_t i = 0; i < n_; ++i)
            dist_[i * n_ + i] = 0.0;
        for (const Edge& e : g.edges()) {
            double& a = dist_[e.u * n_ + e.v];
            a = std::min(a, e.length);
            dist_[e.v * n_ + e.u] = a;
        }
        // Floyd-Warshall
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i) {
                const double dik = dist_[i * n_ + k];
                if (dik == kInf)
                    continue;
                for (std::size_t j = 0; j < n_; ++j) {
                    const double cand = dik + dist_[k * n_ + j];
                    if (cand < dist_[i * n_ + j])
                        dist_[i * n_ + j] = cand;
                }
            }
        for (std::size_t v = 1; v < n_; ++v)
            if (dist_[v] == kInf)
                throw GraphError("graph is disconnected: node " + std::to_string(v) + " unreachable from depot");
    }

    std::size_t node_count() const { return n_; }

    double operator()(NodeId u, NodeId v) const { return dist_[u * n_ + v]; }

private:
    std::size_t n_ = 0;
    std::vector<double> dist_;
};

inline MetricClosure metric_closure(const WeightedGraph& g) { return MetricClosure(g); }

enum class Role { truck, drone };

inline const char* to_string(Role r) { return r == Role::truck ? "truck" : "drone"; }

/// Closed walk through the metric closure: starts and ends at the depot.
/// The empty tour is the single node sequence (0).
struct Tour {
    std::vector<NodeId> nodes{kDepot};

    bool empty() const { return nodes.size() <= 2; }

    /// Visited nodes without the depot endpoints.
    std::vector<NodeId> stops() const {
        if (nodes.size() <= 2)
            return {};
        return {nodes.begin() + 1, nodes.end() - 1};
    }

    static Tour from_stops(const std::vector<NodeId>& stops) {
        Tour t;
        if (stops.empty())
            return t;
        t.nodes.insert(t.nodes.end(), stops.begin(), stops.end());
        t.nodes.push_back(kDepot);
        return t;
    }

    friend bool operator==(const Tour&, const Tour&) = default;
};

inline double path_length(const MetricClosure& c, const std::vector<NodeId>& seq) {
    double len = 0.0;
    for (std::size_t i = 1; i < seq.size(); ++i)
        len += c(seq[i - 1], seq[i]);
    return len;
}

inline double tour_length(const MetricClosure& c, const Tour& t) { return path_length(c, t.nodes); }

/// Travel time of a tour; drones are alpha times faster than trucks.
inline double tour_time(const MetricClosure& c, const Tour& t, Role role, double alpha) {
    const double len = tour_length(c, t);
    return role == Role::truck ? len : len / alpha;
}

/// Star with n leaves, each at distance d from the depot.
inline WeightedGraph make_star(std::size_t n, double d) {
    WeightedGraph g(n + 1);
    for (NodeId v = 1; v <= n; ++v)
        g.add_edge(kDepot, v, d);
    return g;
}

struct TwoLevelStar {
    WeightedGraph graph;
    std::vector<NodeId> level1;
    std::vector<NodeId> level2;
};

/// Star with n1 leaves at distance d1 followed by n2 leaves at distance d2.
inline TwoLevelStar make_two_level_star(std::size_t n1, std::size_t n2, double d1, double d2) {
    TwoLevelStar s{WeightedGraph(n1 + n2 + 1), {}, {}};
    for (NodeId v = 1; v <= n1; ++v) {
        s.graph.add_edge(kDepot, v, d1);
        s.level1.push_back(v);
    }
    for (NodeId v = static_cast<NodeId>(n1 + 1); v <= n1 + n2; ++v) {
        s.graph.add_edge(kDepot, v, d2);
        s.level2.push_back(v);
    }
    return s;
}

} // namespace rdp

#endif
