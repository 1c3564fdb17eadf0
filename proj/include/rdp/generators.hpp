#ifndef RDP_GENERATORS_HPP
#define RDP_GENERATORS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rdp/graph.hpp"
#include "rdp/rng.hpp"

namespace rdp {

enum class GraphClass { random, one_center, two_center, coastal, mountain };

inline const char* to_string(GraphClass c) {
    switch (c) {
    case GraphClass::random: return "random";
    case GraphClass::one_center: return "one_center";
    case GraphClass::two_center: return "two_center";
    case GraphClass::coastal: return "coastal";
    case GraphClass::mountain: return "mountain";
    }
    return "?";
}

inline GraphClass graph_class_from_string(const std::string& s) {
    for (GraphClass c : {GraphClass::random, GraphClass::one_center, GraphClass::two_center, GraphClass::coastal,
                         GraphClass::mountain})
        if (s == to_string(c))
            return c;
    throw DomainError("unknown graph class '" + s + "'");
}

/// Tunable constants of the lattice generators.
struct LatticeParams {
    int cells = 101;               ///< lattice points per side
    double exclusion_cells = 3.0;  ///< no two nodes closer than this (in cells)
    double coast_decay = 0.25;     ///< placement weight exp(-x / (coast_decay * width))
    double band_boost = 3.0;       ///< weight multiplier near the y of an accepted node
    int band_cells = 2;            ///< half width of that band
    int bumps = 3;                 ///< Gaussian bumps in the height field
    double height_weight = 2.0;    ///< placement weight exp(-height_weight * h)
    int max_attempts = 100;
};

struct GeneratorConfig {
    GraphClass graph_class = GraphClass::random;
    std::size_t n = 18;
    std::uint64_t seed = 0;
    double damage_prob = 0.3;
    std::optional<std::size_t> edge_target;
    LatticeParams lattice;
};

namespace detail {

inline WeightedGraph complete_euclidean(const std::vector<Point>& pts) {
    WeightedGraph g(pts.size());
    for (NodeId u = 0; u < pts.size(); ++u)
        for (NodeId v = u + 1; v < pts.size(); ++v)
            g.add_edge(u, v, euclid(pts[u], pts[v]));
    g.set_coords(pts);
    return g;
}

struct Cell {
    long long i;
    long long j;
};

inline long long orient(Cell a, Cell b, Cell c) {
    const long long v = (b.i - a.i) * (c.j - a.j) - (b.j - a.j) * (c.i - a.i);
    return (v > 0) - (v < 0);
}

inline bool on_segment(Cell a, Cell b, Cell p) {
    return std::min(a.i, b.i) <= p.i && p.i <= std::max(a.i, b.i) && std::min(a.j, b.j) <= p.j &&
           p.j <= std::max(a.j, b.j);
}

inline bool same(Cell a, Cell b) { return a.i == b.i && a.j == b.j; }

/// True if segments ab and cd meet anywhere except at one shared endpoint.
inline bool segments_conflict(Cell a, Cell b, Cell c, Cell d) {
    const bool ac = same(a, c), ad = same(a, d), bc = same(b, c), bd = same(b, d);
    if ((ac && bd) || (ad && bc))
        return true;
    if (ac || ad || bc || bd) {
        const Cell s = (ac || ad) ? a : b;
        const Cell p = same(s, a) ? b : a;
        const Cell q = same(s, c) ? d : c;
        if (orient(s, p, q) != 0)
            return false;
        return (p.i - s.i) * (q.i - s.i) + (p.j - s.j) * (q.j - s.j) > 0;
    }
    const long long o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0)
        return true;
    return (o1 == 0 && on_segment(a, b, c)) || (o2 == 0 && on_segment(a, b, d)) ||
           (o3 == 0 && on_segment(c, d, a)) || (o4 == 0 && on_segment(c, d, b));
}

/// Sine of the angle between rays p->a and p->b.
inline double sin_angle(Point p, Point a, Point b) {
    const double ax = a.x - p.x, ay = a.y - p.y, bx = b.x - p.x, by = b.y - p.y;
    const double cross = std::abs(ax * by - ay * bx);
    const double norm = std::hypot(ax, ay) * std::hypot(bx, by);
    return norm > 0 ? cross / norm : 0.0;
}

struct HeightField {
    struct Bump {
        double cx, cy, sigma, amp;
    };
    std::vector<Bump> bumps;

    double operator()(double x, double y) const {
        double h = 0.0;
        for (const Bump& b : bumps) {
            const double dx = x - b.cx, dy = y - b.cy;
            h += b.amp * std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
        }
        return h;
    }

    /// Highest sampled point on the straight line between a and b.
    double max_on_segment(Point a, Point b, int samples = 33) const {
        double h = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double t = static_cast<double>(s) / (samples - 1);
            h = std::max(h, (*this)(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)));
        }
        return h;
    }
};

inline HeightField make_height_field(Rng& rng, int bumps, double width, double height) {
    HeightField f;
    const double side = std::min(width, height);
    for (int k = 0; k < bumps; ++k)
        f.bumps.push_back({rng.uniform(0.0, width), rng.uniform(0.0, height), rng.uniform(0.15, 0.35) * side, 1.0});
    return f;
}

struct DisjointSets {
    std::vector<std::size_t> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

/// Index of a weighted draw, or -1 when all weights are zero.
inline long long weighted_pick(Rng& rng, const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w)
        total += x;
    if (!(total > 0.0))
        return -1;
    const double r = rng.uniform() * total;
    double acc = 0.0;
    long long last = -1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] <= 0.0)
            continue;
        acc += w[i];
        last = static_cast<long long>(i);
        if (r < acc)
            return last;
    }
    return last;
}

enum class Terrain { coastal, mountain };

struct Terrain2D {
    WeightedGraph graph;
    HeightField field; ///< empty for coastal graphs
};

/// One attempt of the lattice generator; empty optional if it got stuck.
inline std::optional<Terrain2D> lattice_attempt(Terrain terrain, std::size_t n, std::size_t edge_target,
                                                    const LatticeParams& lp, Rng& rng) {
    const double nn = static_cast<double>(n) / 15.0;
    const double width = terrain == Terrain::coastal ? 1.0 : std::sqrt(nn);
    const double height = terrain == Terrain::coastal ? nn : std::sqrt(nn);
    const int cells = lp.cells;
    const double step_x = width / (cells - 1), step_y = height / (cells - 1);
    HeightField field;
    if (terrain == Terrain::mountain)
        field = make_height_field(rng, lp.bumps, width, height);

    auto phys = [&](Cell c) { return Point{static_cast<double>(c.i) * step_x, static_cast<double>(c.j) * step_y}; };

    // node placement
    std::vector<double> base(static_cast<std::size_t>(cells) * cells);
    for (int i = 0; i < cells; ++i)
        for (int j = 0; j < cells; ++j) {
            const Point p = phys({i, j});
            base[static_cast<std::size_t>(i) * cells + j] = terrain == Terrain::coastal
                                                                ? std::exp(-p.x / (lp.coast_decay * width))
                                                                : std::exp(-lp.height_weight * field(p.x, p.y));
        }
    std::vector<Cell> nodes;
    std::vector<double> w(base.size());
    const double excl2 = lp.exclusion_cells * lp.exclusion_cells;
    while (nodes.size() < n) {
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j) {
                double x = base[static_cast<std::size_t>(i) * cells + j];
                bool band = false;
                for (const Cell& a : nodes) {
                    const double di = static_cast<double>(i - a.i), dj = static_cast<double>(j - a.j);
                    if (di * di + dj * dj <= excl2) {
                        x = 0.0;
                        break;
                    }
                    band = band || std::llabs(j - a.j) <= lp.band_cells;
                }
                if (terrain == Terrain::coastal && band && x > 0.0)
                    x *= lp.band_boost;
                w[static_cast<std::size_t>(i) * cells + j] = x;
            }
        const long long pick = weighted_pick(rng, w);
        if (pick < 0)
            return std::nullopt;
        nodes.push_back({pick / cells, pick % cells});
    }

    std::vector<Point> pts;
    for (const Cell& c : nodes)
        pts.push_back(phys(c));

    // candidate edges: no other node on the segment
    const double spacing = std::sqrt(width * height / static_cast<double>(n));
    struct Cand {
        NodeId u, v;
        double p;
    };
    std::vector<Cand> cands;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) {
            bool blocked = false;
            for (NodeId x = 0; x < n && !blocked; ++x)
                if (x != u && x != v && orient(nodes[u], nodes[v], nodes[x]) == 0 &&
                    on_segment(nodes[u], nodes[v], nodes[x]))
                    blocked = true;
            if (blocked)
                continue;
            const double d = euclid(pts[u], pts[v]);
            double p = std::exp(-d / spacing);
            if (terrain == Terrain::mountain)
                p /= 1.0 + field.max_on_segment(pts[u], pts[v]);
            cands.push_back({u, v, p});
        }

    std::vector<std::pair<NodeId, NodeId>> accepted;
    auto crosses = [&](NodeId u, NodeId v) {
        for (const auto& [a, b] : accepted)
            if (segments_conflict(nodes[u], nodes[v], nodes[a], nodes[b]))
                return true;
        return false;
    };

    // maximum spanning tree by probability, skipping crossing edges
    std::vector<std::size_t> order(cands.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cands[a].p > cands[b].p; });
    DisjointSets ds(n);
    std::vector<bool> used(cands.size(), false);
    for (std::size_t idx : order) {
        const Cand& e = cands[idx];
        if (ds.find(e.u) == ds.find(e.v) || crosses(e.u, e.v))
            continue;
        ds.unite(e.u, e.v);
        accepted.emplace_back(e.u, e.v);
        used[idx] = true;
    }
    if (accepted.size() != n - 1)
        return std::nullopt;

    // densify with shallow-angle penalty
    std::vector<double> weight(cands.size());
    while (accepted.size() < edge_target) {
        for (std::size_t k = 0; k < cands.size(); ++k) {
            const Cand& e = cands[k];
            if (used[k] || crosses(e.u, e.v)) {
                weight[k] = 0.0;
                continue;
            }
            double smin = 1.0;
            for (const auto& [a, b] : accepted) {
                if (a == e.u || b == e.u)
                    smin = std::min(smin, sin_angle(pts[e.u], pts[e.v], pts[a == e.u ? b : a]));
                if (a == e.v || b == e.v)
                    smin = std::min(smin, sin_angle(pts[e.v], pts[e.u], pts[a == e.v ? b : a]));
            }
            weight[k] = e.p * smin;
        }
        const long long pick = weighted_pick(rng, weight);
        if (pick < 0)
            return std::nullopt;
        used[static_cast<std::size_t>(pick)] = true;
        accepted.emplace_back(cands[static_cast<std::size_t>(pick)].u, cands[static_cast<std::size_t>(pick)].v);
    }

    WeightedGraph g(n);
    for (const auto& [u, v] : accepted)
        g.add_edge(u, v, euclid(pts[u], pts[v]));
    g.set_coords(pts);
    return Terrain2D{std::move(g), std::move(field)};
}

inline Terrain2D lattice_graph(Terrain terrain, std::size_t n, std::uint64_t seed,
                                   std::optional<std::size_t> edge_target, const LatticeParams& lp) {
    if (n < 2)
        throw DomainError("lattice generators need n >= 2");
    const std::size_t target = edge_target.value_or(2 * n);
    if (target < n - 1 || target > n * (n - 1) / 2)
        throw DomainError("edge_target " + std::to_string(target) + " out of range for n=" + std::to_string(n));
    for (int attempt = 0; attempt < lp.max_attempts; ++attempt) {
        Rng rng(attempt == 0 ? seed : derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
        if (auto g = lattice_attempt(terrain, n, target, lp, rng))
            return std::move(*g);
    }
    throw GraphError("lattice generator gave up after " + std::to_string(lp.max_attempts) + " attempts");
}

} // namespace detail

/// Uniform points in the unit square; the first point is the depot.
inline WeightedGraph gen_random(std::size_t n, std::uint64_t seed) {
    if (n < 2)
        throw DomainError("gen_random needs n >= 2");
    Rng rng(seed);
    std::vector<Point> pts(n);
    for (auto& p : pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    return detail::complete_euclidean(pts);
}

/// Depot at the origin, nodes at angle U[0,pi] and signed radius N(0,50).
/// With two centers a hub sits at (200,0) and each node moves there w.p. 1/2.
inline WeightedGraph gen_center(std::size_t n, std::uint64_t seed, int centers) {
    if (n < 2)
        throw DomainError("gen_center needs n >= 2");
    if (centers != 1 && centers != 2)
        throw DomainError("centers must be 1 or 2");
    Rng rng(seed);
    std::vector<Point> pts{{0.0, 0.0}};
    if (centers == 2)
        pts.push_back({200.0, 0.0});
    while (pts.size() < n) {
        const double a = rng.uniform(0.0, std::numbers::pi);
        const double r = rng.normal(0.0, 50.0);
        Point p{r * std::cos(a), r * std::sin(a)};
        if (centers == 2 && rng.bernoulli(0.5))
            p.x += 200.0;
        bool clash = false;
        for (const Point& q : pts)
            clash = clash || euclid(p, q) < 1e-9;
        if (!clash)
            pts.push_back(p);
    }
    return detail::complete_euclidean(pts);
}

inline WeightedGraph gen_coastal(std::size_t n, std::uint64_t seed, std::optional<std::size_t> edge_target = {},
                                 const LatticeParams& lp = {}) {
    return detail::lattice_graph(detail::Terrain::coastal, n, seed, edge_target, lp).graph;
}

inline WeightedGraph gen_mountain(std::size_t n, std::uint64_t seed, std::optional<std::size_t> edge_target = {},
                                  const LatticeParams& lp = {}) {
    return detail::lattice_graph(detail::Terrain::mountain, n, seed, edge_target, lp).graph;
}

/// Mountain graph together with the height field it was sampled on.
inline detail::Terrain2D gen_mountain_terrain(std::size_t n, std::uint64_t seed,
                                              std::optional<std::size_t> edge_target = {},
                                              const LatticeParams& lp = {}) {
    return detail::lattice_graph(detail::Terrain::mountain, n, seed, edge_target, lp);
}

inline WeightedGraph generate(const GeneratorConfig& cfg) {
    switch (cfg.graph_class) {
    case GraphClass::random: return gen_random(cfg.n, cfg.seed);
    case GraphClass::one_center: return gen_center(cfg.n, cfg.seed, 1);
    case GraphClass::two_center: return gen_center(cfg.n, cfg.seed, 2);
    case GraphClass::coastal: return gen_coastal(cfg.n, cfg.seed, cfg.edge_target, cfg.lattice);
    case GraphClass::mountain: return gen_mountain(cfg.n, cfg.seed, cfg.edge_target, cfg.lattice);
    }
    throw DomainError("unknown graph class");
}

/// Each customer is damaged independently with probability delta.
inline std::vector<NodeId> sample_damage(const WeightedGraph& g, double delta, std::uint64_t seed) {
    if (!(delta >= 0.0 && delta <= 1.0))
        throw DomainError("damage probability must lie in [0,1]");
    Rng rng(seed);
    std::vector<NodeId> out;
    for (NodeId v = 1; v < g.node_count(); ++v)
        if (rng.bernoulli(delta))
            out.push_back(v);
    return out;
}

} // namespace rdp

#endif
