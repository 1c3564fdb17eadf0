#ifndef RDP_DATASET_HPP
#define RDP_DATASET_HPP

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "rdp/generators.hpp"
#include "rdp/instance.hpp"

namespace rdp {

struct Fleet {
    int trucks = 1;
    int drones = 1;
    friend bool operator==(const Fleet&, const Fleet&) = default;
};

/// One experiment instance with the labels the result tables need.
struct LabeledInstance {
    std::string id;
    std::string graph_id;
    GraphClass graph_class = GraphClass::random;
    std::uint64_t graph_seed = 0;
    std::uint64_t damage_seed = 0;
    double delta = 0.0;
    RdpInstance instance;
};

inline const std::vector<double>& damage_grid() {
    static const std::vector<double> g{0.1, 0.3, 0.5, 0.7, 0.9};
    return g;
}

inline const std::vector<double>& large_alpha_grid() {
    static const std::vector<double> g{0.25, 0.5, 1.0, 2.0, 4.0};
    return g;
}

inline const std::vector<double>& small_alpha_grid() {
    static const std::vector<double> g{0.5, 1.0, 2.0};
    return g;
}

inline const std::vector<Fleet>& small_fleet_grid() {
    static const std::vector<Fleet> g{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}};
    return g;
}

struct GraphSpec {
    GraphClass graph_class;
    std::size_t n;
    int index;
};

struct DatasetPlan {
    std::vector<GraphSpec> graphs;
    std::vector<double> deltas;
    std::vector<double> alphas;
    std::vector<Fleet> fleets;
};

inline DatasetPlan dataset_plan(const std::string& name) {
    DatasetPlan p;
    auto add = [&](GraphClass c, std::size_t n, int count) {
        for (int i = 0; i < count; ++i)
            p.graphs.push_back({c, n, i});
    };
    if (name == "RANDOM" || name == "LARGE") {
        for (std::size_t n : {13, 15, 18, 21})
            add(GraphClass::random, n, 20);
        p.deltas = damage_grid();
        p.alphas = large_alpha_grid();
        p.fleets = {{1, 1}};
        if (name == "LARGE")
            for (GraphClass c : {GraphClass::one_center, GraphClass::two_center, GraphClass::coastal,
                                 GraphClass::mountain})
                add(c, 18, 20);
    } else if (name == "BASE" || name == "VAR") {
        add(GraphClass::random, 18, 20);
        if (name == "VAR")
            for (GraphClass c : {GraphClass::one_center, GraphClass::two_center, GraphClass::coastal,
                                 GraphClass::mountain})
                add(c, 18, 20);
        p.deltas = {0.3};
        p.alphas = large_alpha_grid();
        p.fleets = {{1, 1}};
    } else if (name == "SMALL") {
        add(GraphClass::random, 13, 20);
        p.deltas = damage_grid();
        p.alphas = small_alpha_grid();
        p.fleets = small_fleet_grid();
    } else {
        throw DomainError("unknown dataset '" + name + "' (RANDOM, BASE, VAR, LARGE, SMALL)");
    }
    return p;
}

inline std::uint64_t graph_seed(std::uint64_t root, const GraphSpec& g) {
    return derive_seed(root, {static_cast<std::uint64_t>(g.graph_class), g.n, static_cast<std::uint64_t>(g.index)});
}

inline std::string graph_id(const GraphSpec& g) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s-n%zu-g%02d", to_string(g.graph_class), g.n, g.index);
    return buf;
}

inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

/// Graphs in plan order, each expanded over delta, then alpha, then fleet.
/// In LARGE the delta grid applies to the Random graphs only; the other
/// classes use delta 0.3 as in VAR.
inline std::vector<LabeledInstance> build_dataset(const std::string& name, std::uint64_t root_seed) {
    const DatasetPlan plan = dataset_plan(name);
    std::vector<LabeledInstance> out;
    for (const GraphSpec& gs : plan.graphs) {
        const std::uint64_t gseed = graph_seed(root_seed, gs);
        GeneratorConfig cfg;
        cfg.graph_class = gs.graph_class;
        cfg.n = gs.n;
        cfg.seed = gseed;
        const WeightedGraph g = generate(cfg);
        std::vector<double> deltas = plan.deltas;
        if (name == "LARGE" && gs.graph_class != GraphClass::random)
            deltas = {0.3};
        for (double delta : deltas) {
            std::size_t di = 0;
            while (damage_grid()[di] != delta)
                ++di;
            const std::uint64_t dseed = derive_seed(gseed, {di});
            const auto damaged = sample_damage(g, delta, dseed);
            for (double alpha : plan.alphas)
                for (const Fleet& f : plan.fleets) {
                    LabeledInstance li;
                    li.graph_id = graph_id(gs);
                    li.id = li.graph_id + "-d" + format_number(delta) + "-a" + format_number(alpha) + "-t" +
                            std::to_string(f.trucks) + "d" + std::to_string(f.drones);
                    li.graph_class = gs.graph_class;
                    li.graph_seed = gseed;
                    li.damage_seed = dseed;
                    li.delta = delta;
                    nlohmann::json meta{{"generator", to_string(gs.graph_class)},
                                        {"seed", gseed},
                                        {"damage_seed", dseed},
                                        {"damage_prob", delta},
                                        {"id", li.id}};
                    li.instance = RdpInstance(g, f.trucks, f.drones, alpha, damaged, std::move(meta));
                    out.push_back(std::move(li));
                }
        }
    }
    return out;
}

} // namespace rdp

#endif
