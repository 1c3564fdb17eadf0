#ifndef RDP_INSTANCE_HPP
#define RDP_INSTANCE_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdp/graph.hpp"

namespace rdp {

/// Graph, fleet, drone speed factor and the hidden damage set D.
class RdpInstance {
public:
    RdpInstance() = default;

    RdpInstance(WeightedGraph graph, int trucks, int drones, double alpha, std::vector<NodeId> damaged,
                nlohmann::json meta = nlohmann::json::object())
        : graph_(std::move(graph)), closure_(graph_), trucks_(trucks), drones_(drones), alpha_(alpha),
          damaged_(std::move(damaged)), meta_(std::move(meta)) {
        if (trucks_ < 0 || drones_ < 0)
            throw GraphError("fleet sizes must be non-negative");
        if (!(alpha_ > 0.0))
            throw GraphError("alpha must be positive");
        std::sort(damaged_.begin(), damaged_.end());
        damaged_.erase(std::unique(damaged_.begin(), damaged_.end()), damaged_.end());
        for (NodeId v : damaged_)
            if (v == kDepot || v >= graph_.node_count())
                throw GraphError("damaged node " + std::to_string(v) + " is not a customer");
        if (!damaged_.empty() && trucks_ == 0)
            throw InfeasibleError("damaged nodes present but no trucks");
    }

    const WeightedGraph& graph() const { return graph_; }
    const MetricClosure& closure() const { return closure_; }
    std::size_t node_count() const { return graph_.node_count(); }
    std::vector<NodeId> customers() const { return graph_.customers(); }
    int trucks() const { return trucks_; }
    int drones() const { return drones_; }
    double alpha() const { return alpha_; }
    const std::vector<NodeId>& damaged() const { return damaged_; }
    const nlohmann::json& meta() const { return meta_; }
    nlohmann::json& meta() { return meta_; }

    bool is_damaged(NodeId v) const { return std::binary_search(damaged_.begin(), damaged_.end(), v); }

    /// Same graph, different fleet, speed or damage.
    RdpInstance with(int trucks, int drones, double alpha, std::vector<NodeId> damaged) const {
        return RdpInstance(graph_, trucks, drones, alpha, std::move(damaged), meta_);
    }

private:
    WeightedGraph graph_;
    MetricClosure closure_;
    int trucks_ = 1;
    int drones_ = 0;
    double alpha_ = 1.0;
    std::vector<NodeId> damaged_;
    nlohmann::json meta_ = nlohmann::json::object();
};

inline nlohmann::json to_json(const RdpInstance& inst) {
    nlohmann::json j;
    j["nodes"] = inst.node_count();
    j["depot"] = kDepot;
    auto edges = nlohmann::json::array();
    for (const Edge& e : inst.graph().edges())
        edges.push_back({e.u, e.v, e.length});
    j["edges"] = std::move(edges);
    if (inst.graph().has_coords()) {
        auto coords = nlohmann::json::array();
        for (const Point& p : inst.graph().coords())
            coords.push_back({p.x, p.y});
        j["coords"] = std::move(coords);
    }
    j["trucks"] = inst.trucks();
    j["drones"] = inst.drones();
    j["alpha"] = inst.alpha();
    j["damaged"] = inst.damaged();
    j["meta"] = inst.meta();
    return j;
}

inline RdpInstance instance_from_json(const nlohmann::json& j) {
    try {
        if (j.value("depot", 0) != 0)
            throw GraphError("depot must be node 0");
        WeightedGraph g(j.at("nodes").get<std::size_t>());
        for (const auto& e : j.at("edges"))
            g.add_edge(e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<double>());
        if (j.contains("coords")) {
            std::vector<Point> pts;
            for (const auto& p : j["coords"])
                pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
            g.set_coords(std::move(pts));
        }
        return RdpInstance(std::move(g), j.at("trucks").get<int>(), j.at("drones").get<int>(),
                           j.at("alpha").get<double>(), j.value("damaged", std::vector<NodeId>{}),
                           j.value("meta", nlohmann::json::object()));
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("malformed instance JSON: ") + e.what());
    }
}

} // namespace rdp

#endif
