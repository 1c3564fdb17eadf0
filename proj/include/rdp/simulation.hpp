#ifndef RDP_SIMULATION_HPP
#define RDP_SIMULATION_HPP

#include <algorithm>
#include <concepts>
#include <deque>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rdp/instance.hpp"
#include "rdp/multi_tsp.hpp"

namespace rdp {

enum class Status : std::uint8_t { unknown, damaged, intact };

struct TimedStop {
    NodeId node;
    double time;
};

struct VehicleLog {
    Role role = Role::truck;
    std::vector<TimedStop> stops; ///< starts with (depot, 0)

    Tour tour() const {
        Tour t;
        t.nodes.clear();
        for (const auto& s : stops)
            t.nodes.push_back(s.node);
        if (t.nodes.size() == 1)
            return Tour{};
        return t;
    }

    double return_time() const { return stops.back().time; }
};

struct Revelation {
    double time;
    int vehicle;
    NodeId node;
    bool damaged;
};

/// A plan handed to a vehicle; logged so replays can be compared.
struct Decision {
    double time;
    int vehicle;
    std::vector<NodeId> plan;
    friend bool operator==(const Decision&, const Decision&) = default;
};

struct StageMark {
    std::string name;
    double time;
};

struct SimulationOutcome {
    std::string policy;
    double makespan = 0.0;
    std::vector<VehicleLog> vehicles; ///< trucks first, then drones
    std::vector<Revelation> revelations;
    std::vector<StageMark> stages;
    std::vector<Decision> decisions;

    double stage_time(const std::string& name) const {
        for (const auto& s : stages)
            if (s.name == name)
                return s.time;
        throw Error("no stage named " + name);
    }
};

/**
 * Discrete-event simulator. Policies see the closure, the fleet and the
 * statuses revealed so far; the damage set itself stays private.
 *
 * Arrivals within kTimeEps of the earliest pending one form a batch. All
 * arrivals of a batch are applied (in time, vehicle order) before the policy
 * is asked for decisions, so a status revealed at time t is known to every
 * decision taken at t.
 */
class Simulation {
public:
    explicit Simulation(const RdpInstance& inst, std::shared_ptr<const MultiTspSolver> solver = nullptr)
        : inst_(&inst), solver_(std::move(solver)), status_(inst.node_count(), Status::unknown),
          truck_visited_(inst.node_count(), false) {
        if (!solver_)
            solver_ = std::make_shared<MultiTspSolver>(inst.closure(), inst.customers());
        const int total = inst.trucks() + inst.drones();
        vehicles_.resize(static_cast<std::size_t>(total));
        for (int v = 0; v < total; ++v) {
            auto& st = vehicles_[static_cast<std::size_t>(v)];
            st.role = v < inst.trucks() ? Role::truck : Role::drone;
            st.log.role = st.role;
            st.log.stops.push_back({kDepot, 0.0});
        }
        status_[kDepot] = Status::intact;
    }

    // ---- information available to policies ----

    const MetricClosure& closure() const { return inst_->closure(); }
    const MultiTspSolver& solver() const { return *solver_; }
    int trucks() const { return inst_->trucks(); }
    int drones() const { return inst_->drones(); }
    double alpha() const { return inst_->alpha(); }
    std::vector<NodeId> customers() const { return inst_->customers(); }
    double now() const { return now_; }

    Status status(NodeId v) const { return status_[v]; }
    bool visited(NodeId v) const { return status_[v] != Status::unknown; }
    bool truck_visited(NodeId v) const { return truck_visited_[v]; }

    int vehicle_count() const { return static_cast<int>(vehicles_.size()); }
    Role role(int v) const { return at(v).role; }
    bool moving(int v) const { return at(v).moving; }
    NodeId position(int v) const { return at(v).pos; }
    bool idle(int v) const { return !at(v).moving && at(v).plan.empty(); }
    bool idle_at_depot(int v) const { return idle(v) && at(v).pos == kDepot; }

    /// Nodes the vehicle is still committed to, including its current destination.
    std::vector<NodeId> remaining_route(int v) const {
        std::vector<NodeId> out;
        if (at(v).moving)
            out.push_back(at(v).to);
        out.insert(out.end(), at(v).plan.begin(), at(v).plan.end());
        return out;
    }

    /// Replaces the plan of a vehicle that is standing at a node.
    void assign(int v, std::vector<NodeId> stops) {
        auto& st = at(v);
        if (st.moving)
            throw Error("cannot replan a vehicle in transit");
        decisions_.push_back({now_, v, stops});
        st.plan.assign(stops.begin(), stops.end());
    }

    void mark_stage(std::string name) { stages_.push_back({std::move(name), now_}); }

    // ---- driver ----

    template <class Policy>
    SimulationOutcome run(Policy& policy, std::string name) {
        policy.start(*this);
        dispatch();
        std::vector<int> batch;
        while (true) {
            double first = kInf;
            for (const auto& st : vehicles_)
                if (st.moving)
                    first = std::min(first, st.arrive);
            if (first == kInf)
                break;
            batch.clear();
            for (int v = 0; v < vehicle_count(); ++v)
                if (at(v).moving && at(v).arrive <= first + kTimeEps)
                    batch.push_back(v);
            std::stable_sort(batch.begin(), batch.end(),
                             [&](int a, int b) { return at(a).arrive < at(b).arrive; });
            now_ = first;
            for (int v : batch)
                arrive(v);
            policy.on_event(*this, batch);
            dispatch();
        }
        for (int v = 0; v < vehicle_count(); ++v)
            if (!idle_at_depot(v))
                throw Error("policy " + name + " left vehicle " + std::to_string(v) + " away from the depot");

        SimulationOutcome out;
        out.policy = std::move(name);
        for (const auto& st : vehicles_) {
            out.vehicles.push_back(st.log);
            out.makespan = std::max(out.makespan, st.log.return_time());
        }
        out.revelations = revelations_;
        out.stages = stages_;
        out.decisions = decisions_;
        return out;
    }

private:
    struct VehicleState {
        Role role = Role::truck;
        NodeId pos = kDepot;
        double ready = 0.0;
        bool moving = false;
        NodeId to = kDepot;
        double arrive = 0.0;
        std::deque<NodeId> plan;
        VehicleLog log;
    };

    VehicleState& at(int v) { return vehicles_.at(static_cast<std::size_t>(v)); }
    const VehicleState& at(int v) const { return vehicles_.at(static_cast<std::size_t>(v)); }

    void dispatch() {
        for (auto& st : vehicles_) {
            if (st.moving || st.plan.empty())
                continue;
            const NodeId next = st.plan.front();
            st.plan.pop_front();
            const double depart = std::max(st.ready, now_);
            const double dist = closure()(st.pos, next);
            st.moving = true;
            st.to = next;
            st.arrive = depart + (st.role == Role::truck ? dist : dist / alpha());
        }
    }

    void arrive(int v) {
        auto& st = at(v);
        st.moving = false;
        st.pos = st.to;
        st.ready = st.arrive;
        st.log.stops.push_back({st.pos, st.arrive});
        if (st.pos == kDepot)
            return;
        if (status_[st.pos] == Status::unknown) {
            const bool dmg = inst_->is_damaged(st.pos);
            status_[st.pos] = dmg ? Status::damaged : Status::intact;
            revelations_.push_back({st.arrive, v, st.pos, dmg});
        }
        if (st.role == Role::truck)
            truck_visited_[st.pos] = true;
    }

    const RdpInstance* inst_;
    std::shared_ptr<const MultiTspSolver> solver_;
    std::vector<Status> status_;
    std::vector<bool> truck_visited_;
    std::vector<VehicleState> vehicles_;
    std::vector<Revelation> revelations_;
    std::vector<StageMark> stages_;
    std::vector<Decision> decisions_;
    double now_ = 0.0;
};

template <class P>
concept OnlinePolicy = requires(P p, Simulation& sim, const std::vector<int>& arrived) {
    { p.start(sim) };
    { p.on_event(sim, arrived) };
};

/// Checks the outcome against the instance; returns human-readable problems.
inline std::vector<std::string> check_outcome(const RdpInstance& inst, const SimulationOutcome& out) {
    std::vector<std::string> problems;
    const auto& c = inst.closure();
    std::vector<bool> seen(inst.node_count(), false), by_truck(inst.node_count(), false);
    double span = 0.0;
    for (std::size_t v = 0; v < out.vehicles.size(); ++v) {
        const auto& log = out.vehicles[v];
        const std::string tag = "vehicle " + std::to_string(v);
        if (log.stops.empty() || log.stops.front().node != kDepot || log.stops.front().time != 0.0)
            problems.push_back(tag + " does not start at the depot at time 0");
        if (log.stops.back().node != kDepot)
            problems.push_back(tag + " does not end at the depot");
        const double speed = log.role == Role::truck ? 1.0 : inst.alpha();
        for (std::size_t i = 1; i < log.stops.size(); ++i) {
            const double need = c(log.stops[i - 1].node, log.stops[i].node) / speed;
            if (log.stops[i].time + kTimeEps < log.stops[i - 1].time + need)
                problems.push_back(tag + " moves faster than allowed before node " +
                                   std::to_string(log.stops[i].node));
            seen[log.stops[i].node] = true;
            if (log.role == Role::truck)
                by_truck[log.stops[i].node] = true;
        }
        span = std::max(span, log.stops.back().time);
    }
    for (NodeId v = 1; v < inst.node_count(); ++v)
        if (!seen[v])
            problems.push_back("node " + std::to_string(v) + " never visited");
    for (NodeId v : inst.damaged())
        if (!by_truck[v])
            problems.push_back("damaged node " + std::to_string(v) + " not served by a truck");
    if (std::abs(span - out.makespan) > kTimeEps)
        problems.push_back("makespan differs from the latest return time");
    std::vector<int> revealed(inst.node_count(), 0);
    for (const auto& r : out.revelations) {
        if (++revealed[r.node] > 1)
            problems.push_back("node " + std::to_string(r.node) + " revealed twice");
        if (r.damaged != inst.is_damaged(r.node))
            problems.push_back("wrong status revealed for node " + std::to_string(r.node));
    }
    return problems;
}

inline nlohmann::json to_json(const SimulationOutcome& out) {
    nlohmann::json j;
    j["policy"] = out.policy;
    j["makespan"] = out.makespan;
    auto vehicles = nlohmann::json::array();
    for (std::size_t v = 0; v < out.vehicles.size(); ++v) {
        auto stops = nlohmann::json::array();
        for (const auto& s : out.vehicles[v].stops)
            stops.push_back({{"node", s.node}, {"time", s.time}});
        vehicles.push_back({{"vehicle", v}, {"role", to_string(out.vehicles[v].role)}, {"stops", stops}});
    }
    j["vehicles"] = std::move(vehicles);
    auto events = nlohmann::json::array();
    for (const auto& r : out.revelations)
        events.push_back({{"time", r.time}, {"vehicle", r.vehicle}, {"node", r.node}, {"damaged", r.damaged}});
    j["revelations"] = std::move(events);
    auto stages = nlohmann::json::array();
    for (const auto& s : out.stages)
        stages.push_back({{"name", s.name}, {"time", s.time}});
    j["stages"] = std::move(stages);
    return j;
}

} // namespace rdp

#endif
