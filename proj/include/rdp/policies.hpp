#ifndef RDP_POLICIES_HPP
#define RDP_POLICIES_HPP

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "rdp/held_karp.hpp"
#include "rdp/simulation.hpp"

namespace rdp {

enum class PolicyKind { optimistic, regretless, truck_only, efhs, efha };

inline const char* to_string(PolicyKind p) {
    switch (p) {
    case PolicyKind::optimistic: return "optimistic";
    case PolicyKind::regretless: return "regretless";
    case PolicyKind::truck_only: return "truck_only";
    case PolicyKind::efhs: return "efhs";
    case PolicyKind::efha: return "efha";
    }
    return "?";
}

inline PolicyKind policy_from_string(const std::string& s) {
    for (PolicyKind p : {PolicyKind::optimistic, PolicyKind::regretless, PolicyKind::truck_only, PolicyKind::efhs,
                         PolicyKind::efha})
        if (s == to_string(p))
            return p;
    throw DomainError("unknown policy '" + s + "' (optimistic, regretless, truck_only, efhs, efha)");
}

inline const std::vector<PolicyKind>& all_policies() {
    static const std::vector<PolicyKind> p{PolicyKind::optimistic, PolicyKind::regretless, PolicyKind::truck_only,
                                           PolicyKind::efhs, PolicyKind::efha};
    return p;
}

namespace detail {

inline std::vector<NodeId> with_return(std::vector<NodeId> stops) {
    if (!stops.empty())
        stops.push_back(kDepot);
    return stops;
}

inline void assign_tours(Simulation& sim, const std::vector<Tour>& tours, const std::vector<int>& vehicles) {
    for (std::size_t i = 0; i < tours.size(); ++i)
        if (!tours[i].empty())
            sim.assign(vehicles[i], with_return(tours[i].stops()));
}

inline std::vector<int> truck_ids(const Simulation& sim) {
    std::vector<int> ids(static_cast<std::size_t>(sim.trucks()));
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
}

inline std::vector<int> drone_ids(const Simulation& sim) {
    std::vector<int> ids(static_cast<std::size_t>(sim.drones()));
    std::iota(ids.begin(), ids.end(), sim.trucks());
    return ids;
}

inline bool all_idle(const Simulation& sim, const std::vector<int>& ids) {
    return std::all_of(ids.begin(), ids.end(), [&](int v) { return sim.idle_at_depot(v); });
}

/// Damaged nodes whose status is known and which no truck has served yet.
inline std::vector<NodeId> known_unserved(const Simulation& sim) {
    std::vector<NodeId> out;
    for (NodeId v : sim.customers())
        if (sim.status(v) == Status::damaged && !sim.truck_visited(v))
            out.push_back(v);
    return out;
}

} // namespace detail

/// Segment boundaries b[0]=0 <= b[1] <= ... <= b[k]=len. The truck takes
/// [b0,b1); drone l takes [b_l, b_{l+1}) and flies it in reverse.
struct TourSplit {
    std::vector<std::size_t> bounds;
    double objective = 0.0;
};

/**
 * Splits a tour among one truck and k-1 drones, minimising the longest of the
 * truck prefix tour and the drone segment tours. Exhaustive; on ties the
 * truck keeps the longest prefix and earlier drones the longer segments.
 */
inline TourSplit split_tour(const MetricClosure& c, const std::vector<NodeId>& stops, double alpha, int k) {
    if (k < 1)
        throw DomainError("split_tour needs at least one vehicle");
    const std::size_t len = stops.size();
    // seg[i][j]: closed tour length of stops[i..j)
    std::vector<std::vector<double>> seg(len + 1, std::vector<double>(len + 1, 0.0));
    for (std::size_t i = 0; i < len; ++i) {
        double inner = 0.0;
        for (std::size_t j = i + 1; j <= len; ++j) {
            if (j > i + 1)
                inner += c(stops[j - 2], stops[j - 1]);
            seg[i][j] = c(kDepot, stops[i]) + inner + c(stops[j - 1], kDepot);
        }
    }
    TourSplit best{{}, kInf};
    std::vector<std::size_t> b(static_cast<std::size_t>(k) + 1, 0);
    b[static_cast<std::size_t>(k)] = len;
    const auto kk = static_cast<std::size_t>(k);
    // segment [b[level-1], b[level]) belongs to vehicle level-1; vehicle 0 is the truck
    auto rec = [&](auto&& self, std::size_t level, double worst) -> void {
        if (level == kk) {
            const double w = std::max(worst, seg[b[kk - 1]][len] / alpha);
            if (w < best.objective - kTimeEps)
                best = {b, w};
            return;
        }
        for (std::size_t end = len + 1; end-- > b[level - 1];) {
            b[level] = end;
            const double part = seg[b[level - 1]][end];
            const double w = std::max(worst, level == 1 ? part : part / alpha);
            if (w < best.objective - kTimeEps)
                self(self, level + 1, w);
        }
    };
    if (k == 1)
        best = {{0, len}, seg[0][len]};
    else
        rec(rec, 1, 0.0);
    return best;
}

/// Joint MultiTSP over all nodes, then trucks revisit drone-found damage.
class OptimisticPolicy {
public:
    void start(Simulation& sim) {
        const auto sol = sim.solver().solve(sim.customers(), sim.trucks(), sim.drones(), sim.alpha());
        sim.mark_stage("stage1");
        detail::assign_tours(sim, sol.truck_tours, detail::truck_ids(sim));
        detail::assign_tours(sim, sol.drone_tours, detail::drone_ids(sim));
    }

    void on_event(Simulation& sim, const std::vector<int>&) {
        if (second_stage_)
            return;
        std::vector<int> everyone(static_cast<std::size_t>(sim.vehicle_count()));
        std::iota(everyone.begin(), everyone.end(), 0);
        if (!detail::all_idle(sim, everyone))
            return;
        second_stage_ = true;
        sim.mark_stage("stage2");
        const auto sol = sim.solver().solve(detail::known_unserved(sim), sim.trucks(), 0, sim.alpha());
        detail::assign_tours(sim, sol.truck_tours, detail::truck_ids(sim));
    }

private:
    bool second_stage_ = false;
};

/// Truck-only MultiTSP; drones never leave the depot.
class TruckOnlyPolicy {
public:
    void start(Simulation& sim) {
        const auto sol = sim.solver().solve(sim.customers(), sim.trucks(), 0, sim.alpha());
        detail::assign_tours(sim, sol.truck_tours, detail::truck_ids(sim));
    }
    void on_event(Simulation&, const std::vector<int>&) {}
};

/**
 * Truck-only tours, each split between its truck and a share of the drones.
 * When a truck finishes its own segment it replans once: it visits every node
 * of its original tour that is still unvisited or known damaged, then returns.
 */
class RegretlessPolicy {
public:
    void start(Simulation& sim) {
        const int kt = sim.trucks();
        const auto sol = sim.solver().solve(sim.customers(), kt, 0, sim.alpha());
        tours_.clear();
        for (const auto& t : sol.truck_tours)
            tours_.push_back(t.stops());

        // longest tours get the larger drone share
        std::vector<int> order(static_cast<std::size_t>(kt));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return tour_length(sim.closure(), sol.truck_tours[static_cast<std::size_t>(a)]) >
                   tour_length(sim.closure(), sol.truck_tours[static_cast<std::size_t>(b)]);
        });
        std::vector<int> share(static_cast<std::size_t>(kt), sim.drones() / kt);
        for (int i = 0; i < sim.drones() % kt; ++i)
            ++share[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];

        replan_at_.assign(static_cast<std::size_t>(kt), kDepot);
        replanned_.assign(static_cast<std::size_t>(kt), false);
        int next_drone = kt;
        for (int i = 0; i < kt; ++i) {
            const int drones_here = share[static_cast<std::size_t>(i)];
            // a tour may be driven in either direction; keep the one that splits
            // better, on ties the one giving the truck the longer segment
            std::vector<NodeId> stops = tours_[static_cast<std::size_t>(i)];
            auto split = split_tour(sim.closure(), stops, sim.alpha(), 1 + drones_here);
            std::vector<NodeId> back(stops.rbegin(), stops.rend());
            auto back_split = split_tour(sim.closure(), back, sim.alpha(), 1 + drones_here);
            if (back_split.objective < split.objective - kTimeEps ||
                (back_split.objective <= split.objective + kTimeEps && back_split.bounds[1] > split.bounds[1])) {
                stops = std::move(back);
                split = std::move(back_split);
            }
            tours_[static_cast<std::size_t>(i)] = stops;
            const auto& b = split.bounds;
            for (int l = 1; l <= drones_here; ++l, ++next_drone) {
                std::vector<NodeId> seg(stops.begin() + static_cast<std::ptrdiff_t>(b[static_cast<std::size_t>(l)]),
                                        stops.begin() + static_cast<std::ptrdiff_t>(b[static_cast<std::size_t>(l) + 1]));
                std::reverse(seg.begin(), seg.end());
                if (!seg.empty())
                    sim.assign(next_drone, detail::with_return(seg));
            }
            if (stops.empty()) {
                replanned_[static_cast<std::size_t>(i)] = true;
                continue;
            }
            std::vector<NodeId> own(stops.begin(), stops.begin() + static_cast<std::ptrdiff_t>(b[1]));
            if (own.empty()) {
                replan(sim, i);
            } else {
                replan_at_[static_cast<std::size_t>(i)] = own.back();
                sim.assign(i, own);
            }
        }
    }

    void on_event(Simulation& sim, const std::vector<int>& arrived) {
        for (int v : arrived) {
            if (v >= sim.trucks() || replanned_[static_cast<std::size_t>(v)])
                continue;
            if (sim.idle(v) && sim.position(v) == replan_at_[static_cast<std::size_t>(v)])
                replan(sim, v);
        }
    }

    /// Initial truck tours in driving order; valid after start().
    const std::vector<std::vector<NodeId>>& tours() const { return tours_; }

private:
    void replan(Simulation& sim, int truck) {
        replanned_[static_cast<std::size_t>(truck)] = true;
        std::vector<NodeId> targets;
        for (NodeId v : tours_[static_cast<std::size_t>(truck)])
            if (!sim.visited(v) || (sim.status(v) == Status::damaged && !sim.truck_visited(v)))
                targets.push_back(v);
        sim.mark_stage("replan_truck_" + std::to_string(truck));
        const auto path = open_path_tsp(sim.closure(), sim.position(truck), targets);
        std::vector<NodeId> plan(path.nodes.begin() + 1, path.nodes.end());
        if (sim.position(truck) == kDepot && plan.size() == 1)
            return; // nothing left and already home
        sim.assign(truck, plan);
    }

    std::vector<std::vector<NodeId>> tours_;
    std::vector<NodeId> replan_at_;
    std::vector<bool> replanned_;
};

/// Drones explore everything first; trucks start once all drones are back.
class EfhsPolicy {
public:
    void start(Simulation& sim) {
        if (sim.drones() < 1)
            throw DomainError("explore-first policies need at least one drone");
        const auto sol = sim.solver().solve(sim.customers(), 0, sim.drones(), sim.alpha());
        sim.mark_stage("explore");
        detail::assign_tours(sim, sol.drone_tours, detail::drone_ids(sim));
    }

    void on_event(Simulation& sim, const std::vector<int>&) {
        if (helping_ || !detail::all_idle(sim, detail::drone_ids(sim)))
            return;
        helping_ = true;
        sim.mark_stage("help");
        const auto sol = sim.solver().solve(detail::known_unserved(sim), sim.trucks(), 0, sim.alpha());
        detail::assign_tours(sim, sol.truck_tours, detail::truck_ids(sim));
    }

private:
    bool helping_ = false;
};

/**
 * Drones explore as in EfhsPolicy. Trucks waiting at the depot leave as soon
 * as known damaged nodes are unserved and not already planned for another
 * truck; the idle trucks share them through a fresh MultiTSP. A truck on the
 * road finishes its tour before it is considered again.
 */
class EfhaPolicy {
public:
    void start(Simulation& sim) {
        if (sim.drones() < 1)
            throw DomainError("explore-first policies need at least one drone");
        const auto sol = sim.solver().solve(sim.customers(), 0, sim.drones(), sim.alpha());
        sim.mark_stage("explore");
        detail::assign_tours(sim, sol.drone_tours, detail::drone_ids(sim));
    }

    void on_event(Simulation& sim, const std::vector<int>&) {
        std::vector<bool> planned(sim.customers().size() + 1, false);
        std::vector<int> idle;
        for (int t = 0; t < sim.trucks(); ++t) {
            if (sim.idle_at_depot(t))
                idle.push_back(t);
            for (NodeId v : sim.remaining_route(t))
                planned[v] = true;
        }
        std::vector<NodeId> pending;
        for (NodeId v : detail::known_unserved(sim))
            if (!planned[v])
                pending.push_back(v);
        if (pending.empty() || idle.empty())
            return;
        sim.mark_stage("dispatch");
        const auto sol = sim.solver().solve(pending, static_cast<int>(idle.size()), 0, sim.alpha());
        detail::assign_tours(sim, sol.truck_tours, idle);
    }
};

template <OnlinePolicy P>
SimulationOutcome simulate_with(const RdpInstance& inst, P& policy, std::string name,
                                std::shared_ptr<const MultiTspSolver> solver = nullptr) {
    if (inst.trucks() < 1)
        throw InfeasibleError("policies need at least one truck");
    Simulation sim(inst, std::move(solver));
    return sim.run(policy, std::move(name));
}

inline SimulationOutcome simulate(const RdpInstance& inst, PolicyKind kind,
                                  std::shared_ptr<const MultiTspSolver> solver = nullptr) {
    const std::string name = to_string(kind);
    switch (kind) {
    case PolicyKind::optimistic: {
        OptimisticPolicy p;
        return simulate_with(inst, p, name, std::move(solver));
    }
    case PolicyKind::regretless: {
        RegretlessPolicy p;
        return simulate_with(inst, p, name, std::move(solver));
    }
    case PolicyKind::truck_only: {
        TruckOnlyPolicy p;
        return simulate_with(inst, p, name, std::move(solver));
    }
    case PolicyKind::efhs: {
        EfhsPolicy p;
        return simulate_with(inst, p, name, std::move(solver));
    }
    case PolicyKind::efha: {
        EfhaPolicy p;
        return simulate_with(inst, p, name, std::move(solver));
    }
    }
    throw DomainError("unknown policy");
}

} // namespace rdp

#endif
