#ifndef RDP_MULTI_TSP_HPP
#define RDP_MULTI_TSP_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "rdp/held_karp.hpp"
#include "rdp/instance.hpp"

namespace rdp {

struct MultiTspSolution {
    std::vector<Tour> truck_tours;
    std::vector<Tour> drone_tours;
    double makespan = 0.0;
};

/**
 * Exact minmax MultiTSP over a mixed fleet.
 *
 * The Held-Karp table and the best closed tour of every subset of the
 * universe are computed once; each solve() then searches all partitions of
 * the target set into at most m truck and n drone subsets. Partitions are
 * explored per role with a subset recursion that fixes the block holding the
 * smallest remaining node, so interchangeable vehicles are never enumerated
 * twice. Within one role, equal makespans prefer the partition with the
 * fewest stops on the busiest vehicle; remaining ties keep the first
 * partition found (truck-heavy splits first, larger blocks first).
 *
 * Partition tables are built lazily per (fleet size, speed) and cached;
 * solve() may be called concurrently.
 */
class MultiTspSolver {
public:
    MultiTspSolver(const MetricClosure& c, std::vector<NodeId> universe, std::size_t cap = kHeldKarpCap)
        : closure_(c), table_(c, std::move(universe), kDepot, cap) {
        const std::size_t subsets = std::size_t{1} << table_.size();
        closed_.resize(subsets);
        end_.resize(subsets);
        for (Mask u = 0; u < subsets; ++u) {
            const auto cl = table_.close(u, c);
            closed_[u] = u == 0 ? 0.0 : cl.length;
            end_[u] = cl.end;
        }
    }

    const HeldKarpTable& table() const { return table_; }
    const MetricClosure& closure() const { return closure_; }

    /// Length of the best closed tour through the nodes of u.
    double closed_length(Mask u) const { return closed_[u]; }

    Tour closed_tour(Mask u) const {
        if (u == 0)
            return Tour{};
        return Tour::from_stops(table_.path(u, static_cast<std::size_t>(end_[u])));
    }

    /// TSP_{m,n}(targets) with every node of `required_truck` on a truck tour.
    MultiTspSolution solve(const std::vector<NodeId>& targets, int m, int n, double alpha,
                           const std::vector<NodeId>& required_truck = {}) const {
        if (m < 0 || n < 0)
            throw DomainError("fleet sizes must be non-negative");
        if (n > 0 && !(alpha > 0.0))
            throw DomainError("alpha must be positive");
        const Mask w = table_.mask_of(targets);
        const Mask req = table_.mask_of(required_truck);
        if ((req & ~w) != 0)
            throw DomainError("required truck nodes must be targets");
        if (req != 0 && m == 0)
            throw InfeasibleError("damaged nodes need a truck but the fleet has none");
        if (w != 0 && m + n == 0)
            throw InfeasibleError("targets present but the fleet is empty");

        const auto truck_table = role_table(m, 1.0);
        const auto drone_table = role_table(n, alpha);
        const RoleTable& trucks = *truck_table;
        const RoleTable& drones = *drone_table;

        // truck part S contains req; drones take the rest
        const Mask free = w & ~req;
        double best = kInf;
        Mask best_s = 0;
        Mask x = free;
        while (true) {
            const Mask s = x | req;
            const double v = std::max(trucks.value(m, s), drones.value(n, w & ~s));
            if (v < best - kTimeEps) {
                best = v;
                best_s = s;
            }
            if (x == 0)
                break;
            x = (x - 1) & free;
        }
        if (best == kInf)
            throw InfeasibleError("no feasible partition");

        MultiTspSolution sol;
        sol.truck_tours = tours_for(trucks.blocks(m, best_s), m);
        sol.drone_tours = tours_for(drones.blocks(n, w & ~best_s), n);
        sol.makespan = 0.0;
        for (const Tour& t : sol.truck_tours)
            sol.makespan = std::max(sol.makespan, tour_time(closure_, t, Role::truck, alpha));
        for (const Tour& t : sol.drone_tours)
            sol.makespan = std::max(sol.makespan, tour_time(closure_, t, Role::drone, alpha));
        return sol;
    }

private:
    // best[k][S]: minmax time covering S with at most k vehicles of one role
    struct RoleTable {
        std::vector<std::vector<double>> best;
        std::vector<std::vector<Mask>> choice; // 0 = one vehicle fewer suffices
        std::vector<std::vector<std::uint8_t>> load; // most stops on one vehicle
        double value(int k, Mask s) const {
            if (k == 0)
                return s == 0 ? 0.0 : kInf;
            return best[static_cast<std::size_t>(k)][s];
        }
        std::vector<Mask> blocks(int k, Mask s) const {
            std::vector<Mask> out;
            while (s != 0 && k > 0) {
                if (k == 1) {
                    out.push_back(s);
                    break;
                }
                const Mask t = choice[static_cast<std::size_t>(k)][s];
                if (t != 0) {
                    out.push_back(t);
                    s &= ~t;
                }
                --k;
            }
            return out;
        }
    };

    double cost(Mask u, double speed) const { return speed == 1.0 ? closed_[u] : closed_[u] / speed; }

    // Tables cover every subset of the universe. An entry only depends on
    // subsets of its own set, so one table serves every target set.
    std::shared_ptr<const RoleTable> role_table(int k, double speed) const {
        std::lock_guard lock(cache_->mutex);
        auto& slot = cache_->tables[{k, speed}];
        if (!slot)
            slot = std::make_shared<const RoleTable>(build_role_table(static_cast<Mask>((std::size_t{1} << table_.size()) - 1), k, speed));
        return slot;
    }

    RoleTable build_role_table(Mask w, int k, double speed) const {
        RoleTable rt;
        if (k == 0)
            return rt;
        const std::size_t subsets = std::size_t{1} << table_.size();
        rt.best.resize(static_cast<std::size_t>(k) + 1);
        rt.choice.resize(static_cast<std::size_t>(k) + 1);
        rt.load.resize(static_cast<std::size_t>(k) + 1);
        auto& one = rt.best[1];
        one.assign(subsets, kInf);
        rt.load[1].assign(subsets, 0);
        for (Mask s = w;; s = (s - 1) & w) {
            one[s] = cost(s, speed);
            rt.load[1][s] = static_cast<std::uint8_t>(std::popcount(s));
            if (s == 0)
                break;
        }
        for (std::size_t level = 2; level <= static_cast<std::size_t>(k); ++level) {
            const auto& prev = rt.best[level - 1];
            auto& cur = rt.best[level];
            auto& pick = rt.choice[level];
            const auto& prev_load = rt.load[level - 1];
            auto& cur_load = rt.load[level];
            cur.assign(subsets, kInf);
            pick.assign(subsets, 0);
            cur_load.assign(subsets, 0);
            for (Mask s = w;; s = (s - 1) & w) {
                double b = prev[s];
                std::uint8_t bl = prev_load[s];
                Mask arg = 0;
                if (s != 0) {
                    const Mask low = s & (~s + 1);
                    const Mask rest = s ^ low;
                    // blocks containing the lowest node, largest first; equal
                    // makespans prefer fewer stops on the busiest vehicle
                    for (Mask sub = rest;; sub = (sub - 1) & rest) {
                        const Mask t = sub | low;
                        if (t != s) {
                            const double c = cost(t, speed);
                            if (c <= b + kTimeEps) {
                                const double v = std::max(c, prev[s ^ t]);
                                const auto l = std::max(static_cast<std::uint8_t>(std::popcount(t)), prev_load[s ^ t]);
                                if (v < b - kTimeEps || (v <= b + kTimeEps && l < bl)) {
                                    b = v;
                                    bl = l;
                                    arg = t;
                                }
                            }
                        }
                        if (sub == 0)
                            break;
                    }
                }
                cur[s] = b;
                pick[s] = arg;
                cur_load[s] = bl;
                if (s == 0)
                    break;
            }
        }
        return rt;
    }

    std::vector<Tour> tours_for(std::vector<Mask> blocks, int count) const {
        // canonical order: by smallest contained node
        std::sort(blocks.begin(), blocks.end(), [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
        std::vector<Tour> tours;
        for (Mask b : blocks)
            tours.push_back(closed_tour(b));
        while (static_cast<int>(tours.size()) < count)
            tours.push_back(Tour{});
        return tours;
    }

    struct Cache {
        std::mutex mutex;
        std::map<std::pair<int, double>, std::shared_ptr<const RoleTable>> tables;
    };

    MetricClosure closure_;
    HeldKarpTable table_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    std::vector<double> closed_;
    std::vector<int> end_;
};

inline nlohmann::json to_json(const MultiTspSolution& sol) {
    auto tours = [](const std::vector<Tour>& ts) {
        auto a = nlohmann::json::array();
        for (const Tour& t : ts)
            a.push_back(t.nodes);
        return a;
    };
    return {{"makespan", sol.makespan}, {"truck_tours", tours(sol.truck_tours)}, {"drone_tours", tours(sol.drone_tours)}};
}

inline MultiTspSolution multi_tsp(const MetricClosure& c, const std::vector<NodeId>& targets, int m, int n,
                                  double alpha) {
    return MultiTspSolver(c, targets).solve(targets, m, n, alpha);
}

/// Full-information optimum OPT(I*): damaged nodes must lie on truck tours.
inline MultiTspSolution rdp_star_opt(const RdpInstance& inst) {
    if (!inst.damaged().empty() && inst.trucks() == 0)
        throw InfeasibleError("damaged nodes need a truck but the fleet has none");
    return MultiTspSolver(inst.closure(), inst.customers())
        .solve(inst.customers(), inst.trucks(), inst.drones(), inst.alpha(), inst.damaged());
}

} // namespace rdp

#endif
