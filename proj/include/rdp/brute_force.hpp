#ifndef RDP_BRUTE_FORCE_HPP
#define RDP_BRUTE_FORCE_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "rdp/graph.hpp"

namespace rdp {

inline constexpr std::size_t kBruteForceCap = 7;

/**
 * Reference optimum for small target sets. Tries every assignment of targets
 * to the m+n vehicles and every visiting order inside each vehicle. Shares no
 * code with the Held-Karp solver.
 */
inline double brute_force_multi_tsp(const MetricClosure& c, std::vector<NodeId> targets, int m, int n, double alpha,
                                    const std::vector<NodeId>& required_truck = {}) {
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    const std::size_t k = targets.size();
    if (k > kBruteForceCap)
        throw SizeError("brute force limited to " + std::to_string(kBruteForceCap) + " targets, got " +
                        std::to_string(k));
    if (k == 0)
        return 0.0;
    const int vehicles = m + n;
    if (vehicles == 0)
        throw InfeasibleError("targets present but the fleet is empty");

    std::vector<bool> required(k, false);
    for (NodeId r : required_truck) {
        auto it = std::find(targets.begin(), targets.end(), r);
        if (it == targets.end())
            throw DomainError("required truck node is not a target");
        required[static_cast<std::size_t>(it - targets.begin())] = true;
    }

    // cheapest closed tour over each subset, by trying all orders
    std::vector<double> subset_len(std::size_t{1} << k, 0.0);
    for (std::size_t s = 1; s < subset_len.size(); ++s) {
        std::vector<NodeId> order;
        for (std::size_t i = 0; i < k; ++i)
            if (s >> i & 1u)
                order.push_back(targets[i]);
        double best = kInf;
        do {
            double len = c(kDepot, order.front()) + c(order.back(), kDepot);
            for (std::size_t i = 1; i < order.size(); ++i)
                len += c(order[i - 1], order[i]);
            best = std::min(best, len);
        } while (std::next_permutation(order.begin(), order.end()));
        subset_len[s] = best;
    }

    double best = kInf;
    std::vector<int> owner(k, 0);
    std::vector<std::size_t> load(static_cast<std::size_t>(vehicles));
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i)
            if (required[i] && owner[i] >= m)
                ok = false;
        if (ok) {
            std::fill(load.begin(), load.end(), 0);
            for (std::size_t i = 0; i < k; ++i)
                load[static_cast<std::size_t>(owner[i])] |= std::size_t{1} << i;
            double span = 0.0;
            for (int v = 0; v < vehicles; ++v) {
                const double len = subset_len[load[static_cast<std::size_t>(v)]];
                span = std::max(span, v < m ? len : len / alpha);
            }
            best = std::min(best, span);
        }
        std::size_t pos = 0;
        while (pos < k && ++owner[pos] == vehicles)
            owner[pos++] = 0;
        if (pos == k)
            break;
    }
    if (best == kInf)
        throw InfeasibleError("no feasible assignment");
    return best;
}

} // namespace rdp

#endif
