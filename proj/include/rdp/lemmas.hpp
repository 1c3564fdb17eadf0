#ifndef RDP_LEMMAS_HPP
#define RDP_LEMMAS_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rdp/policies.hpp"

namespace rdp {

/// Analytic instance families with known policy and optimum values.
enum class LemmaFamily {
    best_case_two_level,     ///< two-level star, no damage: drones give the largest speed-up
    worst_impact_fast,       ///< alpha > 1, everything damaged, drones explore first
    worst_impact_slow,       ///< alpha <= 1, proximate/far-away nodes, everything damaged
    regretless_all_damaged,  ///< everything damaged: Regretless equals truck-only
    optimistic_equal_speed,  ///< alpha = 1 star, one drone-visited node damaged
    optimistic_mixed_speed,  ///< alpha != 1 proximate/medium/far graph, one proximate node damaged
    optimistic_slow_dense,   ///< alpha < 1 star with alpha * ceil(kd/kt) >= 1
    optimistic_slow_sparse,  ///< star with alpha * ceil(kd/kt) < 1
    regretless_equal_speed,  ///< alpha = 1 star, a full tour damaged but its first node
    regretless_slow,         ///< alpha = 1/b star, a full tour damaged but its first node
    regretless_fast,         ///< integer alpha star, a full tour damaged but its first node
    online_slow,             ///< 1/alpha integer star, drone-visited nodes damaged
    explore_first,           ///< integer alpha, one truck and drone, drone's last node damaged
};

inline const std::vector<std::pair<LemmaFamily, const char*>>& lemma_family_names() {
    static const std::vector<std::pair<LemmaFamily, const char*>> names{
        {LemmaFamily::best_case_two_level, "best_case_two_level"},
        {LemmaFamily::worst_impact_fast, "worst_impact_fast"},
        {LemmaFamily::worst_impact_slow, "worst_impact_slow"},
        {LemmaFamily::regretless_all_damaged, "regretless_all_damaged"},
        {LemmaFamily::optimistic_equal_speed, "optimistic_equal_speed"},
        {LemmaFamily::optimistic_mixed_speed, "optimistic_mixed_speed"},
        {LemmaFamily::optimistic_slow_dense, "optimistic_slow_dense"},
        {LemmaFamily::optimistic_slow_sparse, "optimistic_slow_sparse"},
        {LemmaFamily::regretless_equal_speed, "regretless_equal_speed"},
        {LemmaFamily::regretless_slow, "regretless_slow"},
        {LemmaFamily::regretless_fast, "regretless_fast"},
        {LemmaFamily::online_slow, "online_slow"},
        {LemmaFamily::explore_first, "explore_first"},
    };
    return names;
}

inline const char* to_string(LemmaFamily f) {
    for (const auto& [k, n] : lemma_family_names())
        if (k == f)
            return n;
    return "?";
}

inline LemmaFamily lemma_family_from_string(const std::string& s) {
    std::string known;
    for (const auto& [k, n] : lemma_family_names()) {
        if (s == n)
            return k;
        known += known.empty() ? n : std::string(", ") + n;
    }
    throw DomainError("unknown lemma family '" + s + "' (" + known + ")");
}

inline std::vector<LemmaFamily> all_lemma_families() {
    std::vector<LemmaFamily> out;
    for (const auto& [k, n] : lemma_family_names())
        out.push_back(k);
    return out;
}

struct LemmaParams {
    double alpha = 1.0;
    int trucks = 1;
    int drones = 1;
    double epsilon = 1e-3;           ///< worst_impact_slow detour slack
    std::optional<double> period;    ///< optimistic_mixed_speed round-trip time, default 2 max(1, alpha)
    PolicyKind target = PolicyKind::optimistic; ///< policy attacked by online_slow
};

enum class Quantity { makespan, opt, truck_only, ratio, drone_impact };

inline const char* to_string(Quantity q) {
    switch (q) {
    case Quantity::makespan: return "makespan";
    case Quantity::opt: return "opt";
    case Quantity::truck_only: return "truck_only";
    case Quantity::ratio: return "ratio";
    case Quantity::drone_impact: return "drone_impact";
    }
    return "?";
}

/// A predicted value: exact, or a lower bound.
struct LemmaClaim {
    PolicyKind policy;
    Quantity quantity;
    double value;
    bool at_least = false;
};

struct LemmaInstance {
    LemmaFamily family;
    LemmaParams params;
    RdpInstance instance;
    std::vector<LemmaClaim> claims;
};

struct ClaimCheck {
    LemmaClaim claim;
    double observed;
    bool ok;
};

namespace detail {

inline bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 && x > 0.5; }

inline int ceil_div(int a, int b) { return (a + b - 1) / b; }

inline void require(bool ok, LemmaFamily f, const std::string& condition) {
    if (!ok)
        throw DomainError(std::string(to_string(f)) + " requires " + condition);
}

/// Nodes visited by drones when the policy runs without damage, in visit order.
inline std::vector<NodeId> drone_visits(const RdpInstance& clean, PolicyKind policy) {
    const auto out = simulate(clean, policy);
    std::vector<TimedStop> stops;
    for (std::size_t v = static_cast<std::size_t>(clean.trucks()); v < out.vehicles.size(); ++v)
        for (const auto& s : out.vehicles[v].stops)
            if (s.node != kDepot)
                stops.push_back(s);
    std::stable_sort(stops.begin(), stops.end(), [](const TimedStop& a, const TimedStop& b) {
        return a.time < b.time - kTimeEps || (std::abs(a.time - b.time) <= kTimeEps && a.node < b.node);
    });
    std::vector<NodeId> nodes;
    for (const auto& s : stops)
        if (std::find(nodes.begin(), nodes.end(), s.node) == nodes.end())
            nodes.push_back(s.node);
    if (nodes.empty())
        throw Error(std::string("drones of ") + to_string(policy) + " visit no node");
    return nodes;
}

/// Among the longest Regretless tours, damages all nodes but the first one of
/// the tour whose damage hurts most.
inline RdpInstance damage_regretless_tour(const RdpInstance& clean) {
    RegretlessPolicy plan;
    simulate_with(clean, plan, "regretless");
    std::size_t longest = 0;
    for (const auto& t : plan.tours())
        longest = std::max(longest, t.size());
    std::optional<RdpInstance> worst;
    double worst_span = -1.0;
    for (const auto& t : plan.tours()) {
        if (t.size() != longest || t.empty())
            continue;
        std::vector<NodeId> d(t.begin() + 1, t.end());
        auto inst = clean.with(clean.trucks(), clean.drones(), clean.alpha(), d);
        const double span = simulate(inst, PolicyKind::regretless).makespan;
        if (span > worst_span + kTimeEps) {
            worst_span = span;
            worst = std::move(inst);
        }
    }
    if (!worst)
        throw Error("no Regretless tour to damage");
    return *worst;
}

} // namespace detail

/**
 * Builds an instance of the family together with its predicted values.
 * Families whose damage depends on the policy run that policy on the
 * undamaged graph first and place the damage on the nodes it exposes.
 */
inline LemmaInstance make_lemma_instance(LemmaFamily f, const LemmaParams& p) {
    const double a = p.alpha;
    const int kt = p.trucks, kd = p.drones;
    detail::require(a > 0.0 && std::isfinite(a), f, "alpha > 0");
    detail::require(kt >= 1, f, "at least one truck");
    detail::require(kd >= 1, f, "at least one drone");
    const int per_truck = detail::ceil_div(kd, kt);
    LemmaInstance li{f, p, RdpInstance(make_star(1, 1.0), kt, kd, a, {}), {}};
    auto claim = [&](PolicyKind pk, Quantity q, double v, bool at_least = false) {
        li.claims.push_back({pk, q, v, at_least});
    };
    auto star_instance = [&](std::size_t n) { return RdpInstance(make_star(n, 1.0), kt, kd, a, {}); };

    switch (f) {
    case LemmaFamily::best_case_two_level: {
        const auto s = make_two_level_star(static_cast<std::size_t>(kt * kt), static_cast<std::size_t>(kt * kd), 1.0, a);
        li.instance = RdpInstance(s.graph, kt, kd, a, {});
        const double truck_only = 2.0 * kt + 2.0 * a * kd;
        claim(PolicyKind::optimistic, Quantity::opt, 2.0 * kt);
        claim(PolicyKind::optimistic, Quantity::makespan, 2.0 * kt);
        claim(PolicyKind::optimistic, Quantity::truck_only, truck_only);
        claim(PolicyKind::optimistic, Quantity::drone_impact, 1.0 / (1.0 + a * kd / kt));
        if (kd % kt == 0) {
            claim(PolicyKind::regretless, Quantity::makespan, 2.0 * kt);
            claim(PolicyKind::regretless, Quantity::drone_impact, 1.0 / (1.0 + a * kd / kt));
        }
        break;
    }
    case LemmaFamily::worst_impact_fast: {
        detail::require(a > 1.0, f, "alpha > 1");
        const auto n = static_cast<std::size_t>(std::min(kt, kd));
        const auto g = make_star(n, 1.0);
        li.instance = RdpInstance(g, kt, kd, a, g.customers());
        claim(PolicyKind::optimistic, Quantity::makespan, 2.0 / a + 2.0);
        claim(PolicyKind::optimistic, Quantity::truck_only, 2.0);
        claim(PolicyKind::optimistic, Quantity::drone_impact, 1.0 + 1.0 / a);
        break;
    }
    case LemmaFamily::worst_impact_slow: {
        detail::require(a <= 1.0, f, "alpha <= 1");
        detail::require(p.epsilon > 0.0 && 1.0 - a + 2.0 * p.epsilon > 0.0, f, "epsilon > 0");
        // proximate nodes 1..kt at 1, far-away nodes at alpha, each paired with one proximate node
        const int nf = std::min(kt, kd);
        WeightedGraph g(static_cast<std::size_t>(kt + nf + 1));
        for (int i = 1; i <= kt; ++i)
            g.add_edge(kDepot, static_cast<NodeId>(i), 1.0);
        for (int j = 1; j <= nf; ++j) {
            const auto far = static_cast<NodeId>(kt + j);
            g.add_edge(kDepot, far, a);
            g.add_edge(static_cast<NodeId>(j), far, 1.0 - a + 2.0 * p.epsilon);
        }
        li.instance = RdpInstance(g, kt, kd, a, g.customers());
        claim(PolicyKind::optimistic, Quantity::makespan, 2.0 + 2.0 * a);
        claim(PolicyKind::optimistic, Quantity::truck_only, 2.0 + 2.0 * p.epsilon);
        claim(PolicyKind::optimistic, Quantity::drone_impact, (1.0 + a) / (1.0 + p.epsilon));
        break;
    }
    case LemmaFamily::regretless_all_damaged: {
        const auto g = make_star(static_cast<std::size_t>(kt + kd), 1.0);
        li.instance = RdpInstance(g, kt, kd, a, g.customers());
        const double truck_only = 2.0 * detail::ceil_div(kt + kd, kt);
        claim(PolicyKind::regretless, Quantity::makespan, truck_only);
        claim(PolicyKind::regretless, Quantity::truck_only, truck_only);
        claim(PolicyKind::regretless, Quantity::drone_impact, 1.0);
        break;
    }
    case LemmaFamily::optimistic_equal_speed: {
        detail::require(a == 1.0, f, "alpha = 1");
        const auto clean = star_instance(static_cast<std::size_t>(kt + kd));
        const auto seen = detail::drone_visits(clean, PolicyKind::optimistic);
        li.instance = clean.with(kt, kd, a, {seen.front()});
        claim(PolicyKind::optimistic, Quantity::makespan, 4.0);
        claim(PolicyKind::optimistic, Quantity::opt, 2.0);
        claim(PolicyKind::optimistic, Quantity::ratio, 2.0);
        break;
    }
    case LemmaFamily::optimistic_mixed_speed: {
        detail::require(a != 1.0, f, "alpha != 1");
        const double period = p.period.value_or(2.0 * std::max(1.0, a));
        detail::require(period > 0.0, f, "a positive period");
        const bool drones_fast = a > 1.0;
        const int k_fast = drones_fast ? kd : kt, k_slow = drones_fast ? kt : kd;
        const int k_min = std::min(k_fast, k_slow);
        const double s_slow = drones_fast ? 1.0 : a, s_fast = drones_fast ? a : 1.0;
        const double ts = period * s_slow, tf = period * s_fast;
        // medium nodes: round trip too long for a slow vehicle, p-m detour exactly one period for a
        // fast one, and p-m-p' longer than a period
        const double to_medium = (std::max(ts / 2.0, (tf - ts) / 2.0) + tf / 2.0) / 2.0;
        const double medium_link = tf - ts / 2.0 - to_medium;
        const int np = k_slow + k_min, nm = k_min, nf = k_fast - k_min;
        WeightedGraph g(static_cast<std::size_t>(np + nm + nf + 1));
        for (int i = 1; i <= np; ++i)
            g.add_edge(kDepot, static_cast<NodeId>(i), ts / 2.0);
        for (int j = 0; j < nm; ++j) {
            const auto m = static_cast<NodeId>(np + 1 + j);
            g.add_edge(kDepot, m, to_medium);
            g.add_edge(m, static_cast<NodeId>(1 + 2 * j), medium_link);
            g.add_edge(m, static_cast<NodeId>(2 + 2 * j), medium_link);
        }
        for (int j = 0; j < nf; ++j)
            g.add_edge(kDepot, static_cast<NodeId>(np + nm + 1 + j), tf / 2.0);
        const RdpInstance clean(g, kt, kd, a, {});
        NodeId hit = kDepot;
        for (NodeId v : detail::drone_visits(clean, PolicyKind::optimistic))
            if (v <= static_cast<NodeId>(2 * nm)) { // proximate and linked to a medium node
                hit = v;
                break;
            }
        if (hit == kDepot)
            throw Error("optimistic_mixed_speed: no drone visits a linked proximate node");
        li.instance = clean.with(kt, kd, a, {hit});
        claim(PolicyKind::optimistic, Quantity::opt, period);
        claim(PolicyKind::optimistic, Quantity::makespan, period + ts);
        claim(PolicyKind::optimistic, Quantity::ratio, std::min(2.0, 1.0 + a));
        break;
    }
    case LemmaFamily::optimistic_slow_dense: {
        detail::require(a < 1.0 && a * per_truck >= 1.0, f, "alpha < 1 and alpha * ceil(kd/kt) >= 1");
        const int c = static_cast<int>(std::ceil(1.0 / a - 1e-9));
        const auto clean = star_instance(static_cast<std::size_t>(kd + c * kt));
        auto seen = detail::drone_visits(clean, PolicyKind::optimistic);
        seen.resize(std::min(seen.size(), static_cast<std::size_t>(std::min(kd, c * kt))));
        li.instance = clean.with(kt, kd, a, seen);
        claim(PolicyKind::optimistic, Quantity::opt, 2.0 * c);
        claim(PolicyKind::optimistic, Quantity::makespan, 4.0 * c);
        claim(PolicyKind::optimistic, Quantity::ratio, 2.0);
        break;
    }
    case LemmaFamily::optimistic_slow_sparse: {
        detail::require(a * per_truck < 1.0, f, "alpha * ceil(kd/kt) < 1");
        const int c = static_cast<int>(std::floor(1.0 / a + 1e-9));
        const auto clean = star_instance(static_cast<std::size_t>(kd + c * kt));
        auto seen = detail::drone_visits(clean, PolicyKind::optimistic);
        seen.resize(std::min(seen.size(), static_cast<std::size_t>(std::min(kd, c * kt))));
        li.instance = clean.with(kt, kd, a, seen);
        claim(PolicyKind::optimistic, Quantity::opt, 2.0 / a);
        claim(PolicyKind::optimistic, Quantity::makespan, 2.0 / a + 2.0 * per_truck);
        claim(PolicyKind::optimistic, Quantity::ratio, 1.0 + a * per_truck);
        break;
    }
    case LemmaFamily::regretless_equal_speed: {
        detail::require(a == 1.0 && kt >= per_truck, f, "alpha = 1 and kt >= ceil(kd/kt)");
        li.instance = detail::damage_regretless_tour(star_instance(static_cast<std::size_t>(kt + kd)));
        claim(PolicyKind::regretless, Quantity::opt, 2.0);
        claim(PolicyKind::regretless, Quantity::makespan, 2.0 * (1 + per_truck));
        claim(PolicyKind::regretless, Quantity::ratio, 1.0 + per_truck);
        break;
    }
    case LemmaFamily::regretless_slow: {
        detail::require(a < 1.0 && detail::is_integer(1.0 / a), f, "1/alpha integer");
        const int b = static_cast<int>(std::round(1.0 / a));
        detail::require(kt >= per_truck + b - 1, f, "kt >= ceil(kd/kt) + 1/alpha - 1");
        li.instance = detail::damage_regretless_tour(star_instance(static_cast<std::size_t>(b * kt + kd)));
        claim(PolicyKind::regretless, Quantity::opt, 2.0 * b);
        claim(PolicyKind::regretless, Quantity::makespan, 2.0 * (b + per_truck));
        claim(PolicyKind::regretless, Quantity::ratio, 1.0 + a * per_truck);
        break;
    }
    case LemmaFamily::regretless_fast: {
        detail::require(a >= 1.0 && detail::is_integer(a), f, "integer alpha");
        const int ai = static_cast<int>(std::round(a));
        const int share = detail::ceil_div(ai * kd, kt);
        detail::require(kt >= share, f, "kt >= ceil(alpha kd / kt)");
        li.instance = detail::damage_regretless_tour(star_instance(static_cast<std::size_t>(kt + ai * kd)));
        claim(PolicyKind::regretless, Quantity::opt, 2.0);
        claim(PolicyKind::regretless, Quantity::makespan, 2.0 * (1 + share));
        claim(PolicyKind::regretless, Quantity::ratio, 1.0 + share);
        break;
    }
    case LemmaFamily::online_slow: {
        detail::require(a <= 1.0 && detail::is_integer(1.0 / a), f, "1/alpha integer");
        const int b = static_cast<int>(std::round(1.0 / a));
        const auto clean = star_instance(static_cast<std::size_t>(kd + b * kt));
        auto seen = detail::drone_visits(clean, p.target);
        seen.resize(std::min(seen.size(), static_cast<std::size_t>(b * kt)));
        li.instance = clean.with(kt, kd, a, seen);
        claim(p.target, Quantity::opt, 2.0 * b);
        claim(p.target, Quantity::ratio, std::min(2.0, 1.0 + a * per_truck), true);
        break;
    }
    case LemmaFamily::explore_first: {
        detail::require(kt == 1 && kd == 1 && detail::is_integer(a), f, "one truck, one drone and integer alpha");
        const auto clean = star_instance(static_cast<std::size_t>(std::round(a)) + 1);
        const auto seen = detail::drone_visits(clean, PolicyKind::efhs);
        li.instance = clean.with(kt, kd, a, {seen.back()});
        claim(PolicyKind::efhs, Quantity::opt, 2.0);
        claim(PolicyKind::efhs, Quantity::makespan, 2.0 * (a + 1.0) / a + 2.0);
        claim(PolicyKind::efhs, Quantity::ratio, 2.0 + 1.0 / (2.0 * a), true);
        claim(PolicyKind::efha, Quantity::makespan, (2.0 * a + 1.0) / a + 2.0);
        claim(PolicyKind::efha, Quantity::ratio, 2.0 + 1.0 / (2.0 * a), true);
        break;
    }
    }
    nlohmann::json meta{{"family", to_string(f)}, {"alpha", a}, {"trucks", kt}, {"drones", kd}};
    auto claims = nlohmann::json::array();
    for (const auto& c : li.claims)
        claims.push_back({{"policy", to_string(c.policy)},
                          {"quantity", to_string(c.quantity)},
                          {"value", c.value},
                          {"relation", c.at_least ? ">=" : "=="}});
    meta["claims"] = std::move(claims);
    li.instance = RdpInstance(li.instance.graph(), kt, kd, a, li.instance.damaged(), std::move(meta));
    return li;
}

/// Simulates and solves the instance and compares every claim within 1e-9.
inline std::vector<ClaimCheck> check_lemma(const LemmaInstance& li) {
    const auto& inst = li.instance;
    const auto solver = std::make_shared<const MultiTspSolver>(inst.closure(), inst.customers());
    std::optional<double> opt, truck_only;
    auto get_opt = [&] {
        if (!opt)
            opt = solver->solve(inst.customers(), inst.trucks(), inst.drones(), inst.alpha(), inst.damaged()).makespan;
        return *opt;
    };
    auto get_truck_only = [&] {
        if (!truck_only)
            truck_only = solver->solve(inst.customers(), inst.trucks(), 0, inst.alpha()).makespan;
        return *truck_only;
    };
    std::vector<std::pair<PolicyKind, double>> spans;
    auto span = [&](PolicyKind pk) {
        for (const auto& [k, v] : spans)
            if (k == pk)
                return v;
        const double v = simulate(inst, pk, solver).makespan;
        spans.emplace_back(pk, v);
        return v;
    };
    std::vector<ClaimCheck> out;
    for (const auto& c : li.claims) {
        double seen = 0.0;
        switch (c.quantity) {
        case Quantity::makespan: seen = span(c.policy); break;
        case Quantity::opt: seen = get_opt(); break;
        case Quantity::truck_only: seen = get_truck_only(); break;
        case Quantity::ratio: seen = span(c.policy) / get_opt(); break;
        case Quantity::drone_impact: seen = span(c.policy) / get_truck_only(); break;
        }
        const bool ok = c.at_least ? seen >= c.value - 1e-9 : std::abs(seen - c.value) <= 1e-9;
        out.push_back({c, seen, ok});
    }
    return out;
}

/// Parameter grid over which the families are checked.
inline std::vector<LemmaParams> lemma_grid() {
    std::vector<LemmaParams> grid;
    for (double a : {1.0 / 3.0, 0.5, 1.0, 2.0, 3.0})
        for (int kt = 1; kt <= 3; ++kt)
            for (int kd = 1; kd <= 3; ++kd) {
                LemmaParams p;
                p.alpha = a;
                p.trucks = kt;
                p.drones = kd;
                grid.push_back(p);
            }
    return grid;
}

} // namespace rdp

#endif
