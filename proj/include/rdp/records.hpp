#ifndef RDP_RECORDS_HPP
#define RDP_RECORDS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "rdp/dataset.hpp"
#include "rdp/policies.hpp"

namespace rdp {

/// One (instance, policy) result row.
struct RatioRecord {
    std::string instance_id;
    std::string graph_class;
    std::size_t n = 0; ///< node count including the depot
    double delta = 0.0;
    double alpha = 1.0;
    int trucks = 1;
    int drones = 0;
    std::string policy;
    double makespan = 0.0;
    double opt_star = 0.0;
    double truck_only_opt = 0.0;
    double competitive_ratio = 0.0;
    double drone_impact_ratio = 0.0;
    friend bool operator==(const RatioRecord&, const RatioRecord&) = default;
};

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

inline double parse_double(const std::string& s) {
    double x = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw Error("not a number: '" + s + "'");
    return x;
}

inline long long parse_integer(const std::string& s) {
    long long x = 0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), x);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw Error("not an integer: '" + s + "'");
    return x;
}

inline const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols{
        "instance_id", "graph_class", "n",        "delta",          "alpha",
        "trucks",      "drones",      "policy",   "makespan",       "opt_star",
        "truck_only_opt", "competitive_ratio", "drone_impact_ratio"};
    return cols;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        out.push_back(cell);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

inline void write_records_csv(std::ostream& os, const std::vector<RatioRecord>& rs) {
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i)
        os << (i ? "," : "") << cols[i];
    os << '\n';
    for (const auto& r : rs)
        os << r.instance_id << ',' << r.graph_class << ',' << r.n << ',' << format_double(r.delta) << ','
           << format_double(r.alpha) << ',' << r.trucks << ',' << r.drones << ',' << r.policy << ','
           << format_double(r.makespan) << ',' << format_double(r.opt_star) << ','
           << format_double(r.truck_only_opt) << ',' << format_double(r.competitive_ratio) << ','
           << format_double(r.drone_impact_ratio) << '\n';
}

inline std::vector<RatioRecord> read_records_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line))
        throw Error("empty records file");
    if (split_csv_line(line) != record_columns())
        throw Error("unexpected records header: " + line);
    std::vector<RatioRecord> out;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty())
            continue;
        const auto c = split_csv_line(line);
        if (c.size() != record_columns().size())
            throw Error("row " + std::to_string(row) + " has " + std::to_string(c.size()) + " columns");
        RatioRecord r;
        r.instance_id = c[0];
        r.graph_class = c[1];
        r.n = static_cast<std::size_t>(parse_integer(c[2]));
        r.delta = parse_double(c[3]);
        r.alpha = parse_double(c[4]);
        r.trucks = static_cast<int>(parse_integer(c[5]));
        r.drones = static_cast<int>(parse_integer(c[6]));
        r.policy = c[7];
        r.makespan = parse_double(c[8]);
        r.opt_star = parse_double(c[9]);
        r.truck_only_opt = parse_double(c[10]);
        r.competitive_ratio = parse_double(c[11]);
        r.drone_impact_ratio = parse_double(c[12]);
        out.push_back(std::move(r));
    }
    return out;
}

/// Optional checks run next to the evaluation; each failure is one message.
struct EvaluationChecks {
    bool enabled = false;
    std::vector<std::string> problems;
};

/// Invariants every outcome must satisfy, given the instance optima.
inline std::vector<std::string> outcome_problems(const RdpInstance& inst, PolicyKind kind,
                                                 const SimulationOutcome& out, const MultiTspSolver& solver) {
    auto problems = check_outcome(inst, out);
    const int kt = inst.trucks(), kd = inst.drones();
    const double a = inst.alpha();
    const double joint = solver.solve(inst.customers(), kt, kd, a).makespan;
    const double trucks = solver.solve(inst.customers(), kt, 0, a).makespan;
    const double damage = solver.solve(inst.damaged(), kt, 0, a).makespan;
    if (out.makespan < std::max(joint, damage) - kTimeEps)
        problems.push_back("makespan below max{TSP(C) mixed fleet, TSP(D) trucks}");
    if (kind == PolicyKind::regretless && out.makespan > trucks + kTimeEps)
        problems.push_back("Regretless exceeds the truck-only optimum");
    if (kind == PolicyKind::optimistic) {
        const double stage2 = out.stage_time("stage2");
        std::vector<bool> by_truck(inst.node_count(), false);
        for (std::size_t v = 0; v < static_cast<std::size_t>(kt); ++v)
            for (const auto& s : out.vehicles[v].stops)
                if (s.time <= stage2 + kTimeEps)
                    by_truck[s.node] = true;
        std::vector<NodeId> missed;
        for (NodeId v : inst.damaged())
            if (!by_truck[v])
                missed.push_back(v);
        const double predicted = joint + solver.solve(missed, kt, 0, a).makespan;
        if (std::abs(out.makespan - predicted) > 1e-9 * std::max(1.0, predicted))
            problems.push_back("Optimistic makespan differs from stage-1 optimum plus stage-2 optimum");
    }
    return problems;
}

/// Runs every policy on the instance; optima are computed once and shared.
inline std::vector<RatioRecord> evaluate(const LabeledInstance& li, const std::vector<PolicyKind>& policies,
                                         EvaluationChecks* checks = nullptr) {
    const auto& inst = li.instance;
    const auto solver = std::make_shared<const MultiTspSolver>(inst.closure(), inst.customers());
    const double opt = solver->solve(inst.customers(), inst.trucks(), inst.drones(), inst.alpha(), inst.damaged())
                           .makespan;
    const double truck_only = solver->solve(inst.customers(), inst.trucks(), 0, inst.alpha()).makespan;
    std::vector<RatioRecord> out;
    for (PolicyKind p : policies) {
        if ((p == PolicyKind::efhs || p == PolicyKind::efha) && inst.drones() < 1)
            continue;
        const auto sim = simulate(inst, p, solver);
        if (checks && checks->enabled)
            for (const auto& msg : outcome_problems(inst, p, sim, *solver))
                checks->problems.push_back(li.id + " " + to_string(p) + ": " + msg);
        RatioRecord r;
        r.instance_id = li.id;
        r.graph_class = to_string(li.graph_class);
        r.n = inst.node_count();
        r.delta = li.delta;
        r.alpha = inst.alpha();
        r.trucks = inst.trucks();
        r.drones = inst.drones();
        r.policy = to_string(p);
        r.makespan = sim.makespan;
        r.opt_star = opt;
        r.truck_only_opt = truck_only;
        r.competitive_ratio = sim.makespan / opt;
        r.drone_impact_ratio = sim.makespan / truck_only;
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace rdp

#endif
