#ifndef RDP_STATS_HPP
#define RDP_STATS_HPP

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rdp/records.hpp"

namespace rdp {

/// Five-number summary plus Tukey whiskers and outliers.
struct BoxStats {
    std::size_t count = 0;
    double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
    double lo_whisker = 0.0, hi_whisker = 0.0;
    std::vector<double> outliers;
};

inline const char* quartile_convention() {
    return "quartiles are medians of the lower and upper halves, excluding the overall median when the count is "
           "odd; whiskers reach the most extreme values within 1.5 IQR of the quartiles";
}

namespace detail {
inline double median_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    const std::size_t m = hi - lo;
    const std::size_t mid = lo + m / 2;
    return m % 2 == 1 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}
} // namespace detail

inline BoxStats summarize(std::vector<double> values) {
    if (values.empty())
        throw DomainError("cannot summarize an empty sample");
    std::sort(values.begin(), values.end());
    BoxStats b;
    const std::size_t n = values.size();
    b.count = n;
    b.min = values.front();
    b.max = values.back();
    b.median = detail::median_of(values, 0, n);
    if (n == 1) {
        b.q25 = b.q75 = b.median;
    } else {
        const std::size_t half = n / 2;
        b.q25 = detail::median_of(values, 0, half);
        b.q75 = detail::median_of(values, n - half, n);
    }
    const double iqr = b.q75 - b.q25;
    const double lo_fence = b.q25 - 1.5 * iqr, hi_fence = b.q75 + 1.5 * iqr;
    b.lo_whisker = b.q25;
    b.hi_whisker = b.q75;
    for (double x : values) {
        if (x < lo_fence || x > hi_fence) {
            b.outliers.push_back(x);
            continue;
        }
        b.lo_whisker = std::min(b.lo_whisker, x);
        b.hi_whisker = std::max(b.hi_whisker, x);
    }
    return b;
}

using RecordKey = std::function<std::string(const RatioRecord&)>;
using RecordValue = std::function<double(const RatioRecord&)>;

struct GroupSummary {
    std::vector<std::string> key;
    BoxStats stats;
};

/// Groups records by the given keys and summarizes one value per group.
/// Groups appear in order of first occurrence.
inline std::vector<GroupSummary> aggregate(const std::vector<RatioRecord>& rs, const std::vector<RecordKey>& keys,
                                           const RecordValue& value) {
    std::vector<std::vector<std::string>> order;
    std::map<std::vector<std::string>, std::vector<double>> groups;
    for (const auto& r : rs) {
        std::vector<std::string> k;
        for (const auto& f : keys)
            k.push_back(f(r));
        auto [it, fresh] = groups.try_emplace(k);
        if (fresh)
            order.push_back(k);
        it->second.push_back(value(r));
    }
    std::vector<GroupSummary> out;
    for (const auto& k : order)
        out.push_back({k, summarize(groups[k])});
    return out;
}

/// Column names and key functions for group-by names: alpha, policy, class,
/// delta, n, fleet (fleet expands to trucks and drones).
inline std::pair<std::vector<std::string>, std::vector<RecordKey>> group_keys(const std::vector<std::string>& names) {
    std::vector<std::string> cols;
    std::vector<RecordKey> keys;
    for (const auto& n : names) {
        if (n == "alpha") {
            cols.push_back("alpha");
            keys.push_back([](const RatioRecord& r) { return format_double(r.alpha); });
        } else if (n == "policy") {
            cols.push_back("policy");
            keys.push_back([](const RatioRecord& r) { return r.policy; });
        } else if (n == "class") {
            cols.push_back("graph_class");
            keys.push_back([](const RatioRecord& r) { return r.graph_class; });
        } else if (n == "delta") {
            cols.push_back("delta");
            keys.push_back([](const RatioRecord& r) { return format_double(r.delta); });
        } else if (n == "n") {
            cols.push_back("n");
            keys.push_back([](const RatioRecord& r) { return std::to_string(r.n); });
        } else if (n == "fleet") {
            cols.push_back("trucks");
            keys.push_back([](const RatioRecord& r) { return std::to_string(r.trucks); });
            cols.push_back("drones");
            keys.push_back([](const RatioRecord& r) { return std::to_string(r.drones); });
        } else {
            throw DomainError("unknown group key '" + n + "' (alpha, policy, class, delta, n, fleet)");
        }
    }
    return {cols, keys};
}

inline RecordValue record_value(const std::string& name) {
    if (name == "competitive_ratio")
        return [](const RatioRecord& r) { return r.competitive_ratio; };
    if (name == "drone_impact_ratio")
        return [](const RatioRecord& r) { return r.drone_impact_ratio; };
    if (name == "makespan")
        return [](const RatioRecord& r) { return r.makespan; };
    throw DomainError("unknown value column '" + name + "' (competitive_ratio, drone_impact_ratio, makespan)");
}

inline void write_summary_csv(std::ostream& os, const std::vector<std::string>& key_names,
                              const std::vector<GroupSummary>& groups) {
    os << "# " << quartile_convention() << '\n';
    for (const auto& k : key_names)
        os << k << ',';
    os << "min,q25,median,q75,max,lo_whisker,hi_whisker,outliers\n";
    for (const auto& g : groups) {
        for (const auto& k : g.key)
            os << k << ',';
        const auto& s = g.stats;
        os << format_double(s.min) << ',' << format_double(s.q25) << ','
           << format_double(s.median) << ',' << format_double(s.q75) << ',' << format_double(s.max) << ','
           << format_double(s.lo_whisker) << ',' << format_double(s.hi_whisker) << ',';
        for (std::size_t i = 0; i < s.outliers.size(); ++i)
            os << (i ? ";" : "") << format_double(s.outliers[i]);
        os << '\n';
    }
}

inline const RecordValue& ratio_value() {
    static const RecordValue f = [](const RatioRecord& r) { return r.competitive_ratio; };
    return f;
}

inline const RecordValue& impact_value() {
    static const RecordValue f = [](const RatioRecord& r) { return r.drone_impact_ratio; };
    return f;
}

/// Writes the per-policy plot tables; returns the file paths written.
inline std::vector<std::filesystem::path> write_artifacts(const std::vector<RatioRecord>& rs,
                                                          const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> policies;
    for (const auto& r : rs)
        if (std::find(policies.begin(), policies.end(), r.policy) == policies.end())
            policies.push_back(r.policy);
    const RecordKey by_alpha = [](const RatioRecord& r) { return format_double(r.alpha); };
    const RecordKey by_trucks = [](const RatioRecord& r) { return std::to_string(r.trucks); };
    const RecordKey by_drones = [](const RatioRecord& r) { return std::to_string(r.drones); };
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::vector<RatioRecord>& sub, const std::vector<std::string>& names,
                    const std::vector<RecordKey>& keys, const RecordValue& value) {
        const auto path = dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw Error("cannot write " + path.string());
        write_summary_csv(os, names, aggregate(sub, keys, value));
        written.push_back(path);
    };
    for (const auto& p : policies) {
        std::vector<RatioRecord> sub;
        for (const auto& r : rs)
            if (r.policy == p)
                sub.push_back(r);
        std::stable_sort(sub.begin(), sub.end(),
                         [](const RatioRecord& a, const RatioRecord& b) { return a.alpha < b.alpha; });
        emit("ratio_vs_alpha_" + p + ".csv", sub, {"alpha"}, {by_alpha}, ratio_value());
        emit("risk_vs_alpha_" + p + ".csv", sub, {"alpha"}, {by_alpha}, impact_value());
        std::stable_sort(sub.begin(), sub.end(), [](const RatioRecord& a, const RatioRecord& b) {
            return std::pair(a.trucks, a.drones) < std::pair(b.trucks, b.drones);
        });
        emit("ratio_vs_drone_trucks_" + p + ".csv", sub, {"trucks", "drones"}, {by_trucks, by_drones},
             ratio_value());
    }
    return written;
}

} // namespace rdp

#endif
