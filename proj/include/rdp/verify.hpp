#ifndef RDP_VERIFY_HPP
#define RDP_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rdp/records.hpp"

namespace rdp {

/// Tolerance for comparing stored ratios against proven bounds.
inline constexpr double kBoundTol = 1e-9;

struct BoundViolation {
    std::size_t row = 0; ///< index into the checked records
    std::string instance_id;
    std::string policy;
    std::string bound;
    double observed = 0.0;
    double limit = 0.0;
};

struct TightRow {
    std::size_t row = 0;
    std::string instance_id;
    std::string policy;
    std::string bound;
    double value = 0.0;
};

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<BoundViolation> violations;
    std::vector<TightRow> tight;
    bool ok() const { return violations.empty(); }
};

/// 1 + alpha * ceil(kd / kt), the slow-truck factor in the ratio bounds.
inline double fleet_factor(double alpha, int trucks, int drones) {
    if (trucks < 1)
        throw DomainError("fleet factor needs at least one truck");
    return 1.0 + alpha * static_cast<double>((drones + trucks - 1) / trucks);
}

/// Checks every record against the proven ratio bounds for its policy.
inline VerifyReport verify_bounds(const std::vector<RatioRecord>& rs) {
    VerifyReport rep;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const auto& r = rs[i];
        ++rep.checked;
        auto at_most = [&](const std::string& name, double x, double limit) {
            if (x > limit + kBoundTol)
                rep.violations.push_back({i, r.instance_id, r.policy, name, x, limit});
            else if (std::abs(x - limit) <= kBoundTol)
                rep.tight.push_back({i, r.instance_id, r.policy, name, x});
        };
        auto at_least = [&](const std::string& name, double x, double limit) {
            if (x < limit - kBoundTol)
                rep.violations.push_back({i, r.instance_id, r.policy, name, x, limit});
            else if (std::abs(x - limit) <= kBoundTol)
                rep.tight.push_back({i, r.instance_id, r.policy, name, x});
        };
        const double cr = r.competitive_ratio, di = r.drone_impact_ratio;
        if (!(std::isfinite(cr) && std::isfinite(di))) {
            rep.violations.push_back({i, r.instance_id, r.policy, "finite ratios", cr, di});
            continue;
        }
        if (r.opt_star > 0.0 && std::abs(cr - r.makespan / r.opt_star) > kBoundTol * std::max(1.0, cr))
            rep.violations.push_back({i, r.instance_id, r.policy, "CR = makespan / OPT*", cr, r.makespan / r.opt_star});
        if (r.truck_only_opt > 0.0 && std::abs(di - r.makespan / r.truck_only_opt) > kBoundTol * std::max(1.0, di))
            rep.violations.push_back(
                {i, r.instance_id, r.policy, "impact = makespan / truck-only OPT", di, r.makespan / r.truck_only_opt});
        at_least("CR >= 1", cr, 1.0);
        if (r.trucks < 1)
            continue;
        const double f = fleet_factor(r.alpha, r.trucks, r.drones);
        if (r.policy == "optimistic") {
            at_most("CR <= min{2, 1 + alpha ceil(kd/kt)}", cr, std::min(2.0, f));
            at_least("impact >= 1 / (1 + alpha ceil(kd/kt))", di, 1.0 / f);
        } else if (r.policy == "regretless") {
            at_most("CR <= 1 + alpha ceil(kd/kt)", cr, f);
            at_most("impact <= 1", di, 1.0);
            at_least("impact >= 1 / (1 + alpha ceil(kd/kt))", di, 1.0 / f);
        } else if (r.policy == "truck_only") {
            if (std::abs(di - 1.0) > kBoundTol)
                rep.violations.push_back({i, r.instance_id, r.policy, "impact = 1", di, 1.0});
        }
    }
    return rep;
}

} // namespace rdp

#endif
