#ifndef RDP_EXPERIMENT_HPP
#define RDP_EXPERIMENT_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rdp/stats.hpp"
#include "rdp/verify.hpp"

namespace rdp {

struct ExperimentConfig {
    std::string dataset = "SMALL";
    std::uint64_t seed = 1;
    std::vector<PolicyKind> policies = all_policies();
    std::vector<double> alphas; ///< empty keeps the dataset grid
    std::vector<Fleet> fleets;  ///< empty keeps the dataset grid
    std::size_t limit = 0;      ///< 0 keeps every instance
    int workers = 0;            ///< 0 reads RDP_WORKERS, else hardware concurrency
    bool check_invariants = false;
};

struct ExperimentResult {
    std::vector<RatioRecord> records;
    std::vector<std::string> skipped;  ///< "<id>: <reason>"
    std::vector<std::string> problems; ///< invariant failures, empty unless checked
    std::size_t instances = 0;
};

/// Worker count: explicit value, else RDP_WORKERS, else hardware threads.
inline int resolve_workers(int requested) {
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("RDP_WORKERS")) {
        const int w = std::atoi(env);
        if (w > 0)
            return w;
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

inline std::vector<LabeledInstance> select_instances(const ExperimentConfig& cfg) {
    std::vector<LabeledInstance> out;
    for (auto& li : build_dataset(cfg.dataset, cfg.seed)) {
        const auto& inst = li.instance;
        if (!cfg.alphas.empty() && std::find(cfg.alphas.begin(), cfg.alphas.end(), inst.alpha()) == cfg.alphas.end())
            continue;
        const Fleet f{inst.trucks(), inst.drones()};
        if (!cfg.fleets.empty() && std::find(cfg.fleets.begin(), cfg.fleets.end(), f) == cfg.fleets.end())
            continue;
        out.push_back(std::move(li));
        if (cfg.limit > 0 && out.size() == cfg.limit)
            break;
    }
    return out;
}

/**
 * Evaluates every instance under every policy. Instance i goes to worker
 * i mod W; each worker fills its own slots and the results are collated in
 * instance order, so the output does not depend on the worker count.
 */
inline ExperimentResult run_instances(const std::vector<LabeledInstance>& instances,
                                      const std::vector<PolicyKind>& policies, int workers, bool check) {
    struct Slot {
        std::vector<RatioRecord> records;
        std::optional<std::string> skipped;
        std::vector<std::string> problems;
        std::exception_ptr failure;
    };
    std::vector<Slot> slots(instances.size());
    const auto w = static_cast<std::size_t>(resolve_workers(workers));
    auto work = [&](std::size_t me) {
        for (std::size_t i = me; i < instances.size(); i += w) {
            Slot& s = slots[i];
            try {
                EvaluationChecks checks;
                checks.enabled = check;
                s.records = evaluate(instances[i], policies, &checks);
                s.problems = std::move(checks.problems);
            } catch (const SizeError& e) {
                s.skipped = instances[i].id + ": " + e.what();
            } catch (...) {
                s.failure = std::current_exception();
            }
        }
    };
    if (w == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t k = 0; k < w; ++k)
            pool.emplace_back(work, k);
        for (auto& t : pool)
            t.join();
    }
    ExperimentResult res;
    res.instances = instances.size();
    for (auto& s : slots) {
        if (s.failure)
            std::rethrow_exception(s.failure);
        if (s.skipped)
            res.skipped.push_back(*s.skipped);
        res.records.insert(res.records.end(), s.records.begin(), s.records.end());
        res.problems.insert(res.problems.end(), s.problems.begin(), s.problems.end());
    }
    return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    return run_instances(select_instances(cfg), cfg.policies, cfg.workers, cfg.check_invariants);
}

/// Writes records.csv and the aggregated tables; returns every path written.
inline std::vector<std::filesystem::path> write_experiment(const ExperimentResult& res,
                                                           const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto path = dir / "records.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot write " + path.string());
    write_records_csv(os, res.records);
    os.close();
    auto out = write_artifacts(res.records, dir);
    out.insert(out.begin(), path);
    return out;
}

} // namespace rdp

#endif
