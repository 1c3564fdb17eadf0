#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rdp/experiment.hpp"
#include "rdp/lemmas.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rdp;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep))
        if (!item.empty())
            out.push_back(item);
    return out;
}

RdpInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw GraphError(path + ": " + e.what());
    }
    return instance_from_json(j);
}

void write_json(const fs::path& path, const json& j) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("cannot write " + path.string());
    os << j.dump(2) << '\n';
}

std::vector<RatioRecord> load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    return read_records_csv(in);
}

std::vector<Fleet> parse_fleets(const std::string& s) {
    std::vector<Fleet> out;
    for (const auto& item : split(s, ',')) {
        const auto x = item.find('x');
        if (x == std::string::npos)
            throw DomainError("fleet '" + item + "' must look like 2x1 (trucks x drones)");
        out.push_back({static_cast<int>(parse_integer(item.substr(0, x))),
                       static_cast<int>(parse_integer(item.substr(x + 1)))});
    }
    return out;
}

json manifest_entry(const LabeledInstance& li, const std::string& file) {
    return {{"id", li.id},
            {"file", file},
            {"graph_id", li.graph_id},
            {"graph_class", to_string(li.graph_class)},
            {"graph_seed", li.graph_seed},
            {"damage_seed", li.damage_seed},
            {"delta", li.delta},
            {"alpha", li.instance.alpha()},
            {"trucks", li.instance.trucks()},
            {"drones", li.instance.drones()},
            {"nodes", li.instance.node_count()},
            {"damaged", li.instance.damaged().size()}};
}

json report_json(const VerifyReport& rep, const std::vector<RatioRecord>& rs) {
    auto violations = json::array();
    for (const auto& v : rep.violations) {
        const auto& r = rs[v.row];
        violations.push_back({{"row", v.row},
                              {"instance_id", v.instance_id},
                              {"graph_class", r.graph_class},
                              {"n", r.n},
                              {"delta", r.delta},
                              {"alpha", r.alpha},
                              {"trucks", r.trucks},
                              {"drones", r.drones},
                              {"policy", v.policy},
                              {"bound", v.bound},
                              {"observed", v.observed},
                              {"limit", v.limit}});
    }
    auto tight = json::array();
    for (const auto& t : rep.tight)
        tight.push_back({{"row", t.row}, {"instance_id", t.instance_id}, {"policy", t.policy}, {"bound", t.bound},
                         {"value", t.value}});
    return {{"checked", rep.checked}, {"violations", violations}, {"tight", tight}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Relief distribution lab: exact solver, online policies and experiments"};
    app.require_subcommand(1);
    int status = 0;

    // gen
    auto* gen = app.add_subcommand("gen", "Generate one instance or a whole dataset as JSON files");
    std::string gen_class = "random", gen_dataset;
    std::size_t gen_n = 18;
    std::uint64_t gen_seed = 1;
    double gen_delta = 0.3, gen_alpha = 1.0;
    int gen_trucks = 1, gen_drones = 1;
    std::string gen_out = ".";
    gen->add_option("--class", gen_class, "random, one_center, two_center, coastal, mountain");
    gen->add_option("--n", gen_n, "node count including the depot");
    gen->add_option("--seed", gen_seed, "root seed");
    gen->add_option("--delta", gen_delta, "damage probability per customer");
    gen->add_option("--alpha", gen_alpha, "drone speed relative to trucks");
    gen->add_option("--trucks", gen_trucks);
    gen->add_option("--drones", gen_drones);
    gen->add_option("--dataset", gen_dataset, "RANDOM, BASE, VAR, LARGE or SMALL; overrides the single-instance flags");
    gen->add_option("--out", gen_out, "output directory")->required();
    gen->callback([&] {
        std::vector<LabeledInstance> list;
        if (!gen_dataset.empty()) {
            list = build_dataset(gen_dataset, gen_seed);
        } else {
            GeneratorConfig cfg;
            cfg.graph_class = graph_class_from_string(gen_class);
            cfg.n = gen_n;
            cfg.seed = gen_seed;
            const auto g = generate(cfg);
            LabeledInstance li;
            li.graph_class = cfg.graph_class;
            li.graph_id = std::string(to_string(cfg.graph_class)) + "-n" + std::to_string(gen_n) + "-s" +
                          std::to_string(gen_seed);
            li.id = li.graph_id + "-d" + format_number(gen_delta);
            li.graph_seed = gen_seed;
            li.damage_seed = derive_seed(gen_seed, {1});
            li.delta = gen_delta;
            json meta{{"generator", gen_class}, {"seed", gen_seed}, {"damage_seed", li.damage_seed},
                      {"damage_prob", gen_delta}, {"id", li.id}};
            li.instance = RdpInstance(g, gen_trucks, gen_drones, gen_alpha, sample_damage(g, gen_delta, li.damage_seed),
                                      std::move(meta));
            list.push_back(std::move(li));
        }
        auto manifest = json::array();
        for (const auto& li : list) {
            const std::string file = li.id + ".json";
            write_json(fs::path(gen_out) / file, to_json(li.instance));
            manifest.push_back(manifest_entry(li, file));
        }
        write_json(fs::path(gen_out) / "manifest.json",
                   {{"dataset", gen_dataset.empty() ? "single" : gen_dataset}, {"seed", gen_seed},
                    {"instances", manifest}});
        std::cout << "wrote " << list.size() << " instance(s) to " << gen_out << '\n';
    });

    // solve
    auto* solve = app.add_subcommand("solve", "Exact optima of one instance");
    std::string solve_in;
    solve->add_option("--instance", solve_in, "instance JSON")->required();
    solve->callback([&] {
        const auto inst = load_instance(solve_in);
        const MultiTspSolver solver(inst.closure(), inst.customers());
        json j;
        j["opt_star"] = to_json(solver.solve(inst.customers(), inst.trucks(), inst.drones(), inst.alpha(),
                                             inst.damaged()));
        j["mixed_fleet"] = to_json(solver.solve(inst.customers(), inst.trucks(), inst.drones(), inst.alpha()));
        j["truck_only"] = to_json(solver.solve(inst.customers(), inst.trucks(), 0, inst.alpha()));
        std::cout << j.dump(2) << '\n';
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run one online policy and print the outcome");
    std::string sim_in, sim_policy = "optimistic";
    sim->add_option("--instance", sim_in, "instance JSON")->required();
    sim->add_option("--policy", sim_policy, "optimistic, regretless, truck_only, efhs, efha");
    sim->callback([&] {
        const auto inst = load_instance(sim_in);
        std::cout << to_json(simulate(inst, policy_from_string(sim_policy))).dump(2) << '\n';
    });

    // experiment
    auto* exp = app.add_subcommand("experiment", "Evaluate policies over a dataset and write CSV tables");
    ExperimentConfig cfg;
    std::string exp_policies, exp_alphas, exp_fleets, exp_out = "results";
    bool exp_strict = false, exp_check = false;
    exp->add_option("--dataset", cfg.dataset, "RANDOM, BASE, VAR, LARGE or SMALL");
    exp->add_option("--seed", cfg.seed, "root seed");
    exp->add_option("--policies", exp_policies, "comma-separated policies (default all)");
    exp->add_option("--alphas", exp_alphas, "comma-separated subset of the alpha grid");
    exp->add_option("--fleets", exp_fleets, "comma-separated fleets such as 1x1,2x1");
    exp->add_option("--limit", cfg.limit, "evaluate only the first N instances");
    exp->add_option("--workers", cfg.workers, "worker threads (default RDP_WORKERS or all cores)");
    exp->add_option("--out", exp_out, "output directory");
    exp->add_flag("--check", exp_check, "also check per-outcome invariants");
    exp->add_flag("--strict", exp_strict, "exit 1 on any bound violation or invariant failure");
    exp->callback([&] {
        if (!exp_policies.empty()) {
            cfg.policies.clear();
            for (const auto& p : split(exp_policies, ','))
                cfg.policies.push_back(policy_from_string(p));
        }
        for (const auto& a : split(exp_alphas, ','))
            cfg.alphas.push_back(parse_double(a));
        cfg.fleets = parse_fleets(exp_fleets);
        cfg.check_invariants = exp_check || exp_strict;
        const auto res = run_experiment(cfg);
        write_experiment(res, exp_out);
        for (const auto& s : res.skipped)
            std::cerr << "skipped " << s << '\n';
        for (const auto& p : res.problems)
            std::cerr << "invariant " << p << '\n';
        const auto rep = verify_bounds(res.records);
        write_json(fs::path(exp_out) / "verify.json", report_json(rep, res.records));
        for (const auto& v : rep.violations)
            std::cerr << "violation " << v.instance_id << ' ' << v.policy << ' ' << v.bound << " observed "
                      << format_double(v.observed) << " limit " << format_double(v.limit) << '\n';
        std::cout << res.instances << " instances, " << res.records.size() << " records, " << res.skipped.size()
                  << " skipped, " << rep.violations.size() << " violations, " << rep.tight.size() << " tight, "
                  << res.problems.size() << " invariant failures; written to " << exp_out << '\n';
        if (exp_strict && (!rep.ok() || !res.problems.empty()))
            status = 1;
    });

    // verify
    auto* ver = app.add_subcommand("verify", "Check records against the proven ratio bounds");
    std::string ver_in;
    bool ver_strict = false;
    ver->add_option("--in", ver_in, "records CSV")->required();
    ver->add_flag("--strict", ver_strict, "exit 1 on any violation");
    ver->callback([&] {
        const auto rs = load_records(ver_in);
        const auto rep = verify_bounds(rs);
        std::cout << report_json(rep, rs).dump(2) << '\n';
        if (ver_strict && !rep.ok())
            status = 1;
    });

    // aggregate
    auto* agg = app.add_subcommand("aggregate", "Quartile summary of records grouped by columns");
    std::string agg_in, agg_by = "policy,alpha", agg_value = "competitive_ratio", agg_out, agg_dir;
    agg->add_option("--in", agg_in, "records CSV")->required();
    agg->add_option("--by", agg_by, "comma-separated keys: alpha, policy, class, delta, n, fleet");
    agg->add_option("--value", agg_value, "competitive_ratio, drone_impact_ratio or makespan");
    agg->add_option("--out", agg_out, "output CSV (default stdout)");
    agg->add_option("--artifacts", agg_dir, "instead write the per-policy plot tables into this directory");
    agg->callback([&] {
        const auto rs = load_records(agg_in);
        if (!agg_dir.empty()) {
            for (const auto& p : write_artifacts(rs, agg_dir))
                std::cout << p.string() << '\n';
            return;
        }
        const auto [cols, keys] = group_keys(split(agg_by, ','));
        const auto groups = aggregate(rs, keys, record_value(agg_value));
        if (agg_out.empty()) {
            write_summary_csv(std::cout, cols, groups);
        } else {
            std::ofstream os(agg_out, std::ios::binary);
            if (!os)
                throw Error("cannot write " + agg_out);
            write_summary_csv(os, cols, groups);
        }
    });

    // lemma
    auto* lem = app.add_subcommand("lemma", "Build a worst- or best-case instance and check its predicted values");
    std::string lem_family, lem_target = "optimistic", lem_out;
    LemmaParams lp;
    lem->add_option("--family", lem_family, "instance family")->required();
    lem->add_option("--alpha", lp.alpha);
    lem->add_option("--trucks", lp.trucks);
    lem->add_option("--drones", lp.drones);
    lem->add_option("--epsilon", lp.epsilon, "slack used by the slow-drone families");
    lem->add_option("--target", lem_target, "policy attacked by the online lower-bound family");
    lem->add_option("--out", lem_out, "also write the instance JSON here");
    lem->callback([&] {
        lp.target = policy_from_string(lem_target);
        const auto li = make_lemma_instance(lemma_family_from_string(lem_family), lp);
        if (!lem_out.empty())
            write_json(lem_out, to_json(li.instance));
        auto checks = json::array();
        bool ok = true;
        for (const auto& c : check_lemma(li)) {
            ok = ok && c.ok;
            checks.push_back({{"policy", to_string(c.claim.policy)},
                              {"quantity", to_string(c.claim.quantity)},
                              {"expected", c.claim.value},
                              {"relation", c.claim.at_least ? ">=" : "="},
                              {"observed", c.observed},
                              {"ok", c.ok}});
        }
        std::cout << json{{"family", lem_family}, {"checks", checks}}.dump(2) << '\n';
        if (!ok)
            status = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return status;
}
