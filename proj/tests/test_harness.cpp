#include <catch_amalgamated.hpp>

#include <sstream>

#include "rdp/experiment.hpp"
#include "rdp/lemmas.hpp"

using namespace rdp;
using Catch::Approx;

namespace {

LabeledInstance labeled(RdpInstance inst, std::string id = "x") {
    LabeledInstance li;
    li.id = std::move(id);
    li.instance = std::move(inst);
    return li;
}

WeightedGraph random_graph(std::size_t n, std::uint64_t seed) {
    GeneratorConfig cfg;
    cfg.graph_class = GraphClass::random;
    cfg.n = n;
    cfg.seed = seed;
    return generate(cfg);
}

std::string csv(const std::vector<RatioRecord>& rs) {
    std::ostringstream os;
    write_records_csv(os, rs);
    return os.str();
}

LemmaParams params(double alpha, int kt, int kd) {
    LemmaParams p;
    p.alpha = alpha;
    p.trucks = kt;
    p.drones = kd;
    return p;
}

ExperimentConfig tiny_config() {
    ExperimentConfig cfg;
    cfg.dataset = "SMALL";
    cfg.seed = 7;
    cfg.fleets = {{1, 1}, {2, 1}};
    cfg.limit = 12;
    cfg.check_invariants = true;
    return cfg;
}

} // namespace

TEST_CASE("quartiles use the median of halves") {
    const auto b = summarize({4.0, 1.0, 3.0, 2.0});
    CHECK(b.median == 2.5);
    CHECK(b.q25 == 1.5);
    CHECK(b.q75 == 3.5);
    CHECK(b.min == 1.0);
    CHECK(b.max == 4.0);
    CHECK(b.outliers.empty());
    const auto odd = summarize({1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(odd.q25 == 1.5);
    CHECK(odd.median == 3.0);
    CHECK(odd.q75 == 4.5);
}

TEST_CASE("identical values give identical statistics") {
    const auto b = summarize({1.25, 1.25, 1.25});
    for (double x : {b.min, b.q25, b.median, b.q75, b.max, b.lo_whisker, b.hi_whisker})
        CHECK(x == 1.25);
    const auto one = summarize({3.0});
    CHECK(one.q25 == 3.0);
    CHECK(one.q75 == 3.0);
    CHECK_THROWS_AS(summarize({}), DomainError);
}

TEST_CASE("whiskers stop at the last value inside 1.5 IQR") {
    const auto b = summarize({1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 100.0});
    // q25 = 2.5, q75 = 7.5, fences -5 and 15
    CHECK(b.lo_whisker == 1.0);
    CHECK(b.hi_whisker == 8.0);
    REQUIRE(b.outliers.size() == 1);
    CHECK(b.outliers[0] == 100.0);
    CHECK(b.max == 100.0);
}

TEST_CASE("aggregation keeps first-seen group order and worst equals max") {
    std::vector<RatioRecord> rs;
    for (double a : {2.0, 0.5, 2.0, 0.5, 2.0}) {
        RatioRecord r;
        r.alpha = a;
        r.competitive_ratio = 1.0 + a * static_cast<double>(rs.size());
        rs.push_back(r);
    }
    const auto [cols, keys] = group_keys({"alpha"});
    const auto g = aggregate(rs, keys, ratio_value());
    REQUIRE(g.size() == 2);
    CHECK(g[0].key == std::vector<std::string>{"2"});
    CHECK(g[0].stats.max == 9.0);
    CHECK(g[1].stats.max == 2.5);
    CHECK_THROWS_AS(group_keys({"colour"}), DomainError);
}

TEST_CASE("equal-speed optimistic instance has ratio 2") {
    const auto lm = make_lemma_instance(LemmaFamily::optimistic_equal_speed, params(1.0, 1, 2));
    const auto rs = evaluate(labeled(lm.instance), {PolicyKind::optimistic});
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].competitive_ratio == 2.0);
    CHECK(rs[0].policy == "optimistic");
}

TEST_CASE("fully damaged instance gives Regretless drone impact 1") {
    const auto g = random_graph(9, 3);
    std::vector<NodeId> all;
    for (NodeId v = 1; v < g.node_count(); ++v)
        all.push_back(v);
    for (double a : {0.5, 1.0, 2.0}) {
        const auto rs = evaluate(labeled(RdpInstance(g, 1, 2, a, all)), {PolicyKind::regretless});
        CHECK(rs[0].drone_impact_ratio == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("undamaged instance gives TruckOnly drone impact 1") {
    const auto rs = evaluate(labeled(RdpInstance(random_graph(8, 5), 2, 1, 2.0, {})), all_policies());
    REQUIRE(rs.size() == 5);
    for (const auto& r : rs) {
        CHECK(r.n == 8);
        CHECK(r.opt_star > 0.0);
        if (r.policy == "truck_only")
            CHECK(r.drone_impact_ratio == 1.0);
    }
    CHECK(verify_bounds(rs).ok());
}

TEST_CASE("explore-first policies are skipped without drones") {
    const auto rs = evaluate(labeled(RdpInstance(random_graph(6, 9), 1, 0, 1.0, {2})), all_policies());
    CHECK(rs.size() == 3);
}

TEST_CASE("corrupted records are flagged") {
    const auto lm = make_lemma_instance(LemmaFamily::optimistic_equal_speed, params(1.0, 1, 2));
    auto rs = evaluate(labeled(lm.instance), {PolicyKind::optimistic, PolicyKind::regretless});
    REQUIRE(verify_bounds(rs).ok());
    rs[0].makespan /= 2.0;
    const auto rep = verify_bounds(rs);
    REQUIRE(!rep.ok());
    CHECK(rep.violations[0].row == 0);
    CHECK(rep.violations[0].instance_id == "x");
    rs[0].competitive_ratio /= 2.0;
    CHECK(!verify_bounds(rs).ok()); // CR now below 1
}

TEST_CASE("lemma instances reach the bounds and are reported tight") {
    const auto lm = make_lemma_instance(LemmaFamily::optimistic_equal_speed, params(1.0, 1, 2));
    const auto rep = verify_bounds(evaluate(labeled(lm.instance), {PolicyKind::optimistic}));
    CHECK(rep.ok());
    bool tight = false;
    for (const auto& t : rep.tight)
        tight = tight || t.bound.starts_with("CR <= min{2");
    CHECK(tight);
    const auto re = make_lemma_instance(LemmaFamily::regretless_equal_speed, params(1.0, 1, 1));
    const auto rr = verify_bounds(evaluate(labeled(re.instance), {PolicyKind::regretless}));
    CHECK(rr.ok());
    CHECK(!rr.tight.empty());
}

TEST_CASE("record CSV round trip is loss-free") {
    const auto res = run_experiment(tiny_config());
    REQUIRE(!res.records.empty());
    CHECK(res.problems.empty());
    const std::string text = csv(res.records);
    std::istringstream in(text);
    const auto back = read_records_csv(in);
    CHECK(back == res.records);
    CHECK(csv(back) == text);
    const auto [cols, keys] = group_keys({"policy", "alpha"});
    std::ostringstream a, b;
    write_summary_csv(a, cols, aggregate(res.records, keys, ratio_value()));
    write_summary_csv(b, cols, aggregate(back, keys, ratio_value()));
    CHECK(a.str() == b.str());
    CHECK(a.str().starts_with("# quartiles"));
    std::istringstream bad("instance_id,n\n");
    CHECK_THROWS_AS(read_records_csv(bad), Error);
}

TEST_CASE("results do not depend on the worker count") {
    auto cfg = tiny_config();
    cfg.workers = 1;
    const auto one = run_experiment(cfg);
    cfg.workers = 3;
    const auto three = run_experiment(cfg);
    cfg.workers = 16;
    const auto many = run_experiment(cfg);
    CHECK(one.instances == 12);
    CHECK(csv(one.records) == csv(three.records));
    CHECK(csv(one.records) == csv(many.records));
    CHECK(verify_bounds(one.records).ok());
}

TEST_CASE("artifact files are written per policy") {
    auto cfg = tiny_config();
    cfg.policies = {PolicyKind::optimistic, PolicyKind::regretless};
    const auto res = run_experiment(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "rdp_harness_test";
    std::filesystem::remove_all(dir);
    const auto paths = write_experiment(res, dir);
    CHECK(paths.size() == 7);
    for (const char* name : {"records.csv", "ratio_vs_alpha_optimistic.csv", "risk_vs_alpha_regretless.csv",
                             "ratio_vs_drone_trucks_regretless.csv"})
        CHECK(std::filesystem::exists(dir / name));
    std::ifstream in(dir / "ratio_vs_drone_trucks_optimistic.csv");
    std::string comment, header, row;
    std::getline(in, comment);
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "trucks,drones,min,q25,median,q75,max,lo_whisker,hi_whisker,outliers");
    CHECK(row.starts_with("1,1,"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("oversized instances are skipped with a reason") {
    std::vector<LabeledInstance> big{labeled(RdpInstance(random_graph(23, 1), 1, 1, 1.0, {}), "big"),
                                     labeled(RdpInstance(random_graph(6, 2), 1, 1, 1.0, {}), "small")};
    const auto res = run_instances(big, {PolicyKind::optimistic}, 2, false);
    REQUIRE(res.skipped.size() == 1);
    CHECK(res.skipped[0].starts_with("big: "));
    CHECK(res.records.size() == 1);
}
