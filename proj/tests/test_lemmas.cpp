#include <catch_amalgamated.hpp>

#include "rdp/lemmas.hpp"

using namespace rdp;
using Catch::Approx;

namespace {

LemmaParams params(double alpha, int kt, int kd) {
    LemmaParams p;
    p.alpha = alpha;
    p.trucks = kt;
    p.drones = kd;
    return p;
}

void require_claims(const LemmaInstance& li) {
    for (const auto& c : check_lemma(li)) {
        INFO(to_string(li.family) << " alpha " << li.params.alpha << " fleet " << li.params.trucks << ","
                                  << li.params.drones << " " << to_string(c.claim.policy) << " "
                                  << to_string(c.claim.quantity) << " expected " << c.claim.value << " observed "
                                  << c.observed);
        REQUIRE(c.ok);
    }
}

} // namespace

TEST_CASE("equal-speed optimistic example: damage on a drone node") {
    const auto li = make_lemma_instance(LemmaFamily::optimistic_equal_speed, params(1.0, 1, 2));
    CHECK(li.instance.node_count() == 4);
    REQUIRE(li.instance.damaged().size() == 1);
    const auto out = simulate(li.instance, PolicyKind::optimistic);
    bool by_drone = false;
    for (std::size_t v = 1; v < out.vehicles.size(); ++v)
        for (const auto& s : out.vehicles[v].stops)
            by_drone = by_drone || s.node == li.instance.damaged()[0];
    CHECK(by_drone);
    CHECK(out.makespan == 4.0);
    CHECK(rdp_star_opt(li.instance).makespan == 2.0);
}

TEST_CASE("two-level best case example") {
    const auto li = make_lemma_instance(LemmaFamily::best_case_two_level, params(2.0, 1, 1));
    CHECK(li.instance.damaged().empty());
    const auto opt = simulate(li.instance, PolicyKind::optimistic).makespan;
    const auto truck_only = simulate(li.instance, PolicyKind::truck_only).makespan;
    CHECK(opt == 2.0);
    CHECK(truck_only == 6.0);
    CHECK(opt / truck_only == Approx(1.0 / 3.0).margin(1e-12));
    CHECK(simulate(li.instance, PolicyKind::regretless).makespan == 2.0);
}

TEST_CASE("equal-speed regretless example: tour tail damaged") {
    const auto li = make_lemma_instance(LemmaFamily::regretless_equal_speed, params(1.0, 1, 1));
    CHECK(li.instance.node_count() == 3);
    CHECK(li.instance.damaged().size() == 1);
    CHECK(simulate(li.instance, PolicyKind::regretless).makespan == 4.0);
    CHECK(rdp_star_opt(li.instance).makespan == 2.0);
}

TEST_CASE("explore-first example") {
    const auto li = make_lemma_instance(LemmaFamily::explore_first, params(2.0, 1, 1));
    CHECK(simulate(li.instance, PolicyKind::efhs).makespan == Approx(5.0).margin(1e-9));
    CHECK(simulate(li.instance, PolicyKind::efha).makespan == Approx(4.5).margin(1e-9));
    require_claims(li);
}

TEST_CASE("side conditions are rejected with the condition in the message") {
    using Catch::Matchers::ContainsSubstring;
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::worst_impact_fast, params(0.5, 1, 1)),
                      ContainsSubstring("alpha > 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::worst_impact_slow, params(2.0, 1, 1)),
                      ContainsSubstring("alpha <= 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::optimistic_equal_speed, params(2.0, 1, 1)),
                      ContainsSubstring("alpha = 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::optimistic_mixed_speed, params(1.0, 1, 1)),
                      ContainsSubstring("alpha != 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::optimistic_slow_dense, params(0.5, 1, 1)),
                      ContainsSubstring("ceil(kd/kt) >= 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::optimistic_slow_sparse, params(0.5, 1, 2)),
                      ContainsSubstring("ceil(kd/kt) < 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::regretless_equal_speed, params(1.0, 1, 2)),
                      ContainsSubstring("kt >= ceil(kd/kt)"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::regretless_slow, params(0.4, 3, 1)),
                      ContainsSubstring("1/alpha integer"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::regretless_slow, params(0.5, 1, 1)),
                      ContainsSubstring("kt >= ceil(kd/kt) + 1/alpha - 1"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::regretless_fast, params(2.5, 3, 1)),
                      ContainsSubstring("integer alpha"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::regretless_fast, params(2.0, 1, 1)),
                      ContainsSubstring("kt >= ceil(alpha kd / kt)"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::online_slow, params(2.0, 1, 1)),
                      ContainsSubstring("1/alpha integer"));
    CHECK_THROWS_WITH(make_lemma_instance(LemmaFamily::explore_first, params(2.0, 2, 1)),
                      ContainsSubstring("one truck, one drone"));
    CHECK_THROWS_AS(make_lemma_instance(LemmaFamily::best_case_two_level, params(-1.0, 1, 1)), DomainError);
    CHECK_THROWS_AS(lemma_family_from_string("nope"), DomainError);
    for (LemmaFamily f : all_lemma_families())
        CHECK(lemma_family_from_string(to_string(f)) == f);
}

TEST_CASE("lemma graphs are metric and carry their claims") {
    for (LemmaFamily f : all_lemma_families())
        for (const auto& p : lemma_grid()) {
            if (p.trucks == 3 && p.drones == 3)
                continue; // the 18-node cases run in the acceptance suite
            LemmaInstance li{f, p, RdpInstance(make_star(1, 1.0), 1, 1, 1.0, {}), {}};
            try {
                li = make_lemma_instance(f, p);
            } catch (const DomainError&) {
                continue;
            }
            const auto& c = li.instance.closure();
            const auto n = li.instance.node_count();
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v)
                    for (NodeId w = 0; w < n; ++w)
                        REQUIRE(c(u, w) <= c(u, v) + c(v, w) + 1e-9);
            REQUIRE(!li.claims.empty());
            REQUIRE(li.instance.meta()["family"] == to_string(f));
            REQUIRE(li.instance.meta()["claims"].size() == li.claims.size());
        }
}

TEST_CASE("predicted values hold on the small parameter grid") {
    for (LemmaFamily f : all_lemma_families())
        for (const auto& p : lemma_grid()) {
            if (p.trucks + p.drones > 4)
                continue;
            LemmaInstance li{f, p, RdpInstance(make_star(1, 1.0), 1, 1, 1.0, {}), {}};
            try {
                li = make_lemma_instance(f, p);
            } catch (const DomainError&) {
                continue;
            }
            require_claims(li);
        }
}

TEST_CASE("online lower bound holds against every policy") {
    for (PolicyKind target : {PolicyKind::optimistic, PolicyKind::regretless, PolicyKind::efhs, PolicyKind::efha})
        for (double a : {1.0 / 3.0, 0.5, 1.0})
            for (int kt = 1; kt <= 2; ++kt)
                for (int kd = 1; kd <= 2; ++kd) {
                    auto p = params(a, kt, kd);
                    p.target = target;
                    require_claims(make_lemma_instance(LemmaFamily::online_slow, p));
                }
}

TEST_CASE("mixed-speed family honours a custom period") {
    auto p = params(0.5, 1, 2);
    p.period = 3.0;
    const auto li = make_lemma_instance(LemmaFamily::optimistic_mixed_speed, p);
    CHECK(rdp_star_opt(li.instance).makespan == Approx(3.0).margin(1e-9));
    require_claims(li);
    auto q = params(0.5, 1, 1);
    q.epsilon = 0.01;
    const auto slow = make_lemma_instance(LemmaFamily::worst_impact_slow, q);
    CHECK(simulate(slow.instance, PolicyKind::truck_only).makespan == Approx(2.02).margin(1e-9));
    require_claims(slow);
}
