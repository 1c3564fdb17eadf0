#include <catch_amalgamated.hpp>

#include <set>

#include "rdp/dataset.hpp"

using namespace rdp;

namespace {

// orientation with a relative tolerance, independent of the generator's integer test
int side(Point a, Point b, Point c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    const double scale = 1e-12 * (std::abs(b.x - a.x) + std::abs(b.y - a.y)) * (std::abs(c.x - a.x) + std::abs(c.y - a.y));
    return v > scale ? 1 : (v < -scale ? -1 : 0);
}

bool within(Point a, Point b, Point p) {
    return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
           std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

bool is_planar_drawing(const WeightedGraph& g) {
    const auto& p = g.coords();
    const auto& e = g.edges();
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const Point a = p[e[i].u], b = p[e[i].v], c = p[e[j].u], d = p[e[j].v];
            const bool shared = e[i].u == e[j].u || e[i].u == e[j].v || e[i].v == e[j].u || e[i].v == e[j].v;
            const int o1 = side(a, b, c), o2 = side(a, b, d), o3 = side(c, d, a), o4 = side(c, d, b);
            if (!shared) {
                if (o1 * o2 < 0 && o3 * o4 < 0)
                    return false;
                if ((o1 == 0 && within(a, b, c)) || (o2 == 0 && within(a, b, d)) || (o3 == 0 && within(c, d, a)) ||
                    (o4 == 0 && within(c, d, b)))
                    return false;
            } else if (o1 == 0 && o2 == 0) {
                // collinear edges sharing a node must point in different directions
                const NodeId s = (e[i].u == e[j].u || e[i].u == e[j].v) ? e[i].u : e[i].v;
                const Point o = p[s];
                const Point x = p[e[i].u == s ? e[i].v : e[i].u];
                const Point y = p[e[j].u == s ? e[j].v : e[j].u];
                if ((x.x - o.x) * (y.x - o.x) + (x.y - o.y) * (y.y - o.y) > 0)
                    return false;
            }
        }
    return true;
}

bool connected(const WeightedGraph& g) {
    try {
        MetricClosure c(g);
        return true;
    } catch (const GraphError&) {
        return false;
    }
}

std::string dump(const WeightedGraph& g) { return to_json(RdpInstance(g, 1, 1, 1.0, {})).dump(); }

} // namespace

TEST_CASE("splitmix64 reference vector") {
    SplitMix64 sm(0);
    CHECK(sm.next() == 0xE220A8397B1DCDAFull);
    CHECK(sm.next() == 0x6E789E6AA1B965F4ull);
    CHECK(sm.next() == 0x06C45D188009454Full);
}

TEST_CASE("xoshiro256** reference vector") {
    auto r = Rng::from_state(1, 2, 3, 4);
    CHECK(r.next() == 11520ull);
    CHECK(r.next() == 0ull);
    CHECK(r.next() == 1509978240ull);
    CHECK(r.next() == 1215971899390074240ull);
    Rng seeded(42);
    CHECK(seeded.next() == 1546998764402558742ull);
    CHECK(seeded.next() == 6990951692964543102ull);
    CHECK(seeded.next() == 12544586762248559009ull);
}

TEST_CASE("rng distributions") {
    Rng r(7);
    double sum = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
    for (int i = 0; i < n; ++i) {
        const double x = r.normal(0.0, 50.0);
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.5);
    CHECK(std::abs(std::sqrt(sq / n) - 50.0) < 0.5);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(r.below(7) < 7);
}

TEST_CASE("random graphs") {
    const auto g = gen_random(18, 5);
    CHECK(g.edges().size() == 153);
    for (const Point& p : g.coords()) {
        CHECK(p.x >= 0.0);
        CHECK(p.x <= 1.0);
        CHECK(p.y >= 0.0);
        CHECK(p.y <= 1.0);
    }
    CHECK(dump(gen_random(18, 5)) == dump(g));
    CHECK(dump(gen_random(18, 6)) != dump(g));
    CHECK_THROWS_AS(gen_random(1, 5), DomainError);
}

TEST_CASE("center graphs") {
    const auto one = gen_center(18, 3, 1);
    CHECK(one.coords()[0].x == 0.0);
    CHECK(one.coords()[0].y == 0.0);
    CHECK(one.edges().size() == 153);
    CHECK(dump(gen_center(18, 3, 1)) == dump(one));
    const auto two = gen_center(18, 3, 2);
    CHECK(two.coords()[1].x == 200.0);
    CHECK(two.coords()[1].y == 0.0);
    int near_second = 0, total = 0;
    for (std::uint64_t seed = 0; total < 1000; ++seed) {
        const auto g = gen_center(22, seed, 2);
        for (std::size_t v = 2; v < g.node_count() && total < 1000; ++v, ++total) {
            const Point p = g.coords()[v];
            if (euclid(p, {200.0, 0.0}) < euclid(p, {0.0, 0.0}))
                ++near_second;
        }
    }
    CHECK(std::abs(near_second / 1000.0 - 0.5) <= 0.15);
}

TEST_CASE("coastal graphs are planar, connected and hit the edge target") {
    double mean_x = 0.0;
    int count = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto g = gen_coastal(18, seed);
        REQUIRE(g.edges().size() == 36);
        REQUIRE(connected(g));
        REQUIRE(is_planar_drawing(g));
        for (const Edge& e : g.edges())
            REQUIRE(e.length == euclid(g.coords()[e.u], g.coords()[e.v]));
        for (const Point& p : g.coords()) {
            REQUIRE(p.x >= 0.0);
            REQUIRE(p.x <= 1.0);
            REQUIRE(p.y <= 18.0 / 15.0 + 1e-12);
            mean_x += p.x;
            ++count;
        }
    }
    // nodes crowd toward the coastline at x = 0
    CHECK(mean_x / count < 0.4);
    CHECK(dump(gen_coastal(18, 3)) == dump(gen_coastal(18, 3)));
    CHECK(gen_coastal(12, 9, 20).edges().size() == 20);
    CHECK_THROWS_AS(gen_coastal(10, 1, 5), DomainError);
}

TEST_CASE("mountain graphs are planar, connected and prefer valleys") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto g = gen_mountain(18, seed);
        REQUIRE(g.edges().size() == 36);
        REQUIRE(connected(g));
        REQUIRE(is_planar_drawing(g));
    }
    CHECK(dump(gen_mountain(18, 4)) == dump(gen_mountain(18, 4)));
    int below = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto t = gen_mountain_terrain(18, seed * 7);
        const double side = std::sqrt(18.0 / 15.0);
        double field_mean = 0.0;
        for (int i = 0; i <= 100; ++i)
            for (int j = 0; j <= 100; ++j)
                field_mean += t.field(side * i / 100.0, side * j / 100.0);
        field_mean /= 101.0 * 101.0;
        double node_mean = 0.0;
        for (const Point& p : t.graph.coords())
            node_mean += t.field(p.x, p.y);
        node_mean /= static_cast<double>(t.graph.node_count());
        if (node_mean < field_mean)
            ++below;
    }
    // averaged over seeds the nodes sit lower than the terrain
    CHECK(below > 70);
}

TEST_CASE("damage sampling") {
    const auto g = make_star(10000, 1.0);
    CHECK(sample_damage(g, 0.0, 1).empty());
    CHECK(sample_damage(g, 1.0, 1).size() == 10000);
    const auto d = sample_damage(g, 0.3, 11);
    CHECK(std::abs(static_cast<double>(d.size()) / 10000.0 - 0.3) <= 0.02);
    CHECK(sample_damage(g, 0.3, 11) == d);
    for (NodeId v : d)
        REQUIRE(v != kDepot);
    CHECK_THROWS_AS(sample_damage(g, 1.5, 1), DomainError);
}

TEST_CASE("dataset sizes") {
    const auto random = build_dataset("RANDOM", 1);
    std::set<std::string> graphs;
    std::set<std::pair<std::string, double>> damage_sets;
    for (const auto& li : random) {
        graphs.insert(li.graph_id);
        damage_sets.insert({li.graph_id, li.delta});
    }
    CHECK(graphs.size() == 80);
    CHECK(damage_sets.size() == 400);
    CHECK(random.size() == 400 * 5);

    const auto small = build_dataset("SMALL", 1);
    std::set<std::string> small_graphs;
    for (const auto& li : small) {
        small_graphs.insert(li.graph_id);
        REQUIRE(li.instance.node_count() == 13);
    }
    CHECK(small_graphs.size() == 20);
    CHECK(small.size() == 20 * 5 * 3 * 6);
    // SMALL reuses the 13-node graphs and damage sets of RANDOM
    for (const auto& li : small)
        if (li.instance.alpha() == 1.0 && li.instance.trucks() == 1 && li.instance.drones() == 1)
            for (const auto& r : random)
                if (r.graph_id == li.graph_id && r.delta == li.delta && r.instance.alpha() == 1.0)
                    REQUIRE(r.instance.damaged() == li.instance.damaged());

    const auto base = build_dataset("BASE", 1);
    CHECK(base.size() == 20 * 5);
    for (const auto& li : base) {
        REQUIRE(li.delta == 0.3);
        REQUIRE(li.instance.node_count() == 18);
    }
    const auto var = build_dataset("VAR", 1);
    CHECK(var.size() == 100 * 5);
    for (const auto& li : var)
        if (li.graph_class == GraphClass::coastal || li.graph_class == GraphClass::mountain)
            REQUIRE(li.instance.graph().edges().size() == 36);

    const auto again = build_dataset("SMALL", 1);
    REQUIRE(again.size() == small.size());
    for (std::size_t i = 0; i < small.size(); ++i)
        REQUIRE(to_json(again[i].instance).dump() == to_json(small[i].instance).dump());
    CHECK_THROWS_AS(build_dataset("HUGE", 1), DomainError);
}
