#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpg/reductions.hpp"
#include "mpg/simulate.hpp"
#include "test_support.hpp"

using namespace mpg;
using mpg::test::Rng;

namespace {

AlternatingGame coordination_game() {
    std::vector<std::vector<Rat>> u(2, std::vector<Rat>(4, Rat(0)));
    u[0][0] = u[1][0] = 1;
    u[0][3] = u[1][3] = 1;
    return AlternatingGame(2, 2, std::move(u));
}

AlternatingGame constant_game(std::vector<Rat> c) {
    const int k = static_cast<int>(c.size());
    long long profiles = 1;
    for (int i = 0; i < k; ++i) profiles *= 2;
    std::vector<std::vector<Rat>> u(k);
    for (int j = 0; j < k; ++j) u[j].assign(profiles, c[j]);
    return AlternatingGame(k, 2, std::move(u));
}

// Three-edge-cycle schedule with weights (6), (0), (0).
PathSchedule triangle_schedule() {
    PathSchedule s;
    s.dims = 1;
    s.weight_bound = 6;
    ScheduleCycle c;
    c.edges = {{0, 1, {Rat(6)}}, {1, 2, {Rat(0)}}, {2, 0, {Rat(0)}}};
    c.weight = 1;
    c.multiplicity = 1;
    s.cycles.push_back(std::move(c));
    s.connectors.push_back({});
    s.target = {Rat(2)};
    return s;
}

// Two self-loops with orthogonal payoffs joined by zero-weight connectors.
MultiWeightedGraph two_loop_graph() {
    std::vector<Edge> edges{
        {0, 0, {Rat(1), Rat(0)}},
        {1, 1, {Rat(0), Rat(1)}},
        {0, 1, {Rat(0), Rat(0)}},
        {1, 0, {Rat(0), Rat(0)}},
    };
    return MultiWeightedGraph(2, {1, 1}, edges, 0);
}

// Report wrapping a schedule that loops on the mismatched vector (0,1) of
// the coordination game; used to exercise refutation paths.
EquilibriumReport mismatched_report() {
    AlternatingGame game = coordination_game();
    MultiWeightedGraph gg = build_game_graph(game);
    auto profiles = punishment_values(game);

    auto edge_between = [&](int a, int b) {
        for (int e : gg.out_edges(a))
            if (gg.edge(e).dst == b) return ScheduleEdge{a, b, gg.edge(e).w};
        REQUIRE(false);
        return ScheduleEdge{};
    };
    int v01_p1 = 1 * 2 + 0, v01_p2 = 1 * 2 + 1;
    PathSchedule s;
    s.dims = 2;
    s.weight_bound = gg.weight_bound();
    ScheduleCycle c;
    c.edges = {edge_between(v01_p1, v01_p2), edge_between(v01_p2, v01_p1)};
    c.weight = 1;
    c.multiplicity = 1;
    s.cycles.push_back(std::move(c));
    s.connectors.push_back({});
    s.lead_in = {edge_between(0, 1), edge_between(1, v01_p1)};
    s.target = {Rat(0), Rat(0)};

    EquilibriumReport rep;
    rep.mode = EquilibriumReport::Mode::exact;
    rep.players = 2;
    rep.actions = 2;
    rep.nu = {profiles[0].nu, profiles[1].nu};
    rep.utilities = {Rat(0), Rat(0)};
    rep.welfare = 0;
    rep.schedule = std::move(s);
    rep.punishment.assign(2, std::vector<int>(gg.vertex_count(), -1));
    for (int j = 0; j < 2; ++j)
        for (int v = 0; v < gg.vertex_count(); ++v)
            if (int e = profiles[j].sigma_bar.choice[v]; e >= 0)
                rep.punishment[j][v] = gg.edge(e).dst;
    return rep;
}

}  // namespace

TEST_CASE("simulate") {
    SUBCASE("cycle repetition is exact at multiples of the cycle length") {
        PathSchedule s = triangle_schedule();
        std::vector<long long> marks{3, 6, 9, 300};
        auto points = simulate(s, 300, marks);
        REQUIRE(points.size() == 4);
        for (const auto& p : points) CHECK(p.average == std::vector<Rat>{Rat(2)});
    }
    SUBCASE("horizon 1 returns the first edge weight") {
        auto points = simulate(triangle_schedule(), 1);
        REQUIRE(points.size() == 1);
        CHECK(points[0].average == std::vector<Rat>{Rat(6)});
    }
    SUBCASE("two-block schedule closes on its target at long horizons") {
        MultiWeightedGraph g = two_loop_graph();
        std::vector<WeightedCycle> cycles{{{0}, Rat(1, 2)}, {{1}, Rat(1, 2)}};
        std::vector<Rat> target{Rat(1, 2), Rat(1, 2)};
        PathSchedule s = schedule_from_cycles(g, cycles, target);
        auto points = simulate(s, 100000, std::vector<long long>{100000});
        for (int d = 0; d < 2; ++d) CHECK(target[d] - points[0].average[d] < Rat(1, 20));
    }
    SUBCASE("a target below the mix is eventually cleared for good") {
        MultiWeightedGraph g = two_loop_graph();
        std::vector<WeightedCycle> cycles{{{0}, Rat(1, 2)}, {{1}, Rat(1, 2)}};
        std::vector<Rat> target{Rat(1, 4), Rat(1, 4)};
        PathSchedule s = schedule_from_cycles(g, cycles, target);
        auto points = simulate(s, 100000, std::vector<long long>{10000, 50000, 100000});
        for (const auto& p : points)
            for (int d = 0; d < 2; ++d) CHECK(p.average[d] > target[d] - Rat(1, 20));
    }
    SUBCASE("cycle-repetition deviations from the mean are periodic") {
        PathSchedule s = triangle_schedule();
        std::vector<long long> marks{1, 2, 3, 4, 5, 6, 7, 8, 9};
        auto points = simulate(s, 9, marks);
        const Rat mean(2);
        // avg(t)*t - t*mean depends only on t mod cycle length.
        for (int t = 1; t <= 6; ++t) {
            Rat dev_t = points[t - 1].average[0] * Rat(t) - Rat(t) * mean;
            Rat dev_next = points[t + 2].average[0] * Rat(t + 3) - Rat(t + 3) * mean;
            CHECK(dev_t == dev_next);
        }
    }
    SUBCASE("bad checkpoints are rejected") {
        CHECK_THROWS_AS(simulate(triangle_schedule(), 10, std::vector<long long>{11}),
                        std::invalid_argument);
        CHECK_THROWS_AS(simulate(triangle_schedule(), 0), std::invalid_argument);
    }
}

TEST_CASE("certify_equilibrium") {
    SUBCASE("optimal reports certify at eps = 0") {
        AlternatingGame game = coordination_game();
        auto report = optimal_exact_equilibrium(game);
        auto res = certify_equilibrium(game, report, Rat(0));
        CHECK(res.certified);
    }
    SUBCASE("mismatched loop is refuted by 1/2 at eps = 0") {
        AlternatingGame game = coordination_game();
        auto res = certify_equilibrium(game, mismatched_report(), Rat(0));
        CHECK(!res.certified);
        CHECK(res.player == 1);
        CHECK(res.margin == Rat(1, 2));
    }
    SUBCASE("the same loop certifies at eps = 1") {
        AlternatingGame game = coordination_game();
        CHECK(certify_equilibrium(game, mismatched_report(), Rat(1)).certified);
    }
    SUBCASE("negative eps is rejected") {
        AlternatingGame game = coordination_game();
        CHECK_THROWS_AS(certify_equilibrium(game, mismatched_report(), Rat(-1)),
                        std::invalid_argument);
    }
}

TEST_CASE("deviation_probe") {
    SUBCASE("constant game: no deviation can gain anything") {
        AlternatingGame game = constant_game({Rat(1, 4), Rat(-1, 4)});
        auto report = folk_equilibrium(game);
        CHECK(deviation_probe(game, report, 1, 3000) == Rat(0));
        CHECK(deviation_probe(game, report, 2, 3000) == Rat(0));
    }
    SUBCASE("folk equilibrium of zero-sum games resists greedy deviation") {
        Rng rng(137);
        for (int trial = 0; trial < 4; ++trial) {
            AlternatingGame zs = mpg::test::random_zero_sum_game(rng, 2);
            auto report = folk_equilibrium(zs);
            const long long horizon = 4000;
            Rat slack = Rat(2 * zs.players()) * Rat(1) / Rat(horizon);
            CHECK(deviation_probe(zs, report, 1, horizon) <= slack);
            CHECK(deviation_probe(zs, report, 2, horizon) <= slack);
        }
    }
    SUBCASE("a report that undersells the punishment values is exploitable") {
        AlternatingGame game = coordination_game();
        Rat gain = deviation_probe(game, mismatched_report(), 1, 10000);
        CHECK(gain > Rat(1, 4));  // the deviator recovers about nu_1 = 1/2
    }
}
