#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mpg/solver.hpp"
#include "test_support.hpp"

using namespace mpg;
using mpg::test::Rng;

namespace {

// 1x1 complete bipartite game: maximizer vertex 0 -> 1 with weight p,
// minimizer vertex 1 -> 0 with weight q. Play is forced.
MeanPayoffGame two_vertex_game(const Rat& p, const Rat& q) {
    MpgFlags flags;
    flags.bipartite = true;
    flags.complete_bipartite = true;
    return MeanPayoffGame(MultiWeightedGraph(1, {1, 2}, {{0, 1, {p}}, {1, 0, {q}}}, 0), flags);
}

}  // namespace

TEST_CASE("value_iteration examples") {
    SUBCASE("forced 1x1 play, T=2") {
        auto vals = value_iteration(two_vertex_game(Rat(3), Rat(-8)), 2);
        CHECK(vals[0] == Rat(-5, 2));
    }
    SUBCASE("T=1 at a maximizer vertex is the best out-edge weight") {
        MeanPayoffGame g(MultiWeightedGraph(1, {1, 2}, {{0, 1, {Rat(4)}}, {0, 1, {Rat(-1)}}, {1, 0, {Rat(7)}}}, 0),
                         MpgFlags{});
        CHECK(value_iteration(g, 1)[0] == Rat(4));
    }
    SUBCASE("random bipartite games stay within 2|V|W/T of the oracle") {
        Rng rng(23);
        for (int trial = 0; trial < 25; ++trial) {
            MeanPayoffGame g = mpg::test::random_bipartite_game(rng, 3, 4);
            const int n = g.graph().vertex_count();
            const Rat w = g.graph().weight_bound();
            if (w == 0) continue;
            long long T = (4LL * n * n * n * rat_num(w).convert_to<long long>());
            auto approx = value_iteration(g, T);
            auto oracle = brute_force_values(g);
            Rat bound = Rat(2 * n) * w / Rat(T);
            for (int v = 0; v < n; ++v) CHECK(abs_rat(approx[v] - oracle.values[v]) <= bound);
        }
    }
    SUBCASE("T=0 is rejected") {
        CHECK_THROWS_AS(value_iteration(two_vertex_game(Rat(0), Rat(0)), 0), std::invalid_argument);
    }
}

TEST_CASE("exact_values examples") {
    SUBCASE("symmetric two-cycle has value 0") {
        auto table = exact_values(two_vertex_game(Rat(2), Rat(-2)));
        CHECK(table.values[0] == Rat(0));
        CHECK(table.values[1] == Rat(0));
    }
    SUBCASE("forced 1x1 play averages the two weights") {
        auto table = exact_values(two_vertex_game(Rat(5), Rat(2)));
        CHECK(table.values[0] == Rat(7, 2));
        CHECK(table.values[1] == Rat(7, 2));
        CHECK(table.mode == ValueTable::Mode::exact);
    }
    SUBCASE("rational weights are handled exactly") {
        auto table = exact_values(two_vertex_game(Rat(1, 3), Rat(1, 2)));
        CHECK(table.values[0] == Rat(5, 12));
    }
    SUBCASE("random games equal the brute-force oracle, exactly") {
        Rng rng(31);
        for (int trial = 0; trial < 60; ++trial) {
            MeanPayoffGame g = mpg::test::random_game(rng, 8, 4);
            auto exact = exact_values(g);
            auto oracle = brute_force_values(g);
            const int n = g.graph().vertex_count();
            for (int v = 0; v < n; ++v) {
                CHECK(exact.values[v] == oracle.values[v]);
                CHECK(rat_den(exact.values[v]) <= n);
                CHECK(abs_rat(exact.values[v]) <= exact.weight_bound);
            }
        }
    }
}

TEST_CASE("approx_values examples") {
    SUBCASE("contains the exact case") {
        auto table = approx_values(two_vertex_game(Rat(5), Rat(2)), Rat(1, 7));
        CHECK(abs_rat(table.values[0] - Rat(7, 2)) <= Rat(1, 7));
        CHECK(table.mode == ValueTable::Mode::approximate);
        CHECK(table.zeta == Rat(1, 7));
    }
    SUBCASE("zeta >= 2W still returns values within zeta") {
        auto table = approx_values(two_vertex_game(Rat(1), Rat(-1)), Rat(4));
        CHECK(abs_rat(table.values[0] - Rat(0)) <= Rat(4));
    }
    SUBCASE("random games, zeta = 1/10") {
        Rng rng(37);
        for (int trial = 0; trial < 20; ++trial) {
            MeanPayoffGame g = mpg::test::random_game(rng, 6, 3);
            auto approx = approx_values(g, Rat(1, 10));
            auto oracle = brute_force_values(g);
            for (size_t v = 0; v < approx.values.size(); ++v)
                CHECK(abs_rat(approx.values[v] - oracle.values[v]) <= Rat(1, 10));
        }
    }
    SUBCASE("zeta must be positive") {
        CHECK_THROWS_AS(approx_values(two_vertex_game(Rat(0), Rat(0)), Rat(0)), std::invalid_argument);
    }
}

TEST_CASE("one_player_value examples") {
    SUBCASE("single self-loop") {
        MultiWeightedGraph g(1, {1}, {{0, 0, {Rat(7, 3)}}}, 0);
        auto res = one_player_value(g, CycleMode::Maximize);
        CHECK(res.value == Rat(7, 3));
        CHECK(res.cycle == std::vector<int>{0});
    }
    SUBCASE("two reachable loops, max picks the better one") {
        MultiWeightedGraph g(1, {1, 1, 1},
                             {{0, 1, {Rat(0)}}, {0, 2, {Rat(0)}}, {1, 1, {Rat(1)}}, {2, 2, {Rat(3)}}}, 0);
        CHECK(one_player_value(g, CycleMode::Maximize).value == Rat(3));
        CHECK(one_player_value(g, CycleMode::Minimize).value == Rat(1));
    }
    SUBCASE("random graphs equal the best simple-cycle mean") {
        Rng rng(41);
        for (int trial = 0; trial < 60; ++trial) {
            MeanPayoffGame g = mpg::test::random_game(rng, 8, 4);
            const auto& graph = g.graph();
            auto reach = reachable_set(graph, graph.initial_vertex());
            std::optional<Rat> best_max, best_min;
            for (const auto& cyc : mpg::test::simple_cycles(graph)) {
                if (!reach[graph.edge(cyc[0]).src]) continue;
                Rat mean = mpg::test::cycle_mean(graph, cyc)[0];
                if (!best_max || mean > *best_max) best_max = mean;
                if (!best_min || mean < *best_min) best_min = mean;
            }
            REQUIRE(best_max.has_value());
            auto vmax = one_player_value(graph, CycleMode::Maximize);
            auto vmin = one_player_value(graph, CycleMode::Minimize);
            CHECK(vmax.value == *best_max);
            CHECK(vmin.value == *best_min);
            // The witness really is a reachable cycle attaining the value.
            CHECK(mpg::test::cycle_mean(graph, vmax.cycle)[0] == *best_max);
            CHECK(mpg::test::cycle_mean(graph, vmin.cycle)[0] == *best_min);
            CHECK(reach[graph.edge(vmax.cycle[0]).src]);
        }
    }
}

TEST_CASE("winner examples") {
    SUBCASE("zero game at threshold 0 goes to the maximizer") {
        CHECK(winner(two_vertex_game(Rat(0), Rat(0)), Rat(0)) == Winner::MaxWins);
    }
    SUBCASE("negative value loses at threshold 0") {
        CHECK(winner(two_vertex_game(Rat(1), Rat(-2)), Rat(0)) == Winner::MinWins);
    }
    SUBCASE("random games agree with the oracle value") {
        Rng rng(43);
        for (int trial = 0; trial < 40; ++trial) {
            MeanPayoffGame g = mpg::test::random_game(rng, 7, 4);
            Rat nu = brute_force_values(g).values[g.graph().initial_vertex()];
            CHECK(winner(g, nu) == Winner::MaxWins);
            CHECK((winner(g, Rat(0)) == Winner::MaxWins) == (nu >= 0));
            const int n = g.graph().vertex_count();
            if (n >= 2) {
                Rat bump = Rat(1, static_cast<long>(n) * (n - 1));
                CHECK(winner(g, nu + bump) == Winner::MinWins);
            }
        }
    }
}

TEST_CASE("optimal_strategies examples") {
    SUBCASE("1x1 game has only one strategy pair") {
        auto pair = optimal_strategies(two_vertex_game(Rat(5), Rat(2)));
        CHECK(pair.value == Rat(7, 2));
        CHECK(pair.max_strategy.choice[0] == 0);
        CHECK(pair.min_strategy.choice[1] == 1);
    }
    SUBCASE("dominant edge is chosen") {
        // Maximizer vertex 0 with parallel edges of weight 5 and -5 into the
        // minimizer vertex 1, which returns with weight 0.
        MeanPayoffGame g(MultiWeightedGraph(1, {1, 2},
                                            {{0, 1, {Rat(5)}}, {0, 1, {Rat(-5)}}, {1, 0, {Rat(0)}}}, 0),
                         MpgFlags{});
        auto pair = optimal_strategies(g);
        CHECK(pair.value == Rat(5, 2));
        CHECK(pair.max_strategy.choice[0] == 0);
    }
    SUBCASE("extracted strategies achieve the oracle value") {
        Rng rng(47);
        for (int trial = 0; trial < 25; ++trial) {
            MeanPayoffGame g = mpg::test::random_game(rng, 6, 3);
            Rat nu = brute_force_values(g).values[g.graph().initial_vertex()];
            auto pair = optimal_strategies(g);
            CHECK(pair.value == nu);
            for (int v = 0; v < g.graph().vertex_count(); ++v) {
                if (g.graph().owner(v) == 1) {
                    CHECK(pair.max_strategy.choice[v] >= 0);
                    CHECK(g.graph().edge(pair.max_strategy.choice[v]).src == v);
                    CHECK(pair.min_strategy.choice[v] == -1);
                } else {
                    CHECK(pair.min_strategy.choice[v] >= 0);
                    CHECK(pair.max_strategy.choice[v] == -1);
                }
            }
        }
    }
}

TEST_CASE("brute_force_values examples") {
    SUBCASE("forced 1x1 play") {
        CHECK(brute_force_values(two_vertex_game(Rat(5), Rat(2))).values[0] == Rat(7, 2));
    }
    SUBCASE("maximizer without choices gets the minimum cycle mean") {
        // Max vertex 0 forced into min vertex 1, which picks its return edge.
        MeanPayoffGame g(MultiWeightedGraph(1, {1, 2},
                                            {{0, 1, {Rat(0)}}, {1, 0, {Rat(4)}}, {1, 0, {Rat(-6)}}}, 0),
                         MpgFlags{});
        CHECK(brute_force_values(g).values[0] == Rat(-3));
    }
    SUBCASE("determinacy holds on random games") {
        // maxmin == minmax is asserted inside the oracle itself.
        Rng rng(53);
        for (int trial = 0; trial < 200; ++trial)
            CHECK_NOTHROW(brute_force_values(mpg::test::random_game(rng, 8, 4)));
    }
    SUBCASE("guard rejects oversized instances") {
        std::vector<int> owners(13, 1);
        std::vector<Edge> edges;
        for (int v = 0; v < 13; ++v) edges.push_back({v, (v + 1) % 13, {Rat(0)}});
        MeanPayoffGame g(MultiWeightedGraph(1, owners, edges, 0), MpgFlags{});
        CHECK_THROWS_AS(brute_force_values(g), std::invalid_argument);
    }
}

TEST_CASE("value-iteration error bound validates and shrinks when T doubles") {
    Rng rng(59);
    const long long T = 64;
    Rat worst_t = 0, worst_2t = 0;  // across the oracle set
    for (int trial = 0; trial < 15; ++trial) {
        MeanPayoffGame g = mpg::test::random_game(rng, 6, 3);
        auto oracle = brute_force_values(g);
        const int n = g.graph().vertex_count();
        const Rat w = g.graph().weight_bound();
        auto vt = value_iteration(g, T);
        auto v2t = value_iteration(g, 2 * T);
        for (int v = 0; v < n; ++v) {
            Rat err_t = abs_rat(vt[v] - oracle.values[v]);
            Rat err_2t = abs_rat(v2t[v] - oracle.values[v]);
            // The adopted convergence constant really bounds the error.
            CHECK(err_t <= Rat(2 * n) * w / Rat(T));
            CHECK(err_2t <= Rat(2 * n) * w / Rat(2 * T));
            worst_t = std::max(worst_t, err_t);
            worst_2t = std::max(worst_2t, err_2t);
        }
    }
    CHECK(worst_2t <= worst_t);
}
