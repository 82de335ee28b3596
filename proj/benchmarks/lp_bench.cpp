#include "mpg/equilibrium.hpp"
#include "mpg/lp.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mpg;

namespace {

// Circulation-style welfare LP over a random multi-weighted graph.
MultiWeightedGraph random_multi(unsigned seed, int n, int k) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> vdist(0, n - 1), wdist(-2, 2), ddist(1, 3);
    std::vector<int> owners(n);
    for (int v = 0; v < n; ++v) owners[v] = v % k + 1;
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) {
        int deg = ddist(rng);
        for (int d = 0; d < deg; ++d) {
            Edge e{v, vdist(rng), {}};
            for (int i = 0; i < k; ++i) e.w.push_back(Rat(wdist(rng), 2));
            edges.push_back(std::move(e));
        }
    }
    return MultiWeightedGraph(k, owners, edges, 0);
}

void BM_welfare_lp(benchmark::State& state) {
    const int k = 3;
    MultiWeightedGraph g = random_multi(23, static_cast<int>(state.range(0)), k);
    std::vector<Rat> floors(k, Rat(-1));
    for (auto _ : state) benchmark::DoNotOptimize(feasible_welfare_lp(g, floors));
}
BENCHMARK(BM_welfare_lp)->Arg(8)->Arg(24)->Arg(64)->Arg(192);

void BM_simplex_dense(benchmark::State& state) {
    // max 1'x s.t. random dense rows, box bounds.
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> cdist(-3, 3);
    const int n = static_cast<int>(state.range(0));
    LinearProgram lp;
    lp.vars.resize(n);
    for (auto& v : lp.vars) {
        v.lower = Rat(-2);
        v.upper = Rat(2);
    }
    lp.objective.assign(n, Rat(1));
    for (int i = 0; i < 2 * n; ++i) {
        LpConstraint c;
        c.coeffs.resize(n);
        for (int j = 0; j < n; ++j) c.coeffs[j] = Rat(cdist(rng));
        c.rel = Relation::LessEq;
        c.rhs = Rat(4);
        lp.constraints.push_back(std::move(c));
    }
    for (auto _ : state) benchmark::DoNotOptimize(solve_lp(lp));
}
BENCHMARK(BM_simplex_dense)->Arg(4)->Arg(12)->Arg(24);

}  // namespace
