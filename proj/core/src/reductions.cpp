#include "mpg/reductions.hpp"

#include <stdexcept>
#include <string>

namespace mpg {

namespace {

void require_flags(const MeanPayoffGame& game, bool complete, bool undirected, bool normalized) {
    const MpgFlags& f = game.flags();
    if ((complete && !f.complete_bipartite) || (undirected && !f.undirected) ||
        (normalized && !f.normalized))
        throw std::invalid_argument("reduction: required graph flags are not set");
    game.require_valid();
}

// Reverse edge of (src,dst) in a complete bipartite graph.
int reverse_edge(const MultiWeightedGraph& g, int e) {
    const Edge& ed = g.edge(e);
    for (int back : g.out_edges(ed.dst))
        if (g.edge(back).dst == ed.src) return back;
    throw std::invalid_argument("reduction: missing reverse edge");
}

}  // namespace

MeanPayoffGame alt_zero_sum_to_mpg(const AlternatingGame& zs) {
    if (zs.players() != 2) throw std::invalid_argument("alt_zero_sum_to_mpg: two players required");
    if (!zs.is_zero_sum()) throw std::invalid_argument("alt_zero_sum_to_mpg: game is not zero-sum");
    const int n = zs.actions();
    std::vector<int> owners(2 * n);
    for (int a = 0; a < n; ++a) owners[a] = 1;
    for (int a = 0; a < n; ++a) owners[n + a] = 2;
    std::vector<Edge> edges;
    edges.reserve(2 * n * n);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            int actions[2] = {a1, a2};
            Rat u = zs.utility(1, zs.encode(actions));
            edges.push_back({a1, n + a2, {u}});
            edges.push_back({n + a2, a1, {u}});
        }
    }
    MpgFlags flags;
    flags.bipartite = true;
    flags.complete_bipartite = true;
    flags.undirected = true;
    return MeanPayoffGame(MultiWeightedGraph(1, std::move(owners), std::move(edges), 0), flags);
}

AlternatingGame mpg_to_alt(const MeanPayoffGame& game) {
    require_flags(game, /*complete=*/true, /*undirected=*/true, /*normalized=*/false);
    const auto& g = game.graph();
    std::vector<int> side1, side2;
    for (int v = 0; v < g.vertex_count(); ++v) (g.owner(v) == 1 ? side1 : side2).push_back(v);
    if (side1.empty() || side2.empty())
        throw std::invalid_argument("mpg_to_alt: both sides must be nonempty");
    const int n = static_cast<int>(std::max(side1.size(), side2.size()));
    auto pick = [&](const std::vector<int>& side, int a) {
        return a < static_cast<int>(side.size()) ? side[a] : side.back();
    };

    Rat bound = g.weight_bound();
    const Rat w_cap = bound == 0 ? Rat(1) : bound;  // all-zero games would give W = 0

    std::vector<std::vector<Rat>> weight_of(g.vertex_count(),
                                            std::vector<Rat>(g.vertex_count(), Rat(0)));
    for (const Edge& e : g.edges()) weight_of[e.src][e.dst] = e.w[0];

    std::vector<std::vector<Rat>> u(2);
    u[0].resize(static_cast<size_t>(n) * n);
    u[1].resize(static_cast<size_t>(n) * n);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            // Player-1 actions are minimizer vertices, player-2 actions
            // maximizer vertices; the shared undirected weight is scaled.
            Rat val = weight_of[pick(side2, a1)][pick(side1, a2)] / w_cap;
            u[0][static_cast<size_t>(a1) * n + a2] = val;
            u[1][static_cast<size_t>(a1) * n + a2] = -val;
        }
    }
    return AlternatingGame(2, n, std::move(u));
}

MeanPayoffGame normalize(const MeanPayoffGame& game) {
    if (!game.flags().bipartite)
        throw std::invalid_argument("normalize: bipartite games only");
    game.require_valid();
    const auto& g = game.graph();
    const Rat shift = g.weight_bound() + 1;
    std::vector<Edge> edges = g.edges();
    for (Edge& e : edges) e.w[0] += g.owner(e.src) == 1 ? shift : Rat(-shift);
    std::vector<int> owners(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) owners[v] = g.owner(v);
    MpgFlags flags = game.flags();
    flags.normalized = true;
    flags.undirected = false;
    return MeanPayoffGame(
        MultiWeightedGraph(1, std::move(owners), std::move(edges), g.initial_vertex()), flags);
}

LosingEdges surely_losing_edges(const MeanPayoffGame& game) {
    require_flags(game, /*complete=*/true, /*undirected=*/false, /*normalized=*/true);
    const auto& g = game.graph();
    LosingEdges out;
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        Rat round_trip = ed.w[0] + g.edge(reverse_edge(g, e)).w[0];
        if (g.owner(ed.src) == 1 && round_trip < 0) out.max_losing.push_back(e);
        if (g.owner(ed.src) == 2 && round_trip >= 0) out.min_losing.push_back(e);
    }
    return out;
}

MeanPayoffGame directed_to_undirected(const MeanPayoffGame& game) {
    require_flags(game, /*complete=*/true, /*undirected=*/false, /*normalized=*/true);
    const auto& g = game.graph();
    std::vector<Edge> edges = g.edges();
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& fwd = g.edge(e);
        if (g.owner(fwd.src) != 1) continue;
        const int rev = reverse_edge(g, e);
        Rat sum = fwd.w[0] + g.edge(rev).w[0];
        Rat kept = sum >= 0 ? fwd.w[0] : g.edge(rev).w[0];
        edges[e].w[0] = kept;
        edges[rev].w[0] = kept;
    }
    std::vector<int> owners(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) owners[v] = g.owner(v);
    MpgFlags flags = game.flags();
    flags.undirected = true;
    flags.normalized = false;  // not claimed after the rewrite
    return MeanPayoffGame(
        MultiWeightedGraph(1, std::move(owners), std::move(edges), g.initial_vertex()), flags);
}

MultiWeightedGraph build_game_graph(const AlternatingGame& game) {
    const int k = game.players();
    const int n = game.actions();
    const long long profiles = game.profile_count();
    const long long vertex_count = profiles * k;
    if (vertex_count * n > (1LL << 26))
        throw std::invalid_argument("build_game_graph: game graph too large");

    std::vector<int> owners(vertex_count);
    for (long long vec = 0; vec < profiles; ++vec)
        for (int i = 1; i <= k; ++i) owners[vec * k + (i - 1)] = i;

    std::vector<Edge> edges;
    edges.reserve(static_cast<size_t>(vertex_count) * n);
    for (long long vec = 0; vec < profiles; ++vec) {
        for (int i = 1; i <= k; ++i) {
            const int src = static_cast<int>(vec * k + (i - 1));
            const int next_player = i == k ? 1 : i + 1;
            for (int a = 0; a < n; ++a) {
                const long long nvec = game.with_action(vec, i, a);
                const int dst = static_cast<int>(nvec * k + (next_player - 1));
                std::vector<Rat> w(k);
                for (int j = 1; j <= k; ++j) w[j - 1] = game.utility(j, nvec);
                edges.push_back({src, dst, std::move(w)});
            }
        }
    }
    return MultiWeightedGraph(k, std::move(owners), std::move(edges), 0);
}

MeanPayoffGame punishment_game(const MultiWeightedGraph& game_graph, int player) {
    if (player < 1 || player > game_graph.dims())
        throw std::invalid_argument("punishment_game: player out of range");
    const int n = game_graph.vertex_count();
    std::vector<int> owners(n);
    for (int v = 0; v < n; ++v) owners[v] = game_graph.owner(v) == player ? 1 : 2;
    std::vector<Edge> edges;
    edges.reserve(game_graph.edge_count());
    for (const Edge& e : game_graph.edges())
        edges.push_back({e.src, e.dst, {e.w[player - 1]}});
    return MeanPayoffGame(
        MultiWeightedGraph(1, std::move(owners), std::move(edges), game_graph.initial_vertex()),
        MpgFlags{});
}

}  // namespace mpg
