#pragma once

#include "mpg/alt_game.hpp"
#include "mpg/graph.hpp"

#include <vector>

namespace mpg {

/// Two-player zero-sum alternating game -> complete bipartite mean-payoff
/// game. Player-1 actions become maximizer vertices 0..n-1, player-2 actions
/// minimizer vertices n..2n-1; both directions of a pair carry u_1(a1,a2).
/// Throws std::invalid_argument unless k = 2 and u_2 = -u_1 exactly.
MeanPayoffGame alt_zero_sum_to_mpg(const AlternatingGame& zs);

/// Undirected complete bipartite mean-payoff game -> zero-sum alternating
/// game with u_1 = w/W (W = least weight bound, forced to 1 for an all-zero
/// game). Player-1 actions are the minimizer vertices, player-2 actions the
/// maximizer vertices; a smaller side is padded by repeating its last vertex
/// so the action count is uniform. Throws unless both flags are set and hold.
AlternatingGame mpg_to_alt(const MeanPayoffGame& game);

/// Weight normalization of a bipartite game: +(W+1) on maximizer
/// out-edges, -(W+1) on minimizer out-edges. Cycle means are unchanged
/// because the shifts cancel pairwise on bipartite cycles.
MeanPayoffGame normalize(const MeanPayoffGame& game);

struct LosingEdges {
    std::vector<int> max_losing;  // maximizer out-edges (v1,v2) with w(v1,v2)+w(v2,v1) < 0
    std::vector<int> min_losing;  // minimizer out-edges (v2,v1) with w(v1,v2)+w(v2,v1) >= 0
};

/// Requires a normalized complete bipartite game (flags set and valid).
LosingEdges surely_losing_edges(const MeanPayoffGame& game);

/// Directed normalized complete bipartite game -> undirected game keeping,
/// per vertex pair, the weight of the direction that is not surely losing.
/// Preserves the winner at threshold 0.
MeanPayoffGame directed_to_undirected(const MeanPayoffGame& game);

/// k-player game graph of an alternating game: vertices (action vector, turn)
/// with id = vec_index * k + (turn - 1), an edge per choice of the moving
/// player's next action, weight vector = all players' utilities of the target
/// action vector. The initial vertex is (all-zero vector, player 1).
MultiWeightedGraph build_game_graph(const AlternatingGame& game);

/// Scalar zero-sum view of the game graph for punishing one player: the
/// punished player's vertices become the maximizer, everyone else the
/// minimizer, weights are that player's utility dimension. The result is
/// generally not bipartite in the max/min sense.
MeanPayoffGame punishment_game(const MultiWeightedGraph& game_graph, int player);

}  // namespace mpg
