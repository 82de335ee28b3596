#pragma once

#include "mpg/graph.hpp"
#include "mpg/rational.hpp"

#include <vector>

namespace mpg {

struct ValueTable {
    enum class Mode { exact, approximate };
    std::vector<Rat> values;  // per vertex
    long long iterations = 0;
    Rat weight_bound;  // max |w| in the game's own units
    Mode mode = Mode::exact;
    Rat zeta;  // approximation radius, approximate mode only
};

/// One chosen out-edge id per owned vertex, -1 elsewhere.
struct MemorylessStrategy {
    std::vector<int> choice;
};

enum class Winner { MaxWins, MinWins };

enum class CycleMode { Maximize, Minimize };

struct OnePlayerResult {
    Rat value;
    std::vector<int> cycle;  // edge ids of a simple cycle attaining the value
};

struct StrategyPair {
    MemorylessStrategy max_strategy;
    MemorylessStrategy min_strategy;
    Rat value;  // exact game value at the initial vertex
};

/// v_T(u)/T of the Zwick-Paterson iteration: v_0 = 0 and
/// v_t(u) = max/min over out-edges (u,u') of w(u,u') + v_{t-1}(u').
/// |v_T(u)/T - value(u)| <= 2|V|W/T.
std::vector<Rat> value_iteration(const MeanPayoffGame& game, long long T);

/// Exact per-vertex values: runs the iteration long enough that the error
/// interval holds a unique rational whose denominator (in cleared-integer
/// units) is at most |V|, then rounds to it. Values of a game with rational
/// weights have denominator at most |V| times the common weight denominator.
ValueTable exact_values(const MeanPayoffGame& game);

/// Per-vertex values within zeta of the exact ones (T = ceil(2|V|W/zeta)).
ValueTable approx_values(const MeanPayoffGame& game, const Rat& zeta);

/// Maximizer wins at value >= threshold, minimizer strictly below.
Winner winner(const MeanPayoffGame& game, const Rat& threshold);

/// Best (or worst) mean of a cycle reachable from the initial vertex of a
/// scalar graph where at most one player has real choices, plus a simple
/// cycle attaining it. Karp's algorithm with exact rationals.
OnePlayerResult one_player_value(const MultiWeightedGraph& g, CycleMode mode);

/// Optimal memoryless strategies for both players, extracted by iterative
/// edge fixing: an edge is kept only if the residual game's exact value at
/// the initial vertex is unchanged.
StrategyPair optimal_strategies(const MeanPayoffGame& game);

/// Testing oracle: enumerates every memoryless strategy pair, evaluates the
/// eventual cycle of each induced play, and returns max-min values. Also
/// checks max-min = min-max (memoryless determinacy) and throws
/// std::logic_error on a violation. Guarded: throws std::invalid_argument
/// when the instance is too large to enumerate.
ValueTable brute_force_values(const MeanPayoffGame& game);

}  // namespace mpg
