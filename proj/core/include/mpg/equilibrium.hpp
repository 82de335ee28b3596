#pragma once

#include "mpg/alt_game.hpp"
#include "mpg/graph.hpp"
#include "mpg/schedule.hpp"
#include "mpg/solver.hpp"

#include <span>
#include <variant>
#include <vector>

namespace mpg {

/// LP certificate of an achievable mean-payoff vector: nonnegative edge flow
/// with conservation, total mass 1, supported inside one reachable SCC.
struct Circulation {
    int scc = -1;
    std::vector<Rat> flow;  // per edge id of the graph
    std::vector<Rat> mean;  // per dimension, sum_e flow_e * w_d(e)
};

struct WelfareLpOutcome {
    bool feasible = false;
    std::vector<Rat> t;  // per-player utility floor variables at the optimum
    Rat welfare;
    Circulation circulation;
};

/// Per reachable SCC: maximize sum(t) subject to flow conservation, total
/// flow 1, per-dimension mean >= t, t >= floors; returns the best SCC's
/// optimum (ties to the lowest SCC id) or infeasible when no SCC admits a
/// feasible point.
WelfareLpOutcome feasible_welfare_lp(const MultiWeightedGraph& g, std::span<const Rat> floors);

struct WeightedCycle {
    std::vector<int> edges;  // edge ids of a simple cycle
    Rat weight;              // time fraction; all weights sum to 1
};

/// Standard flow decomposition of a circulation into at most |E| simple
/// cycles; cycle j gets time weight flow_j * length_j so the weighted cycle
/// means reproduce the circulation mean exactly.
std::vector<WeightedCycle> cycle_decompose(const MultiWeightedGraph& g, const Circulation& c);

/// Assemble the infinite-path schedule reaching liminf mean >= target from a
/// cycle decomposition (cycles must share an SCC and the weighted mean must
/// dominate the target).
PathSchedule schedule_from_cycles(const MultiWeightedGraph& g,
                                  const std::vector<WeightedCycle>& cycles,
                                  std::span<const Rat> target);

/// Punishment data of one player: the exact value nu_i of the zero-sum game
/// G^i, the punished player's optimal strategy (max side) and the coalition's
/// optimal counter-strategy (min side). Strategies index edges of the game
/// graph built by build_game_graph.
struct PunishmentProfile {
    Rat nu;
    MemorylessStrategy sigma;
    MemorylessStrategy sigma_bar;
};

std::vector<PunishmentProfile> punishment_values(const AlternatingGame& game);

/// Exact nu vector only (no strategy extraction).
std::vector<Rat> punishment_vector(const AlternatingGame& game);

struct EquilibriumReport {
    enum class Mode { exact, approximate };
    Mode mode = Mode::exact;
    Rat eps, delta;  // approximate mode only
    int players = 0;
    int actions = 0;
    std::vector<Rat> nu;         // exact nu, or the zeta-approximations r_i
    std::vector<Rat> utilities;  // t vector
    Rat welfare;
    PathSchedule schedule;
    // punishment[j-1][v]: successor vertex the coalition picks at game-graph
    // vertex v when punishing player j; -1 on player j's own vertices.
    std::vector<std::vector<int>> punishment;
};

/// Folk-theorem baseline: every player follows its own guarantee strategy;
/// utilities are the mean of the unique induced lasso play.
EquilibriumReport folk_equilibrium(const AlternatingGame& game);

/// Welfare-optimal exact equilibrium (floors = exact nu, then the welfare LP
/// over the game graph).
EquilibriumReport optimal_exact_equilibrium(const AlternatingGame& game);

/// FPTAS: zeta = eps*delta/4k approximation r of nu, floors r - (eps - zeta);
/// the result is an eps-equilibrium whose welfare is delta-close to the
/// optimal eps-equilibrium welfare.
EquilibriumReport fptas_equilibrium(const AlternatingGame& game, const Rat& eps, const Rat& delta);

struct PathRejection {
    int player = 0;
    Rat shortfall;  // nu_i - t_i of the worst violator
};

/// Accepts a schedule as an equilibrium play iff its mean dominates nu.
std::variant<EquilibriumReport, PathRejection> path_equilibrium(const AlternatingGame& game,
                                                                const PathSchedule& schedule);

/// Three-player hardness gadget over a two-player zero-sum game: both
/// original players gain an opt-out action, and a choice-less third player
/// is rewarded exactly when player 1 opts out. Action sets are padded to
/// uniform size.
AlternatingGame hardness_gadget(const AlternatingGame& zs);

}  // namespace mpg
