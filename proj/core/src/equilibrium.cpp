#include "mpg/equilibrium.hpp"

#include "mpg/lp.hpp"
#include "mpg/reductions.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace mpg {

namespace {

// Rotate a closed edge walk so it starts at its smallest vertex.
std::vector<int> canonical_rotation(const MultiWeightedGraph& g, std::vector<int> cycle) {
    size_t best = 0;
    for (size_t i = 1; i < cycle.size(); ++i)
        if (g.edge(cycle[i]).src < g.edge(cycle[best]).src) best = i;
    std::rotate(cycle.begin(), cycle.begin() + best, cycle.end());
    return cycle;
}

std::vector<ScheduleEdge> to_schedule_edges(const MultiWeightedGraph& g,
                                            const std::vector<int>& edge_ids) {
    std::vector<ScheduleEdge> out;
    out.reserve(edge_ids.size());
    for (int e : edge_ids) out.push_back({g.edge(e).src, g.edge(e).dst, g.edge(e).w});
    return out;
}

std::vector<std::vector<int>> punishment_tables(const MultiWeightedGraph& game_graph,
                                                const std::vector<PunishmentProfile>& profiles) {
    std::vector<std::vector<int>> tables(profiles.size());
    for (size_t j = 0; j < profiles.size(); ++j) {
        tables[j].assign(game_graph.vertex_count(), -1);
        for (int v = 0; v < game_graph.vertex_count(); ++v) {
            int e = profiles[j].sigma_bar.choice[v];
            if (e >= 0) tables[j][v] = game_graph.edge(e).dst;
        }
    }
    return tables;
}

EquilibriumReport assemble_report(const AlternatingGame& game,
                                  const MultiWeightedGraph& game_graph,
                                  const std::vector<PunishmentProfile>& profiles,
                                  const WelfareLpOutcome& lp) {
    auto cycles = cycle_decompose(game_graph, lp.circulation);
    EquilibriumReport report;
    report.players = game.players();
    report.actions = game.actions();
    report.nu.reserve(profiles.size());
    for (const auto& p : profiles) report.nu.push_back(p.nu);
    report.utilities = lp.t;
    report.welfare = lp.welfare;
    report.schedule = schedule_from_cycles(game_graph, cycles, lp.t);
    report.punishment = punishment_tables(game_graph, profiles);
    return report;
}

}  // namespace

WelfareLpOutcome feasible_welfare_lp(const MultiWeightedGraph& g, std::span<const Rat> floors) {
    g.require_valid();
    const int k = g.dims();
    if (static_cast<int>(floors.size()) != k)
        throw std::invalid_argument("feasible_welfare_lp: one floor per dimension required");

    SccInfo scc = scc_decompose(g);
    WelfareLpOutcome best;
    for (int comp = 0; comp < static_cast<int>(scc.components.size()); ++comp) {
        if (!scc.reachable[comp] || scc.transient[comp]) continue;
        std::vector<int> scc_edges;
        for (int e = 0; e < g.edge_count(); ++e)
            if (scc.component_of[g.edge(e).src] == comp && scc.component_of[g.edge(e).dst] == comp)
                scc_edges.push_back(e);

        const int ne = static_cast<int>(scc_edges.size());
        LinearProgram lp;
        lp.vars.resize(ne + k);
        for (int i = 0; i < ne; ++i) lp.vars[i].lower = Rat(0);
        for (int i = 0; i < k; ++i) lp.vars[ne + i].lower = floors[i];
        lp.objective.assign(ne + k, Rat(0));
        for (int i = 0; i < k; ++i) lp.objective[ne + i] = 1;
        lp.direction = LpObjective::Maximize;

        // Flow conservation per component vertex.
        for (int v : scc.components[comp]) {
            LpConstraint c;
            c.coeffs.assign(ne + k, Rat(0));
            bool touched = false;
            for (int i = 0; i < ne; ++i) {
                const Edge& e = g.edge(scc_edges[i]);
                if (e.src == v) {
                    c.coeffs[i] += 1;
                    touched = true;
                }
                if (e.dst == v) {
                    c.coeffs[i] -= 1;
                    touched = true;
                }
            }
            if (!touched) continue;
            c.rel = Relation::Equal;
            c.rhs = 0;
            lp.constraints.push_back(std::move(c));
        }
        // Total mass 1.
        {
            LpConstraint c;
            c.coeffs.assign(ne + k, Rat(0));
            for (int i = 0; i < ne; ++i) c.coeffs[i] = 1;
            c.rel = Relation::Equal;
            c.rhs = 1;
            lp.constraints.push_back(std::move(c));
        }
        // Per-dimension mean dominates t.
        for (int d = 0; d < k; ++d) {
            LpConstraint c;
            c.coeffs.assign(ne + k, Rat(0));
            for (int i = 0; i < ne; ++i) c.coeffs[i] = g.edge(scc_edges[i]).w[d];
            c.coeffs[ne + d] = -1;
            c.rel = Relation::GreaterEq;
            c.rhs = 0;
            lp.constraints.push_back(std::move(c));
        }

        LpResult res = solve_lp(lp);
        if (res.status == LpStatus::Unbounded)
            throw std::logic_error("feasible_welfare_lp: bounded program reported unbounded");
        if (res.status != LpStatus::Optimal) continue;
        if (best.feasible && res.objective <= best.welfare) continue;

        best.feasible = true;
        best.welfare = res.objective;
        best.t.assign(res.assignment.begin() + ne, res.assignment.end());
        best.circulation.scc = comp;
        best.circulation.flow.assign(g.edge_count(), Rat(0));
        for (int i = 0; i < ne; ++i) best.circulation.flow[scc_edges[i]] = res.assignment[i];
        best.circulation.mean.assign(k, Rat(0));
        for (int i = 0; i < ne; ++i)
            for (int d = 0; d < k; ++d)
                best.circulation.mean[d] += res.assignment[i] * g.edge(scc_edges[i]).w[d];
    }
    return best;
}

std::vector<WeightedCycle> cycle_decompose(const MultiWeightedGraph& g, const Circulation& c) {
    if (static_cast<int>(c.flow.size()) != g.edge_count())
        throw std::invalid_argument("cycle_decompose: flow arity mismatch");
    SccInfo scc = scc_decompose(g);
    Rat total = 0;
    {
        std::vector<Rat> in_flow(g.vertex_count(), Rat(0)), out_flow(g.vertex_count(), Rat(0));
        int support_comp = -1;
        for (int e = 0; e < g.edge_count(); ++e) {
            const Rat& f = c.flow[e];
            if (f < 0) throw std::invalid_argument("cycle_decompose: negative flow");
            if (f == 0) continue;
            total += f;
            out_flow[g.edge(e).src] += f;
            in_flow[g.edge(e).dst] += f;
            int comp = scc.component_of[g.edge(e).src];
            if (scc.component_of[g.edge(e).dst] != comp)
                throw std::invalid_argument("cycle_decompose: support leaves its SCC");
            if (support_comp == -1) support_comp = comp;
            if (comp != support_comp)
                throw std::invalid_argument("cycle_decompose: support spans several SCCs");
        }
        if (total != 1) throw std::invalid_argument("cycle_decompose: total flow must be 1");
        for (int v = 0; v < g.vertex_count(); ++v)
            if (in_flow[v] != out_flow[v])
                throw std::invalid_argument("cycle_decompose: conservation violated at vertex " +
                                            std::to_string(v));
    }

    std::vector<Rat> work = c.flow;
    auto first_positive_out = [&](int v) {
        for (int e : g.out_edges(v))
            if (work[e] > 0) return e;
        return -1;
    };

    std::vector<WeightedCycle> out;
    while (true) {
        int start_edge = -1;
        for (int e = 0; e < g.edge_count() && start_edge < 0; ++e)
            if (work[e] > 0) start_edge = e;
        if (start_edge < 0) break;

        // Walk positive-flow edges until a vertex repeats; conservation
        // guarantees the walk never gets stuck.
        std::vector<int> walk;
        std::vector<int> seen_at(g.vertex_count(), -1);
        int v = g.edge(start_edge).src;
        while (seen_at[v] == -1) {
            seen_at[v] = static_cast<int>(walk.size());
            int e = first_positive_out(v);
            if (e < 0) throw std::logic_error("cycle_decompose: walk stuck (conservation broken)");
            walk.push_back(e);
            v = g.edge(e).dst;
        }
        std::vector<int> cycle(walk.begin() + seen_at[v], walk.end());

        Rat min_flow = work[cycle[0]];
        for (int e : cycle) min_flow = std::min(min_flow, work[e]);
        for (int e : cycle) work[e] -= min_flow;

        WeightedCycle wc;
        wc.edges = canonical_rotation(g, cycle);
        wc.weight = min_flow * Rat(static_cast<long>(cycle.size()));
        out.push_back(std::move(wc));
    }

    Rat weight_sum = 0;
    for (const auto& wc : out) weight_sum += wc.weight;
    if (weight_sum != 1) throw std::logic_error("cycle_decompose: weights do not sum to 1");
    return out;
}

PathSchedule schedule_from_cycles(const MultiWeightedGraph& g,
                                  const std::vector<WeightedCycle>& cycles,
                                  std::span<const Rat> target) {
    if (cycles.empty()) throw std::invalid_argument("schedule_from_cycles: no cycles");
    if (static_cast<int>(target.size()) != g.dims())
        throw std::invalid_argument("schedule_from_cycles: target arity mismatch");

    SccInfo scc = scc_decompose(g);
    int comp = scc.component_of[g.edge(cycles[0].edges[0]).src];
    for (const auto& wc : cycles)
        for (int e : wc.edges)
            if (scc.component_of[g.edge(e).src] != comp)
                throw std::invalid_argument("schedule_from_cycles: cycles span several SCCs");

    PathSchedule s;
    s.dims = g.dims();
    s.target.assign(target.begin(), target.end());
    s.weight_bound = g.weight_bound();

    // Base multiplicities proportional to per-cycle edge flow, so one pass
    // over all cycles averages exactly to the weighted cycle mean.
    std::vector<Rat> per_edge_flow;
    per_edge_flow.reserve(cycles.size());
    Int denom = 1;
    for (const auto& wc : cycles) {
        Rat mu = wc.weight / Rat(static_cast<long>(wc.edges.size()));
        denom = lcm_int(denom, rat_den(mu));
        per_edge_flow.push_back(std::move(mu));
    }
    for (size_t j = 0; j < cycles.size(); ++j) {
        ScheduleCycle sc;
        std::vector<int> rotated = canonical_rotation(g, cycles[j].edges);
        sc.edges = to_schedule_edges(g, rotated);
        sc.weight = cycles[j].weight;
        sc.multiplicity = rat_num(per_edge_flow[j]) * (denom / rat_den(per_edge_flow[j]));
        s.cycles.push_back(std::move(sc));
    }

    std::vector<Rat> mix = s.mean();
    for (int d = 0; d < g.dims(); ++d)
        if (mix[d] < target[d])
            throw std::invalid_argument("schedule_from_cycles: target not dominated by cycle mean");

    const int m = static_cast<int>(s.cycles.size());
    for (int j = 0; j < m; ++j) {
        int from = s.cycles[j].edges.front().src;
        int to = s.cycles[(j + 1) % m].edges.front().src;
        s.connectors.push_back(to_schedule_edges(g, shortest_path(g, from, to)));
    }
    s.lead_in = to_schedule_edges(g, shortest_path(g, g.initial_vertex(), s.cycles[0].edges.front().src));

    s.validate();
    return s;
}

std::vector<PunishmentProfile> punishment_values(const AlternatingGame& game) {
    MultiWeightedGraph gg = build_game_graph(game);
    std::vector<PunishmentProfile> out;
    out.reserve(game.players());
    for (int i = 1; i <= game.players(); ++i) {
        // punishment_game keeps edge ids aligned with the game graph, so the
        // extracted strategies index game-graph edges directly.
        StrategyPair pair = optimal_strategies(punishment_game(gg, i));
        out.push_back({pair.value, std::move(pair.max_strategy), std::move(pair.min_strategy)});
    }
    return out;
}

std::vector<Rat> punishment_vector(const AlternatingGame& game) {
    MultiWeightedGraph gg = build_game_graph(game);
    std::vector<Rat> nu;
    nu.reserve(game.players());
    for (int i = 1; i <= game.players(); ++i) {
        MeanPayoffGame gi = punishment_game(gg, i);
        nu.push_back(exact_values(gi).values[gg.initial_vertex()]);
    }
    return nu;
}

EquilibriumReport folk_equilibrium(const AlternatingGame& game) {
    MultiWeightedGraph gg = build_game_graph(game);
    std::vector<PunishmentProfile> profiles = punishment_values(game);

    // The sigma profile makes the game graph functional; its unique play is
    // a lasso from the initial vertex.
    std::vector<int> succ(gg.vertex_count(), -1);
    for (int v = 0; v < gg.vertex_count(); ++v)
        succ[v] = profiles[gg.owner(v) - 1].sigma.choice[v];

    std::vector<int> seen_at(gg.vertex_count(), -1);
    std::vector<int> walk;
    int v = gg.initial_vertex();
    while (seen_at[v] == -1) {
        seen_at[v] = static_cast<int>(walk.size());
        walk.push_back(succ[v]);
        v = gg.edge(succ[v]).dst;
    }
    std::vector<int> cycle(walk.begin() + seen_at[v], walk.end());

    EquilibriumReport report;
    report.mode = EquilibriumReport::Mode::exact;
    report.players = game.players();
    report.actions = game.actions();
    for (const auto& p : profiles) report.nu.push_back(p.nu);

    PathSchedule s;
    s.dims = gg.dims();
    s.weight_bound = gg.weight_bound();
    ScheduleCycle sc;
    sc.edges = to_schedule_edges(gg, canonical_rotation(gg, cycle));
    sc.weight = 1;
    sc.multiplicity = 1;
    s.cycles.push_back(std::move(sc));
    s.connectors.push_back({});
    // The lasso prefix may overshoot the canonical anchor; recompute it as
    // the shortest path to the anchor instead.
    s.lead_in = to_schedule_edges(
        gg, shortest_path(gg, gg.initial_vertex(), s.cycles[0].edges.front().src));
    report.utilities = s.mean();
    s.target = report.utilities;
    s.validate();
    report.schedule = std::move(s);

    report.welfare = 0;
    for (const Rat& t : report.utilities) report.welfare += t;
    for (int i = 0; i < game.players(); ++i)
        if (report.utilities[i] < report.nu[i])
            throw std::logic_error("folk_equilibrium: guarantee strategy fell below its value");
    report.punishment = punishment_tables(gg, profiles);
    return report;
}

EquilibriumReport optimal_exact_equilibrium(const AlternatingGame& game) {
    MultiWeightedGraph gg = build_game_graph(game);
    std::vector<PunishmentProfile> profiles = punishment_values(game);
    std::vector<Rat> floors;
    floors.reserve(profiles.size());
    for (const auto& p : profiles) floors.push_back(p.nu);

    WelfareLpOutcome lp = feasible_welfare_lp(gg, floors);
    if (!lp.feasible)
        throw std::logic_error("optimal_exact_equilibrium: welfare LP infeasible at floors nu "
                               "(guarantee play should always be feasible)");
    EquilibriumReport report = assemble_report(game, gg, profiles, lp);
    report.mode = EquilibriumReport::Mode::exact;
    return report;
}

EquilibriumReport fptas_equilibrium(const AlternatingGame& game, const Rat& eps, const Rat& delta) {
    if (eps <= 0 || delta <= 0)
        throw std::invalid_argument("fptas_equilibrium: eps and delta must be positive");
    const int k = game.players();
    const Rat zeta = eps * delta / Rat(4 * k);
    if (zeta >= eps)
        throw std::invalid_argument("fptas_equilibrium: degenerate parameters (zeta >= eps)");

    MultiWeightedGraph gg = build_game_graph(game);
    std::vector<PunishmentProfile> profiles = punishment_values(game);

    std::vector<Rat> r(k), floors(k);
    for (int i = 1; i <= k; ++i) {
        MeanPayoffGame gi = punishment_game(gg, i);
        r[i - 1] = approx_values(gi, zeta).values[gg.initial_vertex()];
        floors[i - 1] = r[i - 1] - (eps - zeta);
    }

    WelfareLpOutcome lp = feasible_welfare_lp(gg, floors);
    if (!lp.feasible)
        throw std::logic_error("fptas_equilibrium: welfare LP infeasible below approximate nu");
    EquilibriumReport report = assemble_report(game, gg, profiles, lp);
    report.mode = EquilibriumReport::Mode::approximate;
    report.eps = eps;
    report.delta = delta;
    report.nu = std::move(r);
    return report;
}

std::variant<EquilibriumReport, PathRejection> path_equilibrium(const AlternatingGame& game,
                                                                const PathSchedule& schedule) {
    MultiWeightedGraph gg = build_game_graph(game);
    schedule.validate_against(gg);

    std::vector<PunishmentProfile> profiles = punishment_values(game);
    std::vector<Rat> t = schedule.mean();

    int worst = -1;
    Rat worst_gap;
    for (int i = 0; i < game.players(); ++i) {
        Rat gap = profiles[i].nu - t[i];
        if (gap > 0 && (worst == -1 || gap > worst_gap)) {
            worst = i;
            worst_gap = gap;
        }
    }
    if (worst >= 0) return PathRejection{worst + 1, worst_gap};

    EquilibriumReport report;
    report.mode = EquilibriumReport::Mode::exact;
    report.players = game.players();
    report.actions = game.actions();
    for (const auto& p : profiles) report.nu.push_back(p.nu);
    report.utilities = t;
    report.welfare = 0;
    for (const Rat& x : t) report.welfare += x;
    report.schedule = schedule;
    report.punishment = punishment_tables(gg, profiles);
    return report;
}

AlternatingGame hardness_gadget(const AlternatingGame& zs) {
    if (zs.players() != 2) throw std::invalid_argument("hardness_gadget: two players required");
    if (!zs.is_zero_sum()) throw std::invalid_argument("hardness_gadget: game is not zero-sum");
    const int n = zs.actions();
    const int n1 = n + 1;  // the fresh opt-out action gets index n
    const long long profiles = static_cast<long long>(n1) * n1 * n1;

    std::vector<std::vector<Rat>> u(3, std::vector<Rat>(profiles));
    for (int a1 = 0; a1 < n1; ++a1) {
        for (int a2 = 0; a2 < n1; ++a2) {
            Rat u1;
            if (a1 < n && a2 < n) {
                int acts[2] = {a1, a2};
                u1 = zs.utility(1, zs.encode(acts));
            } else if (a1 < n) {
                int acts[2] = {a1, 0};  // opt-out of player 2 reads as its first action
                u1 = zs.utility(1, zs.encode(acts));
            } else {
                u1 = 0;
            }
            Rat u3 = a1 == n ? Rat(1) : Rat(-1);
            for (int a3 = 0; a3 < n1; ++a3) {
                long long vec = (static_cast<long long>(a1) * n1 + a2) * n1 + a3;
                u[0][vec] = u1;
                u[1][vec] = -u1;
                u[2][vec] = u3;
            }
        }
    }
    return AlternatingGame(3, n1, std::move(u));
}

}  // namespace mpg
