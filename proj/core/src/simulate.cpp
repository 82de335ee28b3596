#include "mpg/simulate.hpp"

#include "mpg/reductions.hpp"

#include <algorithm>
#include <stdexcept>

namespace mpg {

namespace {

Int schedule_denominator(const PathSchedule& s) {
    Int d = 1;
    auto absorb = [&](const std::vector<ScheduleEdge>& edges) {
        for (const auto& e : edges)
            for (const Rat& w : e.w) d = lcm_int(d, rat_den(w));
    };
    absorb(s.lead_in);
    for (const auto& c : s.cycles) absorb(c.edges);
    for (const auto& c : s.connectors) absorb(c);
    return d;
}

}  // namespace

std::vector<SimulationPoint> simulate(const PathSchedule& schedule, long long horizon,
                                      std::span<const long long> checkpoints) {
    schedule.validate();
    if (horizon < 1) throw std::invalid_argument("simulate: horizon must be positive");

    std::vector<long long> marks(checkpoints.begin(), checkpoints.end());
    if (marks.empty()) marks.push_back(horizon);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    for (long long m : marks)
        if (m < 1 || m > horizon)
            throw std::invalid_argument("simulate: checkpoint outside [1, horizon]");

    const Int denom = schedule_denominator(schedule);
    const int dims = schedule.dims;
    std::vector<Int> sums(dims, Int(0));

    ScheduleStream stream(schedule);
    std::vector<SimulationPoint> out;
    size_t next_mark = 0;
    for (long long t = 1; t <= horizon && next_mark < marks.size(); ++t) {
        const ScheduleEdge& e = stream.next();
        for (int d = 0; d < dims; ++d)
            sums[d] += rat_num(e.w[d]) * (denom / rat_den(e.w[d]));
        if (t == marks[next_mark]) {
            SimulationPoint p;
            p.step = t;
            p.average.resize(dims);
            for (int d = 0; d < dims; ++d) p.average[d] = Rat(sums[d], denom * t);
            out.push_back(std::move(p));
            ++next_mark;
        }
    }
    return out;
}

CertifyResult certify_equilibrium(const AlternatingGame& game, const EquilibriumReport& report,
                                  const Rat& eps) {
    if (eps < 0) throw std::invalid_argument("certify_equilibrium: eps must be nonnegative");
    if (report.players != game.players() || report.actions != game.actions())
        throw std::invalid_argument("certify_equilibrium: report does not match the game");
    MultiWeightedGraph gg = build_game_graph(game);
    report.schedule.validate_against(gg);

    std::vector<Rat> nu = punishment_vector(game);
    std::vector<Rat> t = report.schedule.mean();

    CertifyResult res;
    res.certified = true;
    bool first = true;
    for (int i = 0; i < game.players(); ++i) {
        Rat margin = nu[i] - eps - t[i];
        if (first || margin > res.margin) {
            res.margin = margin;
            res.player = i + 1;
            first = false;
        }
    }
    res.certified = res.margin <= 0;
    if (res.certified) res.player = 0;
    return res;
}

Rat deviation_probe(const AlternatingGame& game, const EquilibriumReport& report, int player,
                    long long horizon) {
    if (player < 1 || player > game.players())
        throw std::invalid_argument("deviation_probe: player out of range");
    if (horizon < 1) throw std::invalid_argument("deviation_probe: horizon must be positive");
    if (report.players != game.players() || report.actions != game.actions())
        throw std::invalid_argument("deviation_probe: report does not match the game");
    MultiWeightedGraph gg = build_game_graph(game);
    report.schedule.validate_against(gg);
    if (static_cast<int>(report.punishment.size()) != game.players())
        throw std::invalid_argument("deviation_probe: punishment table arity mismatch");

    const int dim = player - 1;
    const auto& table = report.punishment[dim];
    if (static_cast<int>(table.size()) != gg.vertex_count())
        throw std::invalid_argument("deviation_probe: punishment table size mismatch");

    Int denom = 1;
    for (const Edge& e : gg.edges()) denom = lcm_int(denom, rat_den(e.w[dim]));
    auto cleared = [&](const Rat& w) { return rat_num(w) * (denom / rat_den(w)); };

    auto best_immediate = [&](int v) {
        int best = -1;
        for (int e : gg.out_edges(v)) {
            if (best == -1 || gg.edge(e).w[dim] > gg.edge(best).w[dim]) best = e;
        }
        return best;
    };

    ScheduleStream stream(report.schedule);
    bool deviated = false;
    int pos = gg.initial_vertex();
    Int sum = 0;
    for (long long t = 1; t <= horizon; ++t) {
        int chosen = -1;
        if (!deviated) {
            const ScheduleEdge& planned = stream.next();
            if (planned.src != pos)
                throw std::logic_error("deviation_probe: schedule lost synchronization");
            // Resolve the planned edge in the graph.
            int planned_id = -1;
            for (int e : gg.out_edges(pos))
                if (gg.edge(e).dst == planned.dst && gg.edge(e).w == planned.w) planned_id = e;
            if (planned_id < 0) throw std::logic_error("deviation_probe: planned edge missing");
            if (gg.owner(pos) == player) {
                int greedy = best_immediate(pos);
                if (gg.edge(greedy).w[dim] > gg.edge(planned_id).w[dim]) {
                    chosen = greedy;
                    deviated = true;
                } else {
                    chosen = planned_id;
                }
            } else {
                chosen = planned_id;
            }
        } else if (gg.owner(pos) == player) {
            chosen = best_immediate(pos);
        } else {
            int succ = table[pos];
            if (succ < 0) throw std::invalid_argument("deviation_probe: punishment undefined at vertex " +
                                                      std::to_string(pos));
            for (int e : gg.out_edges(pos)) {
                if (gg.edge(e).dst == succ) {
                    chosen = e;
                    break;
                }
            }
            if (chosen < 0)
                throw std::invalid_argument("deviation_probe: punishment successor is not adjacent");
        }
        sum += cleared(gg.edge(chosen).w[dim]);
        pos = gg.edge(chosen).dst;
    }
    Rat average(sum, denom * horizon);
    return average - report.utilities[dim];
}

}  // namespace mpg
