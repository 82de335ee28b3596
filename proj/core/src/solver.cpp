#include "mpg/solver.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <type_traits>

namespace mpg {

namespace {

struct Cleared {
    Int denom;           // common denominator of all weights
    std::vector<Int> w;  // per edge, weight * denom (dimension 0)
    Int bound;           // max |w|
};

Cleared clear_weights(const MultiWeightedGraph& g) {
    Cleared c;
    c.denom = 1;
    for (const Edge& e : g.edges()) c.denom = lcm_int(c.denom, rat_den(e.w[0]));
    c.bound = 0;
    c.w.reserve(g.edge_count());
    for (const Edge& e : g.edges()) {
        Int v = rat_num(e.w[0]) * (c.denom / rat_den(e.w[0]));
        if (abs(v) > c.bound) c.bound = abs(v);
        c.w.push_back(std::move(v));
    }
    return c;
}

template <typename I>
struct Kernel {
    int n = 0;
    std::vector<int> start;  // n + 1 offsets
    std::vector<int> dst;
    std::vector<I> w;
    std::vector<uint8_t> maximize;
};

// forced[v] >= 0 restricts v to that single out-edge.
template <typename I>
Kernel<I> build_kernel(const MeanPayoffGame& game, const std::vector<int>& forced,
                       const Cleared& c) {
    const auto& g = game.graph();
    Kernel<I> k;
    k.n = g.vertex_count();
    k.start.assign(k.n + 1, 0);
    k.maximize.resize(k.n);
    for (int v = 0; v < k.n; ++v) {
        k.maximize[v] = g.owner(v) == 1;
        int deg = forced[v] >= 0 ? 1 : static_cast<int>(g.out_edges(v).size());
        k.start[v + 1] = k.start[v] + deg;
    }
    k.dst.resize(k.start[k.n]);
    k.w.resize(k.start[k.n]);
    for (int v = 0; v < k.n; ++v) {
        int pos = k.start[v];
        auto put = [&](int e) {
            k.dst[pos] = g.edge(e).dst;
            if constexpr (std::is_same_v<I, long long>)
                k.w[pos] = c.w[e].template convert_to<long long>();
            else
                k.w[pos] = c.w[e];
            ++pos;
        };
        if (forced[v] >= 0)
            put(forced[v]);
        else
            for (int e : g.out_edges(v)) put(e);
    }
    return k;
}

template <typename I>
void run_iteration(const Kernel<I>& k, long long steps, std::vector<I>& v) {
    std::vector<I> nv(k.n);
    for (long long t = 0; t < steps; ++t) {
        for (int u = 0; u < k.n; ++u) {
            const int b = k.start[u], e = k.start[u + 1];
            I best = k.w[b] + v[k.dst[b]];
            if (k.maximize[u]) {
                for (int i = b + 1; i < e; ++i) {
                    I cand = k.w[i] + v[k.dst[i]];
                    if (cand > best) best = std::move(cand);
                }
            } else {
                for (int i = b + 1; i < e; ++i) {
                    I cand = k.w[i] + v[k.dst[i]];
                    if (cand < best) best = std::move(cand);
                }
            }
            nv[u] = std::move(best);
        }
        std::swap(v, nv);
    }
}

// Advances v (cleared integer units) by `steps` iterations, picking the
// int64 kernel whenever |v| provably stays in range.
class IterationEngine {
public:
    IterationEngine(const MeanPayoffGame& game, const std::vector<int>& forced, const Cleared& c)
        : game_(game), forced_(forced), cleared_(c) {}

    void advance(std::vector<Int>& v, long long done, long long steps) {
        Int max_abs = cleared_.bound * (Int(done + steps) + 1);
        if (max_abs < std::numeric_limits<long long>::max() / 4) {
            if (k64_.n == 0) k64_ = build_kernel<long long>(game_, forced_, cleared_);
            std::vector<long long> v64(v.size());
            for (size_t i = 0; i < v.size(); ++i) v64[i] = v[i].convert_to<long long>();
            run_iteration(k64_, steps, v64);
            for (size_t i = 0; i < v.size(); ++i) v[i] = v64[i];
        } else {
            if (kbig_.n == 0) kbig_ = build_kernel<Int>(game_, forced_, cleared_);
            run_iteration(kbig_, steps, v);
        }
    }

private:
    const MeanPayoffGame& game_;
    const std::vector<int>& forced_;
    const Cleared& cleared_;
    Kernel<long long> k64_;
    Kernel<Int> kbig_;
};

std::vector<Int> iterate_cleared(const MeanPayoffGame& game, const std::vector<int>& forced,
                                 const Cleared& c, long long T) {
    std::vector<Int> v(game.graph().vertex_count(), Int(0));
    IterationEngine(game, forced, c).advance(v, 0, T);
    return v;
}

// Returns the unique rational with denominator <= n inside
// [v_T/T - 2nW/T, v_T/T + 2nW/T] when there is exactly one, nullopt when the
// interval still holds several. The true value always lies in the interval,
// so uniqueness implies exactness at any T. Exactly-one is decided by
// comparing the smallest candidate above the left endpoint with the largest
// candidate below the right endpoint.
std::optional<Rat> round_value(const Int& v_t, long long T, int n, const Int& w_bound) {
    Rat q(v_t, Int(T));
    const Rat err = Rat(2 * Int(n) * w_bound, Int(T));
    Rat first_ge = bounded_den_neighbors(q - err, n).second;
    Rat last_le = bounded_den_neighbors(q + err, n).first;
    if (first_ge > last_le)
        throw std::logic_error("exact_values: no rational of bounded denominator within the error "
                               "interval (convergence bound violated)");
    if (first_ge == last_le) return first_ge;
    return std::nullopt;
}

// Exact values by value iteration with doubling horizons: stop as soon as
// every requested vertex rounds uniquely. The worst-case horizon
// 4|V|^3 W + 1 shrinks the interval below the 1/|V|^2 gap between distinct
// candidates, so the loop always terminates with unique roundings.
// focus >= 0 restricts the uniqueness requirement (and the result) to one
// vertex; other entries of the table are then unspecified zeros.
ValueTable exact_values_impl(const MeanPayoffGame& game, const std::vector<int>& forced,
                             int focus = -1) {
    game.graph().require_valid();
    const auto& g = game.graph();
    const int n = g.vertex_count();
    Cleared c = clear_weights(g);

    ValueTable table;
    table.mode = ValueTable::Mode::exact;
    table.weight_bound = g.weight_bound();
    table.values.assign(n, Rat(0));
    if (c.bound == 0) {
        table.iterations = 0;
        return table;
    }

    Int t_cap = 4 * Int(n) * n * n * c.bound + 1;
    if (t_cap > (Int(1) << 42))
        throw std::runtime_error("exact_values: weight magnitude too large for value iteration");
    const long long cap = t_cap.convert_to<long long>();

    IterationEngine engine(game, forced, c);
    std::vector<Int> v(n, Int(0));
    long long T = 0;
    long long next = std::min<long long>(cap, std::max<long long>(16, 2 * n));
    while (true) {
        engine.advance(v, T, next - T);
        T = next;
        bool all_unique = true;
        for (int u = 0; u < n && all_unique; ++u) {
            if (focus >= 0 && u != focus) continue;
            auto r = round_value(v[u], T, n, c.bound);
            if (!r)
                all_unique = false;
            else
                table.values[u] = *r / Rat(c.denom);
        }
        if (all_unique) {
            table.iterations = T;
            return table;
        }
        if (T >= cap)
            throw std::logic_error("exact_values: ambiguous rounding at the worst-case horizon");
        next = std::min(cap, 2 * T);
    }
}

}  // namespace

std::vector<Rat> value_iteration(const MeanPayoffGame& game, long long T) {
    if (T <= 0) throw std::invalid_argument("value_iteration: T must be positive");
    game.graph().require_valid();
    Cleared c = clear_weights(game.graph());
    std::vector<int> forced(game.graph().vertex_count(), -1);
    std::vector<Int> v_t = iterate_cleared(game, forced, c, T);
    std::vector<Rat> out(v_t.size());
    for (size_t i = 0; i < v_t.size(); ++i) out[i] = Rat(v_t[i], c.denom * T);
    return out;
}

ValueTable exact_values(const MeanPayoffGame& game) {
    std::vector<int> forced(game.graph().vertex_count(), -1);
    return exact_values_impl(game, forced);
}

ValueTable approx_values(const MeanPayoffGame& game, const Rat& zeta) {
    if (zeta <= 0) throw std::invalid_argument("approx_values: zeta must be positive");
    game.graph().require_valid();
    const auto& g = game.graph();
    const int n = g.vertex_count();

    ValueTable table;
    table.mode = ValueTable::Mode::approximate;
    table.zeta = zeta;
    table.weight_bound = g.weight_bound();

    Int t_big = table.weight_bound == 0 ? Int(1) : ceil_rat(Rat(2 * n) * table.weight_bound / zeta);
    if (t_big < 1) t_big = 1;
    if (t_big > (Int(1) << 42))
        throw std::runtime_error("approx_values: zeta too small for value iteration");
    const long long T = t_big.convert_to<long long>();

    Cleared c = clear_weights(g);
    std::vector<int> forced(n, -1);
    std::vector<Int> v_t = iterate_cleared(game, forced, c, T);
    table.values.resize(n);
    table.iterations = T;
    for (int u = 0; u < n; ++u) table.values[u] = Rat(v_t[u], c.denom * T);
    return table;
}

Winner winner(const MeanPayoffGame& game, const Rat& threshold) {
    ValueTable t = exact_values(game);
    return t.values[game.graph().initial_vertex()] >= threshold ? Winner::MaxWins
                                                                : Winner::MinWins;
}

OnePlayerResult one_player_value(const MultiWeightedGraph& g, CycleMode mode) {
    g.require_valid();
    if (g.dims() != 1) throw std::invalid_argument("one_player_value: scalar graphs only");
    const int n = g.vertex_count();
    const int init = g.initial_vertex();
    auto wt = [&](int e) {
        return mode == CycleMode::Maximize ? g.edge(e).w[0] : Rat(-g.edge(e).w[0]);
    };
    std::vector<bool> reach = reachable_set(g, init);

    // Karp: d[t][v] = best weight of a t-edge walk init -> v.
    std::vector<std::vector<Rat>> d(n + 1, std::vector<Rat>(n));
    std::vector<std::vector<bool>> has(n + 1, std::vector<bool>(n, false));
    has[0][init] = true;
    for (int t = 1; t <= n; ++t) {
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            if (!reach[ed.src] || !has[t - 1][ed.src]) continue;
            Rat cand = d[t - 1][ed.src] + wt(e);
            if (!has[t][ed.dst] || cand > d[t][ed.dst]) {
                d[t][ed.dst] = cand;
                has[t][ed.dst] = true;
            }
        }
    }

    bool found = false;
    Rat mu;
    for (int v = 0; v < n; ++v) {
        if (!has[n][v]) continue;
        bool inner_set = false;
        Rat inner;
        for (int t = 0; t < n; ++t) {
            if (!has[t][v]) continue;
            Rat r = (d[n][v] - d[t][v]) / Rat(n - t);
            if (!inner_set || r < inner) {
                inner = r;
                inner_set = true;
            }
        }
        if (inner_set && (!found || inner > mu)) {
            mu = inner;
            found = true;
        }
    }
    if (!found) throw std::logic_error("one_player_value: no reachable cycle");

    // Witness: with w' = w - mu there is no positive-mean cycle, so the
    // best-walk potentials h stabilize within n-1 rounds; any cycle made of
    // tight edges (h[src] + w' = h[dst]) has mean exactly mu.
    std::vector<Rat> h(n);
    std::vector<bool> hset(n, false);
    hset[init] = true;
    for (int round = 0; round + 1 < std::max(n, 2); ++round) {
        bool changed = false;
        for (int e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            if (!reach[ed.src] || !hset[ed.src]) continue;
            Rat cand = h[ed.src] + wt(e) - mu;
            if (!hset[ed.dst] || cand > h[ed.dst]) {
                h[ed.dst] = cand;
                hset[ed.dst] = true;
                changed = true;
            }
        }
        if (!changed) break;
    }
    std::vector<std::vector<int>> tight(n);
    for (int e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        if (reach[ed.src] && hset[ed.src] && hset[ed.dst] && h[ed.src] + wt(e) - mu == h[ed.dst])
            tight[ed.src].push_back(e);
    }
    // DFS for a cycle in the tight subgraph.
    std::vector<int> color(n, 0), via(n, -1);
    std::vector<int> cyc;
    for (int root = 0; root < n && cyc.empty(); ++root) {
        if (!reach[root] || !hset[root] || color[root] != 0) continue;
        std::vector<std::pair<int, size_t>> stack{{root, 0}};
        color[root] = 1;
        while (!stack.empty() && cyc.empty()) {
            auto& [v, pos] = stack.back();
            if (pos < tight[v].size()) {
                int e = tight[v][pos++];
                int u = g.edge(e).dst;
                if (color[u] == 0) {
                    color[u] = 1;
                    via[u] = e;
                    stack.emplace_back(u, 0);
                } else if (color[u] == 1) {
                    cyc.push_back(e);
                    for (int x = v; x != u; x = g.edge(via[x]).src) cyc.push_back(via[x]);
                    std::reverse(cyc.begin(), cyc.end());
                }
            } else {
                color[v] = 2;
                stack.pop_back();
            }
        }
    }
    if (cyc.empty()) throw std::logic_error("one_player_value: witness extraction failed");
    return {mode == CycleMode::Maximize ? mu : Rat(-mu), cyc};
}

StrategyPair optimal_strategies(const MeanPayoffGame& game) {
    game.graph().require_valid();
    const auto& g = game.graph();
    const int n = g.vertex_count();
    const Rat nu0 = exact_values(game).values[g.initial_vertex()];

    auto extract = [&](int side) {
        std::vector<int> forced(n, -1);
        for (int v = 0; v < n; ++v) {
            if (g.owner(v) != side) continue;
            bool fixed = false;
            for (int e : g.out_edges(v)) {
                forced[v] = e;
                ValueTable t = exact_values_impl(game, forced, g.initial_vertex());
                if (t.values[g.initial_vertex()] == nu0) {
                    fixed = true;
                    break;
                }
            }
            if (!fixed)
                throw std::logic_error("optimal_strategies: no value-preserving edge at vertex " +
                                       std::to_string(v));
        }
        MemorylessStrategy s;
        s.choice.assign(n, -1);
        for (int v = 0; v < n; ++v)
            if (g.owner(v) == side) s.choice[v] = forced[v];
        return s;
    };

    StrategyPair pair{extract(1), extract(2), nu0};

    auto residual = [&](const MemorylessStrategy& s) {
        std::vector<Edge> edges;
        for (int v = 0; v < n; ++v) {
            if (s.choice[v] >= 0)
                edges.push_back(g.edge(s.choice[v]));
            else
                for (int e : g.out_edges(v)) edges.push_back(g.edge(e));
        }
        std::vector<int> owners(n);
        for (int v = 0; v < n; ++v) owners[v] = g.owner(v);
        return MultiWeightedGraph(1, owners, edges, g.initial_vertex());
    };
    Rat sigma_val = one_player_value(residual(pair.max_strategy), CycleMode::Minimize).value;
    Rat tau_val = one_player_value(residual(pair.min_strategy), CycleMode::Maximize).value;
    if (sigma_val != nu0 || tau_val != nu0)
        throw std::logic_error("optimal_strategies: residual verification failed");
    return pair;
}

ValueTable brute_force_values(const MeanPayoffGame& game) {
    game.graph().require_valid();
    const auto& g = game.graph();
    const int n = g.vertex_count();
    if (n > 12) throw std::invalid_argument("brute_force_values: instance too large (vertices)");

    Cleared c = clear_weights(g);
    if (c.bound * (n + 1) > std::numeric_limits<long long>::max() / 4)
        throw std::invalid_argument("brute_force_values: weights too large");
    std::vector<long long> w(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) w[e] = c.w[e].convert_to<long long>();

    std::vector<int> max_vs, min_vs;
    for (int v = 0; v < n; ++v) (g.owner(v) == 1 ? max_vs : min_vs).push_back(v);
    constexpr unsigned long long kPairLimit = 1ULL << 22;
    unsigned long long sigma_count = 1, tau_count = 1;
    for (int v : max_vs) {
        sigma_count *= g.out_edges(v).size();
        if (sigma_count > kPairLimit)
            throw std::invalid_argument("brute_force_values: instance too large (strategy profiles)");
    }
    for (int v : min_vs) {
        tau_count *= g.out_edges(v).size();
        if (tau_count > kPairLimit)
            throw std::invalid_argument("brute_force_values: instance too large (strategy profiles)");
    }
    if (sigma_count * tau_count > kPairLimit)
        throw std::invalid_argument("brute_force_values: instance too large (strategy profiles)");

    struct CycVal {
        long long sum = 0;
        int len = 0;  // len == 0 marks "unset"
    };
    auto less = [](const CycVal& a, const CycVal& b) {
        return static_cast<__int128>(a.sum) * b.len < static_cast<__int128>(b.sum) * a.len;
    };

    std::vector<int> succ(n, -1);
    std::vector<int> sigma_idx(max_vs.size(), 0), tau_idx(min_vs.size(), 0);
    std::vector<CycVal> pair_val(n), sigma_min(n), maxmin(n);
    std::vector<CycVal> tau_max(tau_count * n);
    std::vector<int> state(n), pos(n), path;

    auto eval_pair = [&]() {
        std::fill(state.begin(), state.end(), 0);
        for (int v0 = 0; v0 < n; ++v0) {
            if (state[v0] == 2) continue;
            path.clear();
            int u = v0;
            while (state[u] == 0) {
                state[u] = 1;
                pos[u] = static_cast<int>(path.size());
                path.push_back(u);
                u = g.edge(succ[u]).dst;
            }
            CycVal cv;
            if (state[u] == 1) {
                for (size_t i = pos[u]; i < path.size(); ++i) {
                    cv.sum += w[succ[path[i]]];
                    ++cv.len;
                }
            } else {
                cv = pair_val[u];
            }
            for (int x : path) {
                pair_val[x] = cv;
                state[x] = 2;
            }
        }
    };

    bool sigma_done = sigma_count == 0;
    while (!sigma_done) {
        for (size_t i = 0; i < max_vs.size(); ++i) succ[max_vs[i]] = g.out_edges(max_vs[i])[sigma_idx[i]];
        for (int v = 0; v < n; ++v) sigma_min[v].len = 0;

        std::fill(tau_idx.begin(), tau_idx.end(), 0);
        unsigned long long tau_number = 0;
        bool tau_done = false;
        while (!tau_done) {
            for (size_t i = 0; i < min_vs.size(); ++i) succ[min_vs[i]] = g.out_edges(min_vs[i])[tau_idx[i]];
            eval_pair();
            for (int v = 0; v < n; ++v) {
                if (sigma_min[v].len == 0 || less(pair_val[v], sigma_min[v])) sigma_min[v] = pair_val[v];
                CycVal& tm = tau_max[tau_number * n + v];
                if (tm.len == 0 || less(tm, pair_val[v])) tm = pair_val[v];
            }
            ++tau_number;
            tau_done = true;
            for (size_t i = 0; i < min_vs.size(); ++i) {
                if (++tau_idx[i] < static_cast<int>(g.out_edges(min_vs[i]).size())) {
                    tau_done = false;
                    break;
                }
                tau_idx[i] = 0;
            }
            if (min_vs.empty()) tau_done = true;
        }

        for (int v = 0; v < n; ++v)
            if (maxmin[v].len == 0 || less(maxmin[v], sigma_min[v])) maxmin[v] = sigma_min[v];

        sigma_done = true;
        for (size_t i = 0; i < max_vs.size(); ++i) {
            if (++sigma_idx[i] < static_cast<int>(g.out_edges(max_vs[i]).size())) {
                sigma_done = false;
                break;
            }
            sigma_idx[i] = 0;
        }
        if (max_vs.empty()) sigma_done = true;
    }

    for (int v = 0; v < n; ++v) {
        CycVal minmax;
        for (unsigned long long t = 0; t < tau_count; ++t) {
            const CycVal& tm = tau_max[t * n + v];
            if (minmax.len == 0 || less(tm, minmax)) minmax = tm;
        }
        if (static_cast<__int128>(minmax.sum) * maxmin[v].len !=
            static_cast<__int128>(maxmin[v].sum) * minmax.len)
            throw std::logic_error("brute_force_values: maxmin != minmax at vertex " +
                                   std::to_string(v));
    }

    ValueTable table;
    table.mode = ValueTable::Mode::exact;
    table.weight_bound = g.weight_bound();
    table.iterations = 0;
    table.values.resize(n);
    for (int v = 0; v < n; ++v) table.values[v] = Rat(Int(maxmin[v].sum), Int(maxmin[v].len) * c.denom);
    return table;
}

}  // namespace mpg
