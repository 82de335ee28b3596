#include "mpg/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace mpg {

MultiWeightedGraph::MultiWeightedGraph(int dims, std::vector<int> owners,
                                       std::vector<Edge> edges, int initial_vertex)
    : dims_(dims), initial_(initial_vertex), owner_(std::move(owners)), edges_(std::move(edges)) {
    if (dims_ < 1) throw std::invalid_argument("graph: dims must be >= 1");
    const int n = vertex_count();
    if (n == 0) throw std::invalid_argument("graph: no vertices");
    if (initial_ < 0 || initial_ >= n) throw std::invalid_argument("graph: initial vertex out of range");
    for (int v = 0; v < n; ++v)
        if (owner_[v] < 1) throw std::invalid_argument("graph: player indices are 1-based");
    out_.resize(n);
    for (int e = 0; e < edge_count(); ++e) {
        const Edge& ed = edges_[e];
        if (ed.src < 0 || ed.src >= n || ed.dst < 0 || ed.dst >= n)
            throw std::invalid_argument("graph: edge endpoint out of range");
        if (static_cast<int>(ed.w.size()) != dims_)
            throw std::invalid_argument("graph: edge weight arity does not match dims");
        out_[ed.src].push_back(e);
    }
}

Rat MultiWeightedGraph::weight_bound() const {
    Rat bound = 0;
    for (const Edge& e : edges_)
        for (const Rat& w : e.w)
            if (abs_rat(w) > bound) bound = abs_rat(w);
    return bound;
}

std::vector<std::string> MultiWeightedGraph::validate() const {
    std::vector<std::string> bad;
    for (int v = 0; v < vertex_count(); ++v)
        if (out_[v].empty())
            bad.push_back("dead end: vertex " + std::to_string(v) + " has out-degree 0");
    return bad;
}

void MultiWeightedGraph::require_valid() const {
    auto bad = validate();
    if (!bad.empty()) {
        std::string msg = "invalid graph:";
        for (const auto& b : bad) msg += " " + b + ";";
        throw std::invalid_argument(msg);
    }
}

std::vector<Rat> prefix_average(const MultiWeightedGraph& g, const PlayPrefix& prefix) {
    if (prefix.edges.empty()) throw std::invalid_argument("prefix_average: empty prefix");
    int at = prefix.start;
    std::vector<Rat> sum(g.dims(), Rat(0));
    for (int e : prefix.edges) {
        if (e < 0 || e >= g.edge_count()) throw std::invalid_argument("prefix_average: bad edge id");
        const Edge& ed = g.edge(e);
        if (ed.src != at) throw std::invalid_argument("prefix_average: edges are not contiguous");
        for (int d = 0; d < g.dims(); ++d) sum[d] += ed.w[d];
        at = ed.dst;
    }
    Rat len(static_cast<long>(prefix.edges.size()));
    for (Rat& s : sum) s /= len;
    return sum;
}

namespace {

// Iterative Tarjan; component ids are remapped afterwards so callers never
// see the traversal order.
std::vector<int> tarjan_components(const MultiWeightedGraph& g, int& count) {
    const int n = g.vertex_count();
    std::vector<int> index(n, -1), lowlink(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
    count = 0;

    struct Frame {
        int v;
        size_t edge_pos;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& outs = g.out_edges(f.v);
            if (f.edge_pos < outs.size()) {
                int u = g.edge(outs[f.edge_pos++]).dst;
                if (index[u] == -1) {
                    index[u] = lowlink[u] = next_index++;
                    stack.push_back(u);
                    on_stack[u] = true;
                    call.push_back({u, 0});
                } else if (on_stack[u]) {
                    lowlink[f.v] = std::min(lowlink[f.v], index[u]);
                }
            } else {
                if (lowlink[f.v] == index[f.v]) {
                    while (true) {
                        int u = stack.back();
                        stack.pop_back();
                        on_stack[u] = false;
                        comp[u] = count;
                        if (u == f.v) break;
                    }
                    ++count;
                }
                int finished = f.v;
                call.pop_back();
                if (!call.empty())
                    lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[finished]);
            }
        }
    }
    return comp;
}

}  // namespace

SccInfo scc_decompose(const MultiWeightedGraph& g) {
    int count = 0;
    std::vector<int> raw = tarjan_components(g, count);
    const int n = g.vertex_count();

    // Renumber components by their smallest vertex id.
    std::vector<int> min_vertex(count, n);
    for (int v = 0; v < n; ++v) min_vertex[raw[v]] = std::min(min_vertex[raw[v]], v);
    std::vector<int> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return min_vertex[a] < min_vertex[b]; });
    std::vector<int> remap(count);
    for (int i = 0; i < count; ++i) remap[order[i]] = i;

    SccInfo info;
    info.component_of.resize(n);
    info.components.assign(count, {});
    for (int v = 0; v < n; ++v) {
        int c = remap[raw[v]];
        info.component_of[v] = c;
        info.components[c].push_back(v);
    }

    info.transient.assign(count, true);
    for (const Edge& e : g.edges())
        if (info.component_of[e.src] == info.component_of[e.dst])
            info.transient[info.component_of[e.src]] = false;

    std::vector<bool> vr = reachable_set(g, g.initial_vertex());
    info.reachable.assign(count, false);
    for (int v = 0; v < n; ++v)
        if (vr[v]) info.reachable[info.component_of[v]] = true;
    return info;
}

std::vector<bool> reachable_set(const MultiWeightedGraph& g, int from) {
    std::vector<bool> seen(g.vertex_count(), false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int e : g.out_edges(v)) {
            int u = g.edge(e).dst;
            if (!seen[u]) {
                seen[u] = true;
                queue.push_back(u);
            }
        }
    }
    return seen;
}

std::vector<int> shortest_path(const MultiWeightedGraph& g, int from, int to) {
    if (from == to) return {};
    const int n = g.vertex_count();
    std::vector<int> via(n, -1);  // edge id used to first reach each vertex
    std::vector<bool> seen(n, false);
    std::deque<int> queue{from};
    seen[from] = true;
    while (!queue.empty() && !seen[to]) {
        int v = queue.front();
        queue.pop_front();
        // Deterministic tie-break: scan successors by ascending target id.
        std::vector<int> outs = g.out_edges(v);
        std::sort(outs.begin(), outs.end(),
                  [&](int a, int b) { return g.edge(a).dst < g.edge(b).dst; });
        for (int e : outs) {
            int u = g.edge(e).dst;
            if (!seen[u]) {
                seen[u] = true;
                via[u] = e;
                queue.push_back(u);
            }
        }
    }
    if (!seen[to]) throw std::invalid_argument("shortest_path: target unreachable");
    std::vector<int> path;
    for (int v = to; v != from; v = g.edge(via[v]).src) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
}

MeanPayoffGame::MeanPayoffGame(MultiWeightedGraph graph, MpgFlags flags)
    : graph_(std::move(graph)), flags_(flags) {
    if (graph_.dims() != 1) throw std::invalid_argument("mean-payoff game: dims must be 1");
    for (int v = 0; v < graph_.vertex_count(); ++v)
        if (graph_.owner(v) != 1 && graph_.owner(v) != 2)
            throw std::invalid_argument("mean-payoff game: owners must be 1 (max) or 2 (min)");
}

std::vector<std::string> MeanPayoffGame::validate() const {
    std::vector<std::string> bad = graph_.validate();
    const auto& g = graph_;

    if (flags_.bipartite || flags_.complete_bipartite) {
        for (const Edge& e : g.edges())
            if (g.owner(e.src) == g.owner(e.dst))
                bad.push_back("flag mismatch: bipartite, but edge " + std::to_string(e.src) + "->" +
                              std::to_string(e.dst) + " stays on one side");
    }
    if (flags_.complete_bipartite) {
        std::vector<int> side1, side2;
        for (int v = 0; v < g.vertex_count(); ++v)
            (g.owner(v) == 1 ? side1 : side2).push_back(v);
        std::vector<std::vector<bool>> has(g.vertex_count(),
                                           std::vector<bool>(g.vertex_count(), false));
        for (const Edge& e : g.edges()) has[e.src][e.dst] = true;
        for (int a : side1)
            for (int b : side2)
                if (!has[a][b] || !has[b][a])
                    bad.push_back("flag mismatch: complete_bipartite, missing edge between " +
                                  std::to_string(a) + " and " + std::to_string(b));
    }
    if (flags_.undirected) {
        for (const Edge& e : g.edges()) {
            bool matched = false;
            for (int back : g.out_edges(e.dst))
                if (g.edge(back).dst == e.src && g.edge(back).w[0] == e.w[0]) matched = true;
            if (!matched)
                bad.push_back("flag mismatch: undirected, edge " + std::to_string(e.src) + "->" +
                              std::to_string(e.dst) + " has no mirror of equal weight");
        }
    }
    if (flags_.normalized) {
        for (const Edge& e : g.edges()) {
            if (g.owner(e.src) == 1 && e.w[0] <= 0)
                bad.push_back("flag mismatch: normalized, maximizer edge " + std::to_string(e.src) +
                              "->" + std::to_string(e.dst) + " has weight <= 0");
            if (g.owner(e.src) == 2 && e.w[0] >= 0)
                bad.push_back("flag mismatch: normalized, minimizer edge " + std::to_string(e.src) +
                              "->" + std::to_string(e.dst) + " has weight >= 0");
        }
    }
    return bad;
}

void MeanPayoffGame::require_valid() const {
    auto bad = validate();
    if (!bad.empty()) {
        std::string msg = "invalid mean-payoff game:";
        for (const auto& b : bad) msg += " " + b + ";";
        throw std::invalid_argument(msg);
    }
}

}  // namespace mpg
